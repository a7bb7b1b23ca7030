#pragma once

#include "gwsym/covering.hpp"
#include "gwsym/graph.hpp"

#include <functional>
#include <vector>

namespace gwsym {

// Constraints for the backtracking isomorphism search between two twisted
// graphs.  Keys, when non-empty, must be preserved by the map; forced entries
// pin individual images.
struct IsoConstraints {
    std::vector<int> forced_vertex;     // g1 vertex -> g2 vertex or -1
    std::vector<int> forced_half_edge;  // g1 half-edge -> g2 half-edge or -1
    bool match_labels = false;          // tails must map to equal labels
    std::vector<int> vertex_key1, vertex_key2;
    std::vector<int> half_edge_key1, half_edge_key2;
};

using IsoCallback =
    std::function<void(const std::vector<int>& vmap, const std::vector<int>& hmap)>;

// Enumerates structure-preserving bijections g1 -> g2 (genus, mark, m, sigma,
// attachment, tail/germ status).  Returns the count; cb, if set, sees each.
long enumerate_graph_isos(const TwistedGraph& g1, const TwistedGraph& g2,
                          const IsoConstraints& cons, const IsoCallback& cb = nullptr);

inline bool isomorphic(const TwistedGraph& g1, const TwistedGraph& g2, bool match_labels) {
    IsoConstraints c;
    c.match_labels = match_labels;
    return enumerate_graph_isos(g1, g2, c) > 0;
}

// Which parts are fixed pointwise when counting automorphisms.
struct FixSpec {
    bool tails = false;            // all tails of every graph involved, pointwise
    bool target = false;           // coverings: the whole target graph, pointwise
    bool source_vertices = false;  // coverings: each source vertex as an element
};

long automorphism_count(const TwistedGraph& g, const FixSpec& spec = {});
long automorphism_count(const CoveringGraph& c, const FixSpec& spec = {});

// Isomorphisms of coverings: compatible pairs (target iso, source iso)
// commuting with the projections and preserving vertex degrees.
long enumerate_covering_isos(const CoveringGraph& c1, const CoveringGraph& c2,
                             bool match_labels,
                             const std::vector<int>& forced_target_vertex = {},
                             const std::vector<int>& forced_source_vertex = {});

inline bool isomorphic(const CoveringGraph& c1, const CoveringGraph& c2, bool match_labels) {
    return enumerate_covering_isos(c1, c2, match_labels) > 0;
}

}  // namespace gwsym
