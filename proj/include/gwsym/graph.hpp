#pragma once

#include "gwsym/semigroup.hpp"

#include <string>
#include <vector>

namespace gwsym {

// Half-edge of a twisted graph.  A tail is a sigma-fixed half-edge and
// carries a stable name (its external identity); edge germs have mate != self
// and an empty label.
struct HalfEdge {
    int vertex = -1;       // attachment
    int mate = -1;         // sigma; == own index for tails
    int mult = 1;          // m(h) >= 1
    std::string label;     // tail name, empty for germs
};

struct VertexData {
    int genus = 0;
    int mark = 0;  // element of the marking semigroup
};

// Labelled graph with an order-two involution on half-edges (the twisted
// category; the untwisted view is m == 1 everywhere).  Edges are the free
// sigma-orbits, tails the fixed points.
struct TwistedGraph {
    std::vector<VertexData> vertices;
    std::vector<HalfEdge> half_edges;

    bool is_tail(int h) const { return half_edges[h].mate == h; }

    int add_vertex(int genus, int mark = 0) {
        vertices.push_back({genus, mark});
        return static_cast<int>(vertices.size()) - 1;
    }
    int add_tail(int v, int mult, std::string label) {
        half_edges.push_back({v, static_cast<int>(half_edges.size()), mult, std::move(label)});
        return static_cast<int>(half_edges.size()) - 1;
    }
    // Returns the pair of germ indices (h1 at va, h2 at vb).
    std::pair<int, int> add_edge(int va, int vb, int mult) {
        int h1 = static_cast<int>(half_edges.size());
        half_edges.push_back({va, h1 + 1, mult, ""});
        half_edges.push_back({vb, h1, mult, ""});
        return {h1, h1 + 1};
    }

    std::vector<int> tails() const;
    // Edges as pairs (h1, h2) with h1 < h2.
    std::vector<std::pair<int, int>> edges() const;
    std::vector<int> half_edges_of(int v) const;
    int tail_by_label(const std::string& label) const;  // -1 if absent

    bool connected() const;
    // Arithmetic genus sum(g_v) + #E - #V + #components.
    int graph_genus() const;
};

// validate() returns the list of violated axioms; empty means ok.
// Checked: involution well-formed, m constant on sigma-orbits, attachment in
// range, vertex stability (mark 0 forces 2g - 2 + #T > 0), tail labels unique.
std::vector<std::string> validate(const TwistedGraph& g,
                                  const Semigroup& a = trivial_semigroup());

}  // namespace gwsym
