#pragma once

#include "gwsym/graph.hpp"

#include <vector>

namespace gwsym {

// Covering of twisted graphs s(rho) ->> t(rho): a vertex map and a half-edge
// map commuting with attachment and the involutions, together with per-source-
// vertex degrees.  Local degrees on source half-edges are derived:
//   d(h') = m(image of h') / m(h').
struct CoveringGraph {
    TwistedGraph target;
    TwistedGraph source;
    std::vector<int> vertex_map;     // source vertex -> target vertex
    std::vector<int> half_edge_map;  // source half-edge -> target half-edge
    std::vector<int> vertex_degree;  // d(v') per source vertex

    int local_degree(int source_he) const {
        return target.half_edges[half_edge_map[source_he]].mult /
               source.half_edges[source_he].mult;
    }
    // Source half-edges lying over a target half-edge.
    std::vector<int> fiber_of_half_edge(int target_he) const;
    std::vector<int> fiber_of_vertex(int target_v) const;
    int covering_degree() const;  // common total degree over any target vertex
};

// Checks the covering axioms: equivariance (tails to tails, edges to edges,
// sigma and attachment commute), divisibility m(h') | m(p(h')), the lcm rule
// m(h) = lcm{d(h')}, the per-(target half-edge, source vertex) degree sums,
// per-vertex Riemann-Hurwitz, local mark sums, and validity of both graphs.
std::vector<std::string> validate(const CoveringGraph& c,
                                  const Semigroup& a = trivial_semigroup());

// The covering restricted to one target vertex, with edge germs of both
// graphs turned into tails of the local picture.  This is the shape the
// per-vertex integrals consume.
//
// target_slot_of maps: original target half-edge id -> slot index in the
// local target vertex (only half-edges of target_v appear).
struct LocalDatum {
    CoveringGraph datum;               // single-target-vertex covering, tails only
    std::vector<int> slot_of_target_he;  // indexed by original target half-edge; -1 elsewhere
};
LocalDatum local_datum(const CoveringGraph& c, int target_v);

}  // namespace gwsym
