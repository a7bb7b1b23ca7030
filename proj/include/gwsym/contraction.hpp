#pragma once

#include "gwsym/covering.hpp"
#include "gwsym/graph.hpp"
#include "gwsym/rational.hpp"

#include <vector>

namespace gwsym {

// Edge contraction morphism f: source -> target.  Contracted edge germs map
// to vertices; everything else maps bijectively.
struct Contraction {
    TwistedGraph source;
    TwistedGraph target;
    std::vector<int> vertex_image;     // source vertex -> target vertex
    std::vector<int> half_edge_image;  // source half-edge -> target half-edge, -1 if contracted

    std::vector<int> contracted_edge_ids() const;  // indices into source.edges()
};

// Unique contraction with E(f) = the given subset of source edges.
// edge_ids index into g.edges().
Contraction contract(const TwistedGraph& g, const std::vector<int>& edge_ids,
                     const Semigroup& a = trivial_semigroup());

// The contraction axioms: surjectivity, sigma/attachment commutation,
// bijectivity over surviving half-edges, no contracted tails, per-target-vertex
// connectivity and genus match.
std::vector<std::string> validate(const Contraction& f,
                                  const Semigroup& a = trivial_semigroup());

// A morphism in the covering category: a covering contracted onto another,
// with the commuting square of contractions.
struct CoveringContraction {
    CoveringGraph from;       // rho
    CoveringGraph to;         // eta'
    Contraction on_source;    // s(rho) -> s(eta')
    Contraction on_target;    // t(rho) -> t(eta')
};

// Contracts the given target edges and the source edges lying over them;
// returns the unique induced morphism.
CoveringContraction induced_covering_contraction(const CoveringGraph& rho,
                                                 const std::vector<int>& target_edge_ids,
                                                 const Semigroup& a = trivial_semigroup());

enum class GraphCategory { Untwisted, Twisted };

// ||f|| for contraction morphisms: #Aut(f | target) in the untwisted
// category, divided by prod m(e) over contracted edges in the twisted one.
Rational norm(const Contraction& f, GraphCategory cat);

// ||f|| = #Aut(f | target) / prod m(e)^2 over contracted target edges.
Rational norm(const CoveringContraction& f);

// Automorphisms of the morphism: maps of the source object commuting with f.
long automorphism_count(const Contraction& f);
long automorphism_count(const CoveringContraction& f);

}  // namespace gwsym
