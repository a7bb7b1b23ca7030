#pragma once

#include "gwsym/contraction.hpp"
#include "gwsym/covering.hpp"
#include "gwsym/eta.hpp"
#include "gwsym/query.hpp"
#include "gwsym/rational.hpp"
#include "gwsym/series.hpp"

#include <set>
#include <string>
#include <vector>

namespace gwsym {

// One summand of the bracket expansion: a covering rho with the (unique)
// contraction onto eta, its automorphism count over eta, the norm, and the
// tail/edge weight linear forms.
struct ContractionTerm {
    CoveringGraph rho;
    long aut_count = 1;                     // Aut(rho -> eta | eta), all tails pinned
    Rational norm_value = 1;                // aut / prod m(e)^2 over contracted edges
    std::vector<WeightForm> tail_weights;   // indexed by target half-edge (zero on germs)
    std::vector<WeightForm> edge_weights;   // indexed by target edge id
    std::string key;                        // canonical form of rho
};

// S(e', t, ForgetSet): 1 iff, after contracting every source edge except e',
// the vertex carrying t has genus 0 and mark 0 and keeps at most two special
// points (t, the germ of e', nothing else) once the forgotten tails are
// removed.
int s_indicator(const CoveringGraph& rho, int source_edge_id, int retained_he,
                const std::set<int>& retained_all);

WeightForm tail_weight(const CoveringGraph& rho, int target_tail_he,
                       const std::vector<int>& mark_of_source_he, int n_points);
WeightForm edge_weight(const CoveringGraph& rho, int target_edge_id,
                       const std::vector<int>& mark_of_source_he, int n_points);

// mark_of_source_he helper: for each source half-edge of rho, the 1-based mark
// it retains, or 0.  Matches rho's tails against eta's retained labels.
std::vector<int> retained_marks(const CoveringGraph& rho, const EtaLabel& eta);

struct StrataOptions {
    bool prune_zero_weight = true;
    int edge_cap_bonus = 0;  // widens the #E(t(rho)) <= sum k_i cap (testing hook)
};

// Isomorphism classes of contractions rho -> eta that can carry a nonzero
// term for the query: stable genus 0 target trees on the tails of t(eta),
// valid covering data of total degree g+1 over every target vertex, source
// connected of genus g, and (unless disabled) no zero-weight target edge.
// Sorted by canonical key.
std::vector<ContractionTerm> contributing_terms(const EtaLabel& eta, const BracketQuery& query,
                                                const StrataOptions& opt = {});

}  // namespace gwsym
