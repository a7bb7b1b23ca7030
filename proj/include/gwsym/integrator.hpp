#pragma once

#include "gwsym/covering.hpp"
#include "gwsym/eta.hpp"
#include "gwsym/hurwitz.hpp"
#include "gwsym/query.hpp"
#include "gwsym/rational.hpp"
#include "gwsym/series.hpp"
#include "gwsym/strata.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gwsym {

// Genus 0 descendant integral: (n-3)!/prod k_i! in the top dimension, 0 off
// dimension.  n >= 3 required.
Rational genus0_integral(const std::vector<int>& exponents);

// Integral of prod psi_i^{k_i} over the moduli of one covering vertex
// (a single-target-vertex covering, germs as tails):
//   Aut(datum | target, source vertices) / prod m_i^{k_i+1}
//     * prod_{v'} chi(v') / d(v')!  * genus0_integral(k).
// chi(v') counts transitive tuples in S_{d(v')} with the classes cut out by
// the local degrees over each target slot.
Rational covering_vertex_integral(const CoveringGraph& datum, const std::vector<int>& exponents);

// chi values per source vertex of a covering, in source vertex order.
std::vector<Integer> vertex_chi_values(const CoveringGraph& datum);

// Integrates a polynomial in the target psi classes of one term over the
// stratum moduli; edge classes must already be expanded into germ classes by
// the series construction (see bracket).  Returns z-monomial -> value.
std::map<std::vector<uint8_t>, Rational> stratum_integral(const ContractionTerm& term,
                                                          const PsiSeries& integrand);

// The frame and the standard integrand exp(sum w_t psi_t) prod_e
// (1 - exp(w_e psi_e))/psi_e for a term; psi_e = psi_{h1} + psi_{h2}.
SeriesFrame term_frame(const ContractionTerm& term, const BracketQuery& query);
PsiSeries term_integrand(const ContractionTerm& term, const SeriesFrame* frame);

struct TermAudit {
    std::string key;
    long aut_count = 1;
    Rational norm_value;
    Rational weight;        // 1 / (n_eta * norm)
    std::vector<Integer> chi;  // per source vertex of rho
    Rational contribution;  // prod k_i! * weight * [z^k] integral
};

struct BracketResult {
    Rational value;
    Rational eta_deg;
    std::vector<TermAudit> terms;
};

struct BracketOptions {
    std::optional<EtaChoice> choice;
    bool prune_zero_weight = true;
    int edge_cap_bonus = 0;
    int threads = 1;
};

// <tau_{k_1}...tau_{k_n}>_g.  Genus 0 delegates to the closed form; g >= 1
// uses the covering expansion.  Errors: dimension mismatch, n = 0 with g >= 1.
BracketResult bracket_full(const BracketQuery& query, const BracketOptions& opt = {});
Rational bracket(const BracketQuery& query, const BracketOptions& opt = {});

}  // namespace gwsym
