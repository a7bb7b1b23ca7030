#include "gwsym/integrator.hpp"

#include "gwsym/iso.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <numeric>
#include <stdexcept>

namespace gwsym {

Rational genus0_integral(const std::vector<int>& exponents) {
    int n = static_cast<int>(exponents.size());
    if (n < 3) throw std::invalid_argument("genus0_integral: needs at least 3 points");
    int total = 0;
    for (int k : exponents) {
        if (k < 0) throw std::invalid_argument("genus0_integral: negative exponent");
        total += k;
    }
    if (total != n - 3) return 0;
    Rational r(factorial(n - 3));
    for (int k : exponents) r /= Rational(factorial(k));
    return r;
}

std::vector<Integer> vertex_chi_values(const CoveringGraph& datum) {
    std::vector<Integer> out;
    for (int sv = 0; sv < static_cast<int>(datum.source.vertices.size()); ++sv) {
        TupleSpec spec;
        spec.degree = datum.vertex_degree[sv];
        for (int th : datum.target.half_edges_of(datum.vertex_map[sv])) {
            std::vector<int> degs;
            for (int h : datum.source.half_edges_of(sv))
                if (datum.half_edge_map[h] == th) degs.push_back(datum.local_degree(h));
            spec.classes.push_back(sorted_partition(degs));
        }
        out.push_back(tuple_count_transitive(spec));
    }
    return out;
}

Rational covering_vertex_integral(const CoveringGraph& datum, const std::vector<int>& exponents) {
    if (datum.target.vertices.size() != 1)
        throw std::invalid_argument("covering_vertex_integral: datum must have one target vertex");
    int n_v = static_cast<int>(datum.target.half_edges.size());
    if (n_v < 3) throw std::invalid_argument("covering_vertex_integral: unstable target vertex");
    if (static_cast<int>(exponents.size()) != n_v)
        throw std::invalid_argument("covering_vertex_integral: exponent count mismatch");

    Rational g0 = genus0_integral(exponents);
    if (g0 == 0) return 0;

    Rational value(automorphism_count(datum, FixSpec{.target = true, .source_vertices = true}));
    for (int i = 0; i < n_v; ++i)
        value /= pow_rational(Rational(datum.target.half_edges[i].mult), exponents[i] + 1);
    for (int sv = 0; sv < static_cast<int>(datum.source.vertices.size()); ++sv)
        value /= Rational(factorial(datum.vertex_degree[sv]));
    for (const Integer& chi : vertex_chi_values(datum)) {
        if (chi == 0) return 0;
        value *= Rational(chi);
    }
    return value * g0;
}

namespace {

// Per-term evaluation state: local data per target vertex and a cache of
// per-vertex integrals keyed by the exponent pattern.
struct TermEvaluator {
    const ContractionTerm& term;
    std::vector<LocalDatum> locals;
    std::vector<std::vector<int>> slots_of_vertex;  // target vertex -> its half-edge ids
    std::vector<std::map<std::vector<int>, Rational>> cache;

    explicit TermEvaluator(const ContractionTerm& t) : term(t) {
        int nv = static_cast<int>(t.rho.target.vertices.size());
        for (int v = 0; v < nv; ++v) {
            locals.push_back(local_datum(t.rho, v));
            slots_of_vertex.push_back(t.rho.target.half_edges_of(v));
        }
        cache.resize(nv);
    }

    Rational vertex_factor(int v, const std::vector<int>& exps) {
        auto it = cache[v].find(exps);
        if (it != cache[v].end()) return it->second;
        Rational r = covering_vertex_integral(locals[v].datum, exps);
        cache[v].emplace(exps, r);
        return r;
    }

    // Integrate one psi monomial (exponents indexed by target half-edge).
    Rational integrate_monomial(const std::vector<uint8_t>& psi_exps) {
        Rational prod = 1;
        for (int v = 0; v < static_cast<int>(locals.size()); ++v) {
            std::vector<int> exps(slots_of_vertex[v].size());
            for (size_t i = 0; i < slots_of_vertex[v].size(); ++i) {
                int he = slots_of_vertex[v][i];
                exps[locals[v].slot_of_target_he[he]] = psi_exps[he];
            }
            prod *= vertex_factor(v, exps);
            if (prod == 0) return 0;
        }
        return prod;
    }
};

}  // namespace

SeriesFrame term_frame(const ContractionTerm& term, const BracketQuery& query) {
    SeriesFrame f;
    for (int k : query.exponents) f.z_cap.push_back(k);
    f.z_total_cap = query.total_degree();
    int nh = static_cast<int>(term.rho.target.half_edges.size());
    f.psi_vertex.resize(nh);
    for (int h = 0; h < nh; ++h) f.psi_vertex[h] = term.rho.target.half_edges[h].vertex;
    for (int v = 0; v < static_cast<int>(term.rho.target.vertices.size()); ++v)
        f.vertex_dim.push_back(
            static_cast<int>(term.rho.target.half_edges_of(v).size()) - 3);
    return f;
}

PsiSeries term_integrand(const ContractionTerm& term, const SeriesFrame* frame) {
    PsiSeries s = PsiSeries::one(frame);
    for (int th : term.rho.target.tails()) {
        const WeightForm& w = term.tail_weights[th];
        if (w.zero()) continue;
        s *= PsiSeries::exp_tail_factor(frame, w, th);
    }
    auto tes = term.rho.target.edges();
    for (int ei = 0; ei < static_cast<int>(tes.size()); ++ei)
        s *= PsiSeries::edge_factor(frame, term.edge_weights[ei], tes[ei].first,
                                    tes[ei].second);
    return s;
}

std::map<std::vector<uint8_t>, Rational> stratum_integral(const ContractionTerm& term,
                                                          const PsiSeries& integrand) {
    TermEvaluator eval(term);
    int nz = integrand.frame().n_z();
    int npsi = integrand.frame().n_psi();
    std::map<std::vector<uint8_t>, Rational> out;
    std::vector<uint8_t> psi(npsi), zpart(nz);
    for (const auto& [mono, c] : integrand.terms()) {
        for (int i = 0; i < npsi; ++i) psi[i] = mono[nz + i];
        Rational v = eval.integrate_monomial(psi);
        if (v == 0) continue;
        for (int i = 0; i < nz; ++i) zpart[i] = mono[i];
        auto [it, fresh] = out.emplace(zpart, c * v);
        if (!fresh) it->second += c * v;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

namespace {

TermAudit evaluate_term(const ContractionTerm& term, const BracketQuery& query,
                        const Rational& eta_deg) {
    SeriesFrame frame = term_frame(term, query);
    PsiSeries integrand = term_integrand(term, &frame);
    auto zmap = stratum_integral(term, integrand);

    std::vector<uint8_t> want;
    for (int k : query.exponents) want.push_back(static_cast<uint8_t>(k));
    Rational coeff = 0;
    if (auto it = zmap.find(want); it != zmap.end()) coeff = it->second;

    TermAudit audit;
    audit.key = term.key;
    audit.aut_count = term.aut_count;
    audit.norm_value = term.norm_value;
    audit.weight = Rational(1) / (eta_deg * term.norm_value);
    audit.chi = vertex_chi_values(term.rho);
    Rational kfact = 1;
    for (int k : query.exponents) kfact *= Rational(factorial(k));
    audit.contribution = kfact * audit.weight * coeff;
    return audit;
}

}  // namespace

BracketResult bracket_full(const BracketQuery& query, const BracketOptions& opt) {
    BracketResult result;
    if (!query.dimension_valid())
        throw std::invalid_argument("bracket: dimension mismatch (sum k_i must be 3g-3+n)");
    if (query.genus == 0) {
        result.value = genus0_integral(query.exponents);
        result.eta_deg = 1;
        return result;
    }
    if (query.points() == 0)
        throw std::invalid_argument("bracket: genus >= 1 needs at least one marked point");

    EtaLabel eta = build_eta(query.genus, query.points(), opt.choice);
    result.eta_deg = eta_degree(eta);

    StrataOptions sopt;
    sopt.prune_zero_weight = opt.prune_zero_weight;
    sopt.edge_cap_bonus = opt.edge_cap_bonus;
    auto terms = contributing_terms(eta, query, sopt);

    result.terms.resize(terms.size());
    int threads = std::max(1, opt.threads);
    if (threads == 1 || terms.size() < 2) {
        for (size_t i = 0; i < terms.size(); ++i)
            result.terms[i] = evaluate_term(terms[i], query, result.eta_deg);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<size_t> next{0};
        for (int t = 0; t < threads; ++t)
            futs.push_back(std::async(std::launch::async, [&] {
                for (size_t i = next.fetch_add(1); i < terms.size(); i = next.fetch_add(1))
                    result.terms[i] = evaluate_term(terms[i], query, result.eta_deg);
            }));
        for (auto& f : futs) f.get();
    }

    result.value = 0;
    for (const auto& t : result.terms) result.value += t.contribution;
    return result;
}

Rational bracket(const BracketQuery& query, const BracketOptions& opt) {
    return bracket_full(query, opt).value;
}

}  // namespace gwsym
