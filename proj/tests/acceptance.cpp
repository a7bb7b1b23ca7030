// Acceptance suite: runs every acceptance criterion at its stated tolerance
// (all values exact) and prints one pass/fail line per criterion.
#include "gwsym/canonical.hpp"
#include "gwsym/contraction.hpp"
#include "gwsym/hurwitz.hpp"
#include "gwsym/integrator.hpp"
#include "gwsym/iso.hpp"
#include "gwsym/json_io.hpp"
#include "gwsym/oracle.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>

#include "helpers.hpp"

using namespace gwsym;
using namespace gwsym::testing;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int num, const std::string& what, bool ok, double seconds, double limit = 0) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << num << ": " << what << " ("
              << seconds << "s";
    if (limit > 0) std::cout << ", limit " << limit << "s";
    std::cout << ")\n";
    if (!ok) ++failures;
}

double secs(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void for_each_query(int g, int n, const std::function<void(const std::vector<int>&)>& cb) {
    int total = 3 * g - 3 + n;
    if (total < 0) return;
    std::vector<int> ks(n, 0);
    std::function<void(int, int)> rec = [&](int i, int rest) {
        if (i == n - 1) {
            ks[i] = rest;
            cb(ks);
            return;
        }
        for (int k = 0; k <= rest; ++k) {
            ks[i] = k;
            rec(i + 1, rest - k);
        }
    };
    rec(0, total);
}

void criterion1() {
    auto t0 = Clock::now();
    bool ok = bracket(BracketQuery{1, {1}}, {}) == Rational(1, 24);
    double dt = secs(t0);
    report(1, "bracket(g=1,(1)) = 1/24", ok && dt < 1.0, dt, 1.0);
}

void criterion2() {
    auto t0 = Clock::now();
    auto r = bracket_full(BracketQuery{2, {4}}, {});
    double dt = secs(t0);
    bool ok = r.value == Rational(1, 1152) && r.terms.size() == 7;
    int mains = 0;
    Rational boundary_sum = 0;
    for (const auto& t : r.terms) {
        if (t.contribution == Rational(1, 720))
            ++mains;
        else
            boundary_sum += t.contribution;
    }
    ok = ok && mains == 1 && boundary_sum == Rational(-1, 1920);
    report(2, "bracket(g=2,(4)) = 1/1152 with audit 1/720 - 1/1920", ok && dt < 60.0, dt,
           60.0);
}

void criterion3() {
    auto t0 = Clock::now();
    bool ok = true;

    EtaLabel eta1 = build_eta(1, 1);
    BracketQuery q1{1, {1}};
    auto terms1 = contributing_terms(eta1, q1, {});
    ok = ok && terms1.size() == 1;
    if (ok) {
        SeriesFrame f = term_frame(terms1[0], q1);
        std::vector<uint8_t> mono(f.n_z() + f.n_psi(), 0);
        mono[f.n_z() + terms1[0].rho.target.tail_by_label("inf")] = 1;
        auto z = stratum_integral(terms1[0], PsiSeries::monomial(&f, mono, 1));
        ok = z.size() == 1 && z.begin()->second == Rational(1, 64);
    }

    EtaLabel eta2 = build_eta(2, 1);
    BracketQuery q2{2, {4}};
    auto terms2 = contributing_terms(eta2, q2, {});
    const ContractionTerm* main2 = nullptr;
    for (const auto& t : terms2)
        if (t.key == canonical_form(eta2.covering)) main2 = &t;
    ok = ok && main2;
    if (main2) {
        SeriesFrame f = term_frame(*main2, q2);
        std::vector<uint8_t> mono(f.n_z() + f.n_psi(), 0);
        mono[f.n_z() + main2->rho.target.tail_by_label("inf")] = 4;
        auto z = stratum_integral(*main2, PsiSeries::monomial(&f, mono, 1));
        ok = ok && z.size() == 1 && z.begin()->second == Rational(1, 192);
    }

    CoveringGraph rho = build_boundary_covering(eta2, 1);
    int v_pole = rho.target.half_edges[rho.target.tail_by_label("inf")].vertex;
    LocalDatum pole_side = local_datum(rho, v_pole);
    ok = ok && covering_vertex_integral(pole_side.datum, {0, 0, 0}) == Rational(1, 12);

    LocalDatum main_side = local_datum(rho, 1 - v_pole);
    auto tes = rho.target.edges();
    int germ = rho.target.half_edges[tes[0].first].vertex == v_pole ? tes[0].second
                                                                    : tes[0].first;
    std::vector<int> exps(main_side.datum.target.half_edges.size(), 0);
    exps[main_side.slot_of_target_he[germ]] = 3;
    ok = ok && covering_vertex_integral(main_side.datum, exps) == Rational(1, 1024);

    auto fc = induced_covering_contraction(rho, {0});
    ok = ok && Rational(1) / norm(fc) == 4;

    ok = ok && tuple_count_transitive(
                   {3, {{3}, {2, 1}, {2, 1}, {2, 1}, {2, 1}, {2, 1}, {2, 1}}}) == 486;

    ok = ok && Rational(1) / eta_degree(eta1) == Rational(8, 3);
    ok = ok && Rational(1) / eta_degree(eta2) == Rational(4, 15);

    report(3, "intermediate values: 2^-6, 2^-6 3^-1, 1/12, 2^-10, 1/||f||=4, 486, 8/3, 4/15",
           ok, secs(t0));
}

void criterion4() {
    auto t0 = Clock::now();
    bool ok = true;
    int checked = 0;
    auto compare = [&](int g, const std::vector<int>& ks) {
        BracketQuery q{g, ks};
        Rational lhs = bracket(q, {});
        Rational rhs = dvv_bracket(q);
        if (lhs != rhs) {
            ok = false;
            std::cout << "  mismatch at g=" << g << " n=" << ks.size() << "\n";
        }
        ++checked;
    };
    for (int n = 1; n <= 3; ++n)
        for_each_query(1, n, [&](const std::vector<int>& ks) { compare(1, ks); });
    for (int n = 1; n <= 2; ++n)
        for_each_query(2, n, [&](const std::vector<int>& ks) { compare(2, ks); });
    double dt = secs(t0);
    report(4,
           "oracle sweep (g=1, n<=3) and (g=2, n<=2), " + std::to_string(checked) +
               " queries",
           ok && dt < 900.0, dt, 900.0);
}

void criterion5() {
    auto t0 = Clock::now();
    bool ok = true;
    for_each_query(1, 2, [&](const std::vector<int>& ks) {
        Rational reference = bracket(BracketQuery{1, ks}, {});
        for (const auto& choice : all_eta_choices(1, 2)) {
            BracketOptions opt;
            opt.choice = choice;
            if (bracket(BracketQuery{1, ks}, opt) != reference) ok = false;
        }
    });
    report(5, "bracket is independent of the covering choice at (g,n)=(1,2)", ok, secs(t0));
}

void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;

    // exhaustive d <= 3, up to 7 classes
    for (int d = 1; d <= 3; ++d) {
        auto parts = partitions_of(d);
        std::function<void(std::vector<Partition>&)> rec =
            [&](std::vector<Partition>& cur) {
                TupleSpec spec{d, cur};
                auto brute = tuple_count_all_brute(spec);
                auto bt = tuple_count_transitive_brute(spec);
                if (!brute || *brute != tuple_count_all(spec)) ok = false;
                if (!bt || *bt != tuple_count_transitive(spec)) ok = false;
                if (cur.size() >= 7) return;
                for (const auto& p : parts) {
                    cur.push_back(p);
                    rec(cur);
                    cur.pop_back();
                }
            };
        std::vector<Partition> cur;
        rec(cur);
    }

    // randomized sample of at least 500 specs with d <= 5, n <= 7, bounded
    // enumeration work
    std::mt19937 rng(2026);
    int sampled = 0;
    while (sampled < 500) {
        int d = 2 + static_cast<int>(rng() % 4);
        auto parts = partitions_of(d);
        int n = 1 + static_cast<int>(rng() % 7);
        TupleSpec spec{d, {}};
        for (int i = 0; i < n; ++i) spec.classes.push_back(parts[rng() % parts.size()]);
        double work = 1;
        for (int i = 1; i + 1 < n; ++i)
            work *= static_cast<double>(class_size(spec.classes[i]).convert_to<long>());
        if (work > 3e6) continue;
        auto brute = tuple_count_all_brute(spec);
        auto bt = tuple_count_transitive_brute(spec);
        if (!brute || *brute != tuple_count_all(spec)) ok = false;
        if (!bt || *bt != tuple_count_transitive(spec)) ok = false;
        ++sampled;
    }

    // column orthogonality for d <= 8
    for (int d = 1; d <= 8; ++d) {
        const auto& t = character_table(d);
        int n = static_cast<int>(t.labels.size());
        for (int c1 = 0; c1 < n; ++c1)
            for (int c2 = c1; c2 < n; ++c2) {
                Integer sum = 0;
                for (int r = 0; r < n; ++r) sum += t.chi[r][c1] * t.chi[r][c2];
                Integer expect =
                    c1 == c2 ? factorial(d) / class_size(t.labels[c1]) : Integer(0);
                if (sum != expect) ok = false;
            }
    }
    report(6, "counting kernel: enumeration = character formula, orthogonality d<=8", ok,
           secs(t0));
}

void criterion7() {
    auto t0 = Clock::now();
    bool ok = true;
    auto check = [&](int g, const std::vector<int>& ks) {
        BracketQuery q{g, ks};
        BracketOptions keep;
        keep.prune_zero_weight = false;
        if (bracket(q, {}) != bracket(q, keep)) ok = false;
    };
    for_each_query(1, 1, [&](const std::vector<int>& ks) { check(1, ks); });
    for_each_query(1, 2, [&](const std::vector<int>& ks) { check(1, ks); });
    for_each_query(2, 1, [&](const std::vector<int>& ks) { check(2, ks); });
    report(7, "disabling the zero-weight prune changes no bracket", ok, secs(t0));
}

void criterion8() {
    auto t0 = Clock::now();
    bool ok = true;

    // every enumerated covering passes the axioms, pruned or not
    for (auto [g, ks] : std::vector<std::pair<int, std::vector<int>>>{
             {1, {1}}, {1, {1, 1}}, {2, {4}}}) {
        EtaLabel eta = build_eta(g, static_cast<int>(ks.size()));
        for (bool prune : {true, false}) {
            StrataOptions opt;
            opt.prune_zero_weight = prune;
            for (const auto& t : contributing_terms(eta, BracketQuery{g, ks}, opt))
                if (!validate(t.rho).empty()) ok = false;
        }
    }

    // contraction composition law, exhaustively on graphs with <= 3 edges
    for (const TwistedGraph& g : small_graph_family()) {
        if (!validate(g).empty()) continue;
        auto edges = g.edges();
        int ne = static_cast<int>(edges.size());
        for (int imask = 0; imask < (1 << ne) && ok; ++imask) {
            std::vector<int> I;
            for (int e = 0; e < ne; ++e)
                if (imask & (1 << e)) I.push_back(e);
            Contraction c1 = contract(g, I);
            if (!validate(c1).empty()) ok = false;
            int jfull = ((1 << ne) - 1) & ~imask;
            for (int jmask = jfull;; jmask = (jmask - 1) & jfull) {
                std::vector<int> J, UnionIJ = I;
                for (int e = 0; e < ne; ++e)
                    if (jmask & (1 << e)) {
                        J.push_back(e);
                        UnionIJ.push_back(e);
                    }
                auto t_edges = c1.target.edges();
                std::map<int, int> germ_to_edge;
                for (int i = 0; i < static_cast<int>(t_edges.size()); ++i) {
                    germ_to_edge[t_edges[i].first] = i;
                    germ_to_edge[t_edges[i].second] = i;
                }
                std::vector<int> Jprime;
                for (int e : J)
                    Jprime.push_back(germ_to_edge.at(c1.half_edge_image[edges[e].first]));
                if (canonical_form(contract(c1.target, Jprime).target) !=
                    canonical_form(contract(g, UnionIJ).target))
                    ok = false;
                if (jmask == 0) break;
            }
        }
    }

    // canonical form against brute-force isomorphism on <= 6 half-edges
    std::mt19937 rng(41);
    std::vector<TwistedGraph> pool;
    for (int i = 0; i < 20; ++i) pool.push_back(random_graph(rng, 6));
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = i + 1; j < pool.size(); ++j) {
            bool same_key = canonical_form(pool[i]) == canonical_form(pool[j]);
            if (same_key != isomorphic(pool[i], pool[j], true)) ok = false;
        }

    report(8, "structural suite: covering axioms, composition law, canonical forms", ok,
           secs(t0));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::cout << (failures ? "ACCEPTANCE FAILED\n" : "ACCEPTANCE PASSED\n");
    return failures ? 1 : 0;
}
