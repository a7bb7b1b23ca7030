#include "gwsym/canonical.hpp"
#include "gwsym/integrator.hpp"

#include <doctest.h>

#include <functional>
#include <random>

#include "helpers.hpp"

using namespace gwsym;
using namespace gwsym::testing;

namespace {

// independent string-equation recursion for the genus 0 integrals
Rational g0_string_oracle(std::vector<int> ks) {
    int n = static_cast<int>(ks.size());
    if (n == 3) {
        for (int k : ks)
            if (k != 0) return 0;
        return 1;
    }
    auto zero = std::find(ks.begin(), ks.end(), 0);
    if (zero == ks.end()) return 0;  // off dimension once n > sum + 3
    ks.erase(zero);
    Rational sum = 0;
    for (size_t j = 0; j < ks.size(); ++j) {
        if (ks[j] == 0) continue;
        ks[j] -= 1;
        sum += g0_string_oracle(ks);
        ks[j] += 1;
    }
    return sum;
}

const ContractionTerm& term_with_key(const std::vector<ContractionTerm>& terms,
                                     const std::string& key) {
    for (const auto& t : terms)
        if (t.key == key) return t;
    REQUIRE(false);
    return terms.front();
}

}  // namespace

TEST_CASE("genus 0 integrals: closed form, examples and string oracle") {
    CHECK(genus0_integral({0, 0, 0}) == 1);
    CHECK(genus0_integral({1, 0, 0, 0}) == 1);
    CHECK(genus0_integral({1, 1, 0, 0, 0}) == 2);
    CHECK(genus0_integral({1, 0, 0}) == 0);  // off dimension
    CHECK_THROWS(genus0_integral({0, 0}));

    // exhaustive dimension-valid exponents for n <= 7
    for (int n = 3; n <= 7; ++n) {
        std::vector<int> ks(n, 0);
        std::function<void(int, int)> rec = [&](int i, int rest) {
            if (i == n - 1) {
                ks[i] = rest;
                CHECK(genus0_integral(ks) == g0_string_oracle(ks));
                return;
            }
            for (int k = 0; k <= rest; ++k) {
                ks[i] = k;
                rec(i + 1, rest - k);
            }
        };
        rec(0, n - 3);
    }

    // symmetry and the string relation on the closed form
    std::mt19937 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 4 + static_cast<int>(rng() % 4);
        std::vector<int> ks(n, 0);
        for (int rest = n - 3, i = 0; i < n - 1; ++i) {
            int k = static_cast<int>(rng() % (rest + 1));
            ks[i] = k;
            rest -= k;
            if (i == n - 2) ks[n - 1] = rest;
        }
        auto shuffled = ks;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(genus0_integral(ks) == genus0_integral(shuffled));
        std::vector<int> with_zero = ks;
        with_zero.push_back(0);
        Rational sum = 0;
        for (size_t j = 0; j < ks.size(); ++j) {
            if (ks[j] == 0) continue;
            auto lower = ks;
            lower[j] -= 1;
            sum += genus0_integral(lower);
        }
        CHECK(genus0_integral(with_zero) == sum);
    }
}

TEST_CASE("per-vertex covering integrals of the boundary covering") {
    EtaLabel eta2 = build_eta(2, 1);
    CoveringGraph rho = build_boundary_covering(eta2, 1);
    int v_pole = rho.target.half_edges[rho.target.tail_by_label("inf")].vertex;
    int v_main = 1 - v_pole;

    LocalDatum pole_side = local_datum(rho, v_pole);
    CHECK(covering_vertex_integral(pole_side.datum, {0, 0, 0}) == Rational(1, 12));

    LocalDatum main_side = local_datum(rho, v_main);
    int n_slots = static_cast<int>(main_side.datum.target.half_edges.size());
    REQUIRE(n_slots == 6);
    auto tes = rho.target.edges();
    int germ_at_main = rho.target.half_edges[tes[0].first].vertex == v_main
                           ? tes[0].first
                           : tes[0].second;
    std::vector<int> exps(n_slots, 0);
    exps[main_side.slot_of_target_he[germ_at_main]] = 3;
    CHECK(covering_vertex_integral(main_side.datum, exps) == Rational(1, 1024));

    // positive exponent on a three-point vertex vanishes
    EtaLabel eta1 = build_eta(1, 1);
    CoveringGraph small;
    int tv = small.target.add_vertex(0, 0);
    small.target.add_tail(tv, 1, "a");
    small.target.add_tail(tv, 1, "b");
    small.target.add_tail(tv, 1, "c");
    int sv = small.source.add_vertex(0, 0);
    small.vertex_map = {tv};
    small.vertex_degree = {1};
    for (int h : small.target.tails()) {
        small.source.add_tail(sv, 1, "s" + std::to_string(h));
        small.half_edge_map.push_back(h);
    }
    REQUIRE(validate(small).empty());
    CHECK(covering_vertex_integral(small, {1, 0, 0}) == 0);
    (void)eta1;
}

TEST_CASE("degree one coverings reduce to the genus 0 integral") {
    std::mt19937 rng(31);
    for (int n = 4; n <= 6; ++n) {
        CoveringGraph c;
        int tv = c.target.add_vertex(0, 0);
        int sv = c.source.add_vertex(0, 0);
        c.vertex_map = {tv};
        c.vertex_degree = {1};
        for (int i = 0; i < n; ++i) {
            int th = c.target.add_tail(tv, 1, "t" + std::to_string(i));
            c.source.add_tail(sv, 1, "s" + std::to_string(i));
            c.half_edge_map.push_back(th);
        }
        REQUIRE(validate(c).empty());
        std::vector<int> ks(n, 0);
        for (int rest = n - 3, i = 0; rest > 0; --rest) {
            ks[rng() % n] += 1;
            (void)i;
        }
        CHECK(covering_vertex_integral(c, ks) == genus0_integral(ks));
    }
}

TEST_CASE("stratum integrals of the golden cases") {
    // genus 1: integral of psi over the covering moduli is 2^-6
    EtaLabel eta1 = build_eta(1, 1);
    BracketQuery q1{1, {1}};
    auto terms1 = contributing_terms(eta1, q1, {});
    REQUIRE(terms1.size() == 1);
    const ContractionTerm& main1 = terms1[0];
    SeriesFrame f1 = term_frame(main1, q1);
    int slot_inf1 = main1.rho.target.tail_by_label("inf");
    std::vector<uint8_t> mono1(f1.n_z() + f1.n_psi(), 0);
    mono1[f1.n_z() + slot_inf1] = 1;
    auto z1 = stratum_integral(main1, PsiSeries::monomial(&f1, mono1, 1));
    REQUIRE(z1.size() == 1);
    CHECK(z1.begin()->second == Rational(1, 64));

    // genus 2 main term: psi^4 integrates to 2^-6 3^-1
    EtaLabel eta2 = build_eta(2, 1);
    BracketQuery q2{2, {4}};
    auto terms2 = contributing_terms(eta2, q2, {});
    const ContractionTerm& main2 = term_with_key(terms2, canonical_form(eta2.covering));
    SeriesFrame f2 = term_frame(main2, q2);
    int slot_inf2 = main2.rho.target.tail_by_label("inf");
    std::vector<uint8_t> mono2(f2.n_z() + f2.n_psi(), 0);
    mono2[f2.n_z() + slot_inf2] = 4;
    auto z2 = stratum_integral(main2, PsiSeries::monomial(&f2, mono2, 1));
    REQUIRE(z2.size() == 1);
    CHECK(z2.begin()->second == Rational(1, 192));

    // boundary term: psi_e^3 = (psi_h1 + psi_h2)^3 integrates to 2^-12 3^-1
    const ContractionTerm& bd =
        term_with_key(terms2, canonical_form(build_boundary_covering(eta2, 1)));
    SeriesFrame fb = term_frame(bd, q2);
    auto [h1, h2] = bd.rho.target.edges()[0];
    PsiSeries cube(&fb);
    for (int a = 0; a <= 3; ++a) {
        std::vector<uint8_t> m(fb.n_z() + fb.n_psi(), 0);
        m[fb.n_z() + h1] = static_cast<uint8_t>(a);
        m[fb.n_z() + h2] = static_cast<uint8_t>(3 - a);
        cube.add_term(m, Rational(binomial(3, a)));
    }
    auto zb = stratum_integral(bd, cube);
    REQUIRE(zb.size() == 1);
    CHECK(zb.begin()->second == Rational(1, 12288));
}

TEST_CASE("golden brackets with audit") {
    auto r1 = bracket_full(BracketQuery{1, {1}}, {});
    CHECK(r1.value == Rational(1, 24));
    CHECK(r1.eta_deg == Rational(3, 8));
    REQUIRE(r1.terms.size() == 1);
    CHECK(r1.terms[0].weight == Rational(8, 3));
    CHECK(r1.terms[0].chi == std::vector<Integer>{1});

    auto r2 = bracket_full(BracketQuery{2, {4}}, {});
    CHECK(r2.value == Rational(1, 1152));
    CHECK(r2.eta_deg == Rational(15, 4));
    REQUIRE(r2.terms.size() == 7);
    int mains = 0, boundaries = 0;
    Rational boundary_sum = 0;
    for (const auto& t : r2.terms) {
        if (t.contribution == Rational(1, 720))
            ++mains;
        else {
            CHECK(t.contribution == Rational(-1, 11520));
            boundary_sum += t.contribution;
            ++boundaries;
        }
    }
    CHECK(mains == 1);
    CHECK(boundaries == 6);
    CHECK(boundary_sum == Rational(-1, 1920));

    CHECK(bracket(BracketQuery{0, {0, 0, 0}}, {}) == 1);
    CHECK(bracket(BracketQuery{0, {2, 0, 0, 0, 0}}, {}) == 1);
}

TEST_CASE("bracket input validation") {
    CHECK_THROWS(bracket(BracketQuery{1, {0}}, {}));      // dimension mismatch
    CHECK_THROWS(bracket(BracketQuery{1, {}}, {}));       // no marked points
    CHECK_THROWS(bracket(BracketQuery{2, {}}, {}));
    CHECK_THROWS(bracket(BracketQuery{0, {1, 1}}, {}));   // genus 0 needs n >= 3
}

TEST_CASE("multithreaded evaluation matches sequential") {
    BracketQuery q{2, {4}};
    BracketOptions seq, par;
    par.threads = 3;
    CHECK(bracket(q, seq) == bracket(q, par));
}
