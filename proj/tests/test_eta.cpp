#include "gwsym/eta.hpp"
#include "gwsym/iso.hpp"

#include <doctest.h>

#include <set>

using namespace gwsym;

TEST_CASE("genus 1 label structure") {
    EtaLabel eta = build_eta(1, 1);
    const CoveringGraph& c = eta.covering;
    CHECK(eta.branch_count == 3);
    CHECK(eta.m_infinity == 2);

    auto tt = c.target.tails();
    REQUIRE(tt.size() == 4);
    for (int h : tt) CHECK(c.target.half_edges[h].mult == 2);

    auto st = c.source.tails();
    REQUIRE(st.size() == 4);
    for (int h : st) {
        CHECK(c.source.half_edges[h].mult == 1);
        CHECK(c.local_degree(h) == 2);
    }
    CHECK(c.source.vertices.size() == 1);
    CHECK(c.source.vertices[0].genus == 1);
    CHECK(c.target.vertices[0].genus == 0);
    CHECK(eta.retained == std::vector<int>{c.source.tail_by_label("p1")});
    CHECK(eta.forget.size() == 3);
}

TEST_CASE("genus 2 label structure") {
    EtaLabel eta = build_eta(2, 1);
    const CoveringGraph& c = eta.covering;
    CHECK(eta.branch_count == 6);
    CHECK(eta.m_infinity == 3);
    REQUIRE(c.target.tails().size() == 7);

    int inf = c.target.tail_by_label("inf");
    CHECK(c.target.half_edges[inf].mult == 3);
    for (int h : c.target.tails())
        if (h != inf) CHECK(c.target.half_edges[h].mult == 2);

    int pole = c.source.tail_by_label("p1");
    CHECK(c.local_degree(pole) == 3);
    CHECK(c.source.half_edges[pole].mult == 1);
    int sheet = c.source.tail_by_label("s3.1");
    CHECK(c.local_degree(sheet) == 2);
    CHECK(c.source.half_edges[sheet].mult == 1);
    int dbl = c.source.tail_by_label("s3.2");
    CHECK(c.local_degree(dbl) == 1);
    CHECK(c.source.half_edges[dbl].mult == 2);
    CHECK(c.source.tails().size() == 13);
}

TEST_CASE("genus 0 is rejected") {
    CHECK_THROWS(build_eta(0, 3));
    CHECK_THROWS(build_eta(1, 0));
    CHECK_THROWS(build_eta(1, 1, EtaChoice{{{1, 1}}}));   // degrees must sum to g+1
    CHECK_THROWS(build_eta(1, 2, EtaChoice{{{3, 2}}}));   // pole out of range
}

TEST_CASE("covering degrees of the moduli projection") {
    CHECK(eta_degree(build_eta(1, 1)) == Rational(3, 8));
    CHECK(eta_degree(build_eta(2, 1)) == Rational(15, 4));
    // k = 3, #J = 1: 3! * 1! * 1 / (2^3 * 2)
    CHECK(eta_degree(build_eta(1, 2)) == Rational(3, 8));
    // two simple poles: k = 4, m(inf) = 1
    CHECK(eta_degree(build_eta(1, 2, EtaChoice{{{1, 1}, {2, 1}}})) == Rational(3, 2));
    for (int g = 1; g <= 3; ++g)
        for (int n = 1; n <= 3; ++n)
            for (const auto& choice : all_eta_choices(g, n))
                CHECK(eta_degree(build_eta(g, n, choice)) > 0);
}

TEST_CASE("every choice produces a valid label with the right dimension") {
    for (int g = 1; g <= 3; ++g)
        for (int n = 1; n <= 3; ++n)
            for (const auto& choice : all_eta_choices(g, n)) {
                EtaLabel eta = build_eta(g, n, choice);
                CHECK(validate(eta.covering).empty());
                int nj = n - static_cast<int>(choice.pole_degrees.size());
                CHECK(eta.branch_count + nj - 2 == 3 * g - 3 + n);
                std::set<int> retained(eta.retained.begin(), eta.retained.end());
                CHECK(retained.size() == static_cast<size_t>(n));
                for (int h : eta.forget) CHECK(!retained.count(h));
                CHECK(retained.size() + eta.forget.size() ==
                      eta.covering.source.tails().size());
            }
}

TEST_CASE("retained tails are untwisted under the default choice") {
    for (int g = 1; g <= 3; ++g)
        for (int n = 1; n <= 3; ++n) {
            EtaLabel eta = build_eta(g, n);
            for (int h : eta.retained) CHECK(eta.covering.source.half_edges[h].mult == 1);
        }
}
