#pragma once

#include "gwsym/covering.hpp"
#include "gwsym/eta.hpp"
#include "gwsym/graph.hpp"

#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace gwsym::testing {

// The degenerate covering of the genus 2 computation: target splits off the
// branch point b_s with the pole, the source splits into a rational bridge
// vertex, the genus 2 main component and a rational sheet.
//   eta2 must be build_eta(2, 1) with the default choice.
inline CoveringGraph build_boundary_covering(const EtaLabel& eta2, int s) {
    CoveringGraph rho;
    int v1 = rho.target.add_vertex(0, 0);
    int v2 = rho.target.add_vertex(0, 0);
    int t_inf = rho.target.add_tail(v1, eta2.m_infinity, "inf");
    int t_bs = rho.target.add_tail(v1, 2, "b" + std::to_string(s));
    std::vector<int> t_other;
    for (int t = 1; t <= eta2.branch_count; ++t) {
        if (t == s) continue;
        t_other.push_back(rho.target.add_tail(v2, 2, "b" + std::to_string(t)));
    }
    auto [e1, e2] = rho.target.add_edge(v1, v2, 2);

    int V1 = rho.source.add_vertex(0, 0);  // bridge component, degree 3
    int V2 = rho.source.add_vertex(2, 0);  // main component, degree 2
    int W2 = rho.source.add_vertex(0, 0);  // extra sheet, degree 1
    rho.vertex_map = {v1, v2, v2};
    rho.vertex_degree = {3, 2, 1};

    auto tail = [&](int sv, int mult, const std::string& label, int over) {
        rho.source.add_tail(sv, mult, label);
        rho.half_edge_map.push_back(over);
    };
    tail(V1, 1, "p1", t_inf);                                  // pole, local degree 3
    tail(V1, 1, "s" + std::to_string(s) + ".1", t_bs);         // local degree 2
    tail(V1, 2, "s" + std::to_string(s) + ".2", t_bs);         // local degree 1
    int idx = 0;
    for (int t = 1; t <= eta2.branch_count; ++t) {
        if (t == s) continue;
        tail(V2, 1, "s" + std::to_string(t) + ".1", t_other[idx]);
        tail(W2, 2, "s" + std::to_string(t) + ".2", t_other[idx]);
        ++idx;
    }
    // edge E: degree 2 on both germs, m = 1; edge F: degree 1, m = 2
    rho.source.add_edge(V1, V2, 1);
    rho.half_edge_map.push_back(e1);
    rho.half_edge_map.push_back(e2);
    rho.source.add_edge(V1, W2, 2);
    rho.half_edge_map.push_back(e1);
    rho.half_edge_map.push_back(e2);
    return rho;
}

// Covering with two interchangeable source tails over one target tail: the
// target is a rational vertex with tails a, b, c; the source sheet has degree
// 4 with full ramification over a and b and two double points over c.
inline CoveringGraph build_interchangeable_tails_covering() {
    CoveringGraph c;
    int tv = c.target.add_vertex(0, 0);
    int ta = c.target.add_tail(tv, 4, "a");
    int tb = c.target.add_tail(tv, 4, "b");
    int tc = c.target.add_tail(tv, 2, "c");
    int sv = c.source.add_vertex(1, 0);
    c.vertex_map = {tv};
    c.vertex_degree = {4};
    c.source.add_tail(sv, 1, "");
    c.half_edge_map.push_back(ta);
    c.source.add_tail(sv, 1, "");
    c.half_edge_map.push_back(tb);
    c.source.add_tail(sv, 1, "");
    c.half_edge_map.push_back(tc);
    c.source.add_tail(sv, 1, "");
    c.half_edge_map.push_back(tc);
    return c;
}

// Deterministic family of small stable twisted graphs for exhaustive checks.
inline std::vector<TwistedGraph> small_graph_family() {
    std::vector<TwistedGraph> out;
    // all multigraph patterns on <= 3 vertices with <= 3 edges
    std::vector<std::vector<std::pair<int, int>>> patterns = {
        {},
        {{0, 0}},
        {{0, 1}},
        {{0, 1}, {0, 1}},
        {{0, 1}, {1, 2}},
        {{0, 1}, {0, 0}},
        {{0, 1}, {1, 2}, {0, 2}},
        {{0, 1}, {0, 1}, {0, 1}},
        {{0, 1}, {0, 1}, {1, 2}},
        {{0, 0}, {1, 1}, {0, 1}},
        {{0, 1}, {1, 2}, {2, 2}},
    };
    for (const auto& pat : patterns) {
        int nv = 1;
        for (auto [a, b] : pat) nv = std::max({nv, a + 1, b + 1});
        for (int genus_mask = 0; genus_mask < (1 << nv); ++genus_mask)
            for (int mult_mask = 0;
                 mult_mask < (1 << static_cast<int>(pat.size())); ++mult_mask) {
                TwistedGraph g;
                for (int v = 0; v < nv; ++v) g.add_vertex((genus_mask >> v) & 1, 0);
                int tail_id = 0;
                for (int v = 0; v < nv; ++v)
                    for (int t = 0; t < 3; ++t)
                        g.add_tail(v, 1, "t" + std::to_string(tail_id++));
                for (size_t e = 0; e < pat.size(); ++e)
                    g.add_edge(pat[e].first, pat[e].second,
                               ((mult_mask >> e) & 1) ? 2 : 1);
                out.push_back(std::move(g));
            }
    }
    return out;
}

// Random stable twisted graph with <= max_half_edges half-edges.
inline TwistedGraph random_graph(std::mt19937& rng, int max_half_edges) {
    std::uniform_int_distribution<int> nv_pick(1, 3), g_pick(0, 2), m_pick(1, 3);
    TwistedGraph g;
    int nv = nv_pick(rng);
    for (int v = 0; v < nv; ++v) g.add_vertex(g_pick(rng), 0);
    int budget = max_half_edges;
    int tail_id = 0;
    // enough tails for stability first
    for (int v = 0; v < nv; ++v) {
        int need = std::max(0, 3 - 2 * g.vertices[v].genus);
        for (int t = 0; t < need && budget > 0; ++t, --budget)
            g.add_tail(v, m_pick(rng), "t" + std::to_string(tail_id++));
    }
    std::uniform_int_distribution<int> v_pick(0, nv - 1), coin(0, 2);
    while (budget >= 2 && coin(rng)) {
        g.add_edge(v_pick(rng), v_pick(rng), m_pick(rng));
        budget -= 2;
    }
    return g;
}

// Renames vertices and permutes half-edge storage without touching labels.
inline TwistedGraph relabel(const TwistedGraph& g, std::mt19937& rng) {
    int nv = static_cast<int>(g.vertices.size());
    int nh = static_cast<int>(g.half_edges.size());
    std::vector<int> vperm(nv), hperm(nh);
    std::iota(vperm.begin(), vperm.end(), 0);
    std::iota(hperm.begin(), hperm.end(), 0);
    std::shuffle(vperm.begin(), vperm.end(), rng);
    std::shuffle(hperm.begin(), hperm.end(), rng);
    TwistedGraph out;
    out.vertices.resize(nv);
    out.half_edges.resize(nh);
    for (int v = 0; v < nv; ++v) out.vertices[vperm[v]] = g.vertices[v];
    for (int h = 0; h < nh; ++h) {
        const auto& he = g.half_edges[h];
        out.half_edges[hperm[h]] = {vperm[he.vertex], hperm[he.mate], he.mult, he.label};
    }
    return out;
}

// Oracle: count structure-preserving bijections by unpruned enumeration.
inline long dumb_automorphism_count(const TwistedGraph& g, bool fix_tails) {
    int nv = static_cast<int>(g.vertices.size());
    int nh = static_cast<int>(g.half_edges.size());
    std::vector<int> vperm(nv), hperm(nh);
    std::iota(vperm.begin(), vperm.end(), 0);
    long count = 0;
    do {
        std::iota(hperm.begin(), hperm.end(), 0);
        do {
            bool ok = true;
            for (int v = 0; v < nv && ok; ++v)
                ok = g.vertices[vperm[v]].genus == g.vertices[v].genus &&
                     g.vertices[vperm[v]].mark == g.vertices[v].mark;
            for (int h = 0; h < nh && ok; ++h) {
                const auto& a = g.half_edges[h];
                const auto& b = g.half_edges[hperm[h]];
                ok = b.vertex == vperm[a.vertex] && b.mult == a.mult &&
                     hperm[a.mate] == b.mate;
                if (ok && fix_tails && a.mate == h) ok = hperm[h] == h;
            }
            if (ok) ++count;
        } while (std::next_permutation(hperm.begin(), hperm.end()));
    } while (std::next_permutation(vperm.begin(), vperm.end()));
    return count;
}

}  // namespace gwsym::testing
