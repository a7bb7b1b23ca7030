#include "gwsym/eta.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gwsym {

EtaChoice default_eta_choice(int g) { return EtaChoice{{{1, g + 1}}}; }

std::vector<EtaChoice> all_eta_choices(int g, int n) {
    std::vector<EtaChoice> out;
    int target = g + 1;
    // nonempty subsets of {1..n} with a composition of g+1
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> poles;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) poles.push_back(i + 1);
        int parts = static_cast<int>(poles.size());
        if (parts > target) continue;
        std::vector<int> degs(parts, 1);
        auto rec = [&](auto&& self, int idx, int rest) -> void {
            if (idx == parts - 1) {
                degs[idx] = rest;
                EtaChoice c;
                for (int i = 0; i < parts; ++i) c.pole_degrees.emplace_back(poles[i], degs[i]);
                out.push_back(c);
                return;
            }
            for (int d = 1; d <= rest - (parts - 1 - idx); ++d) {
                degs[idx] = d;
                self(self, idx + 1, rest - d);
            }
        };
        rec(rec, 0, target);
    }
    return out;
}

namespace {

void check_choice(int g, int n, const EtaChoice& c) {
    if (c.pole_degrees.empty()) throw std::invalid_argument("eta choice: empty PoleSet");
    std::set<int> seen;
    int sum = 0;
    for (auto [i, d] : c.pole_degrees) {
        if (i < 1 || i > n) throw std::invalid_argument("eta choice: pole mark out of range");
        if (!seen.insert(i).second) throw std::invalid_argument("eta choice: duplicate pole");
        if (d < 1) throw std::invalid_argument("eta choice: pole degree < 1");
        sum += d;
    }
    if (sum != g + 1) throw std::invalid_argument("eta choice: pole degrees must sum to g+1");
}

}  // namespace

EtaLabel build_eta(int g, int n, std::optional<EtaChoice> choice) {
    if (g < 1)
        throw std::invalid_argument("build_eta: genus must be >= 1 (use the genus 0 closed form)");
    if (n < 1) throw std::invalid_argument("build_eta: needs at least one marked point");
    EtaChoice c = choice.value_or(default_eta_choice(g));
    check_choice(g, n, c);

    EtaLabel eta;
    eta.genus = g;
    eta.n_points = n;
    eta.choice = c;

    std::set<int> pole_set;
    int m_inf = 1;
    for (auto [i, d] : c.pole_degrees) {
        pole_set.insert(i);
        m_inf = std::lcm(m_inf, d);
    }
    int num_poles = static_cast<int>(pole_set.size());
    int k = num_poles + 3 * g - 1;
    eta.branch_count = k;
    eta.m_infinity = m_inf;

    CoveringGraph& cov = eta.covering;
    int tv = cov.target.add_vertex(0, 0);
    int sv = cov.source.add_vertex(g, 0);
    cov.vertex_map = {tv};
    cov.vertex_degree = {g + 1};

    // target tails: J, then infinity, then the branch points
    std::vector<int> target_of_mark(n + 1, -1);
    for (int j = 1; j <= n; ++j) {
        if (pole_set.count(j)) continue;
        target_of_mark[j] = cov.target.add_tail(tv, 1, "x" + std::to_string(j));
    }
    int t_inf = cov.target.add_tail(tv, m_inf, "inf");
    std::vector<int> t_branch(k);
    for (int s = 1; s <= k; ++s) t_branch[s - 1] = cov.target.add_tail(tv, 2, "b" + std::to_string(s));

    eta.retained.assign(n, -1);
    auto add_source_tail = [&](int mult, const std::string& label, int over) {
        int h = cov.source.add_tail(sv, mult, label);
        cov.half_edge_map.push_back(over);
        return h;
    };

    // source tails over J: g+1 sheets, the last one retained
    for (int j = 1; j <= n; ++j) {
        if (pole_set.count(j)) continue;
        for (int r = 1; r <= g + 1; ++r) {
            int h = add_source_tail(1, "q" + std::to_string(j) + "." + std::to_string(r),
                                    target_of_mark[j]);
            if (r == g + 1) eta.retained[j - 1] = h;
        }
    }
    // pole tails over infinity, all retained
    for (auto [i, d] : c.pole_degrees)
        eta.retained[i - 1] = add_source_tail(m_inf / d, "p" + std::to_string(i), t_inf);
    // simple branching over each branch point: one sheet of local degree 2,
    // g-1 untwisted double points
    for (int s = 1; s <= k; ++s)
        for (int r = 1; r <= g; ++r)
            add_source_tail(r == 1 ? 1 : 2,
                            "s" + std::to_string(s) + "." + std::to_string(r), t_branch[s - 1]);

    for (int h : cov.source.tails())
        if (std::find(eta.retained.begin(), eta.retained.end(), h) == eta.retained.end())
            eta.forget.push_back(h);

    auto bad = validate(cov);
    if (!bad.empty()) throw std::logic_error("build_eta: invalid covering: " + bad.front());
    // dimension identity k + #J - 2 == 3g - 3 + n
    int nj = n - num_poles;
    if (k + nj - 2 != 3 * g - 3 + n) throw std::logic_error("build_eta: dimension mismatch");
    return eta;
}

Rational eta_degree(const EtaLabel& eta) {
    int g = eta.genus;
    int k = eta.branch_count;
    int nj = eta.n_points - static_cast<int>(eta.choice.pole_degrees.size());
    Rational num(factorial(k) * pow_integer(factorial(g), nj) *
                 pow_integer(factorial(g - 1), k));
    Rational den(pow_integer(2, k) * eta.m_infinity);
    return num / den;
}

}  // namespace gwsym
