#include "gwsym/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace gwsym {

namespace {

// Iterative refinement: start from structural vertex invariants, refine by
// sorted neighbour colors until stable.  Returns an ordinal color per vertex.
std::vector<int> refine_colors(const TwistedGraph& g, std::vector<std::string> sig) {
    int nv = static_cast<int>(g.vertices.size());
    std::vector<int> color(nv, 0);
    for (int round = 0; round <= nv; ++round) {
        std::map<std::string, int> order;
        for (const auto& s : sig) order.emplace(s, 0);
        int next = 0;
        for (auto& [_, idx] : order) idx = next++;
        std::vector<int> fresh(nv);
        for (int v = 0; v < nv; ++v) fresh[v] = order[sig[v]];
        if (fresh == color && round > 0) break;
        color = fresh;
        for (int v = 0; v < nv; ++v) {
            std::vector<std::pair<int, int>> nbr;  // (edge mult, neighbour color)
            for (int h : g.half_edges_of(v)) {
                if (g.is_tail(h)) continue;
                int w = g.half_edges[g.half_edges[h].mate].vertex;
                nbr.emplace_back(g.half_edges[h].mult, color[w]);
            }
            std::sort(nbr.begin(), nbr.end());
            std::ostringstream os;
            os << color[v];
            for (auto& [m, c] : nbr) os << ",(" << m << ":" << c << ")";
            sig[v] = os.str();
        }
    }
    return color;
}

std::vector<std::string> base_signatures(const TwistedGraph& g,
                                         const std::function<std::string(int)>& extra) {
    std::vector<std::string> sig(g.vertices.size());
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        std::vector<std::string> tails;
        std::vector<int> germ_mults;
        for (int h : g.half_edges_of(v)) {
            if (g.is_tail(h))
                tails.push_back(g.half_edges[h].label + "~" +
                                std::to_string(g.half_edges[h].mult));
            else
                germ_mults.push_back(g.half_edges[h].mult);
        }
        std::sort(tails.begin(), tails.end());
        std::sort(germ_mults.begin(), germ_mults.end());
        std::ostringstream os;
        os << "g" << g.vertices[v].genus << "a" << g.vertices[v].mark << "T[";
        for (auto& t : tails) os << t << ";";
        os << "]M[";
        for (int m : germ_mults) os << m << ";";
        os << "]";
        if (extra) os << extra(v);
        sig[v] = os.str();
    }
    return sig;
}

// Enumerate vertex orderings compatible with the color classes (classes in
// ascending color order, all permutations inside each class).
void for_each_order(const std::vector<int>& color,
                    const std::function<void(const std::vector<int>&)>& cb) {
    int nv = static_cast<int>(color.size());
    std::vector<int> ord(nv);
    for (int i = 0; i < nv; ++i) ord[i] = i;
    std::stable_sort(ord.begin(), ord.end(),
                     [&](int a, int b) { return color[a] < color[b]; });
    // positions of each tie class
    std::vector<std::pair<int, int>> classes;
    for (int i = 0; i < nv;) {
        int j = i;
        while (j < nv && color[ord[j]] == color[ord[i]]) ++j;
        classes.emplace_back(i, j);
        i = j;
    }
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == classes.size()) {
            cb(ord);
            return;
        }
        auto [b, e] = classes[k];
        std::sort(ord.begin() + b, ord.begin() + e);
        do {
            rec(k + 1);
        } while (std::next_permutation(ord.begin() + b, ord.begin() + e));
    };
    rec(0);
}

std::string serialize_graph(const TwistedGraph& g, const std::vector<int>& ord) {
    int nv = static_cast<int>(g.vertices.size());
    std::vector<int> pos(nv);
    for (int i = 0; i < nv; ++i) pos[ord[i]] = i;
    std::ostringstream os;
    for (int i = 0; i < nv; ++i) {
        int v = ord[i];
        std::vector<std::string> tails;
        for (int h : g.half_edges_of(v))
            if (g.is_tail(h))
                tails.push_back(g.half_edges[h].label + "~" +
                                std::to_string(g.half_edges[h].mult));
        std::sort(tails.begin(), tails.end());
        os << "V(g=" << g.vertices[v].genus << ",a=" << g.vertices[v].mark << ",T=[";
        for (auto& t : tails) os << t << ";";
        os << "])";
    }
    std::vector<std::tuple<int, int, int>> es;
    for (auto [h1, h2] : g.edges()) {
        int a = pos[g.half_edges[h1].vertex], b = pos[g.half_edges[h2].vertex];
        es.emplace_back(std::min(a, b), std::max(a, b), g.half_edges[h1].mult);
    }
    std::sort(es.begin(), es.end());
    os << "E[";
    for (auto& [a, b, m] : es) os << a << "-" << b << "~" << m << ";";
    os << "]";
    return os.str();
}

std::string hex_encode(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * s.size());
    for (unsigned char c : s) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

// Canonical indexing of target half-edges under a fixed vertex order.
// Tails get indices first (sorted by (vertex pos, label)), then edge germs.
// flavor chooses among tie-broken edge orders and loop side flips; the caller
// minimizes over all flavors.
struct TargetIndexing {
    std::vector<int> index_of_he;  // target half-edge -> canonical index
    std::string edge_desc;
};

void for_each_target_indexing(const TwistedGraph& t, const std::vector<int>& ord,
                              const std::function<void(const TargetIndexing&)>& cb) {
    int nv = static_cast<int>(t.vertices.size());
    std::vector<int> pos(nv);
    for (int i = 0; i < nv; ++i) pos[ord[i]] = i;

    std::vector<std::pair<std::string, int>> tail_keys;
    for (int h : t.tails())
        tail_keys.emplace_back(std::to_string(pos[t.half_edges[h].vertex]) + "|" +
                                   t.half_edges[h].label + "~" +
                                   std::to_string(t.half_edges[h].mult),
                               h);
    std::sort(tail_keys.begin(), tail_keys.end());
    std::vector<std::pair<int, int>> tail_groups;
    for (int i = 0; i < static_cast<int>(tail_keys.size());) {
        int j = i;
        while (j < static_cast<int>(tail_keys.size()) && tail_keys[j].first == tail_keys[i].first)
            ++j;
        tail_groups.emplace_back(i, j);
        i = j;
    }

    struct E {
        int a, b, m, h_at_a, h_at_b;
    };
    std::vector<E> es;
    for (auto [h1, h2] : t.edges()) {
        int a = pos[t.half_edges[h1].vertex], b = pos[t.half_edges[h2].vertex];
        if (a <= b)
            es.push_back({a, b, t.half_edges[h1].mult, h1, h2});
        else
            es.push_back({b, a, t.half_edges[h1].mult, h2, h1});
    }
    std::sort(es.begin(), es.end(), [](const E& x, const E& y) {
        return std::tie(x.a, x.b, x.m) < std::tie(y.a, y.b, y.m);
    });

    // groups of indistinguishable edges
    std::vector<std::pair<int, int>> groups;
    for (int i = 0; i < static_cast<int>(es.size());) {
        int j = i;
        while (j < static_cast<int>(es.size()) && es[j].a == es[i].a && es[j].b == es[i].b &&
               es[j].m == es[i].m)
            ++j;
        groups.emplace_back(i, j);
        i = j;
    }
    std::vector<int> loops;
    for (int i = 0; i < static_cast<int>(es.size()); ++i)
        if (es[i].a == es[i].b) loops.push_back(i);

    auto emit = [&](const std::vector<std::pair<std::string, int>>& tails_arranged,
                    const std::vector<E>& arranged) {
        TargetIndexing ti;
        ti.index_of_he.assign(t.half_edges.size(), -1);
        int next = 0;
        for (auto& [_, h] : tails_arranged) ti.index_of_he[h] = next++;
        std::ostringstream os;
        for (auto& e : arranged) {
            ti.index_of_he[e.h_at_a] = next++;
            ti.index_of_he[e.h_at_b] = next++;
            os << e.a << "-" << e.b << "~" << e.m << ";";
        }
        ti.edge_desc = os.str();
        cb(ti);
    };

    std::function<void(size_t, std::vector<std::pair<std::string, int>>&, std::vector<E>&)>
        flip_rec = [&](size_t li, std::vector<std::pair<std::string, int>>& tls,
                       std::vector<E>& cur) {
            if (li == loops.size()) {
                emit(tls, cur);
                return;
            }
            flip_rec(li + 1, tls, cur);
            std::swap(cur[loops[li]].h_at_a, cur[loops[li]].h_at_b);
            flip_rec(li + 1, tls, cur);
            std::swap(cur[loops[li]].h_at_a, cur[loops[li]].h_at_b);
        };
    std::function<void(size_t, std::vector<std::pair<std::string, int>>&, std::vector<E>&)>
        group_rec = [&](size_t gi, std::vector<std::pair<std::string, int>>& tls,
                        std::vector<E>& cur) {
            if (gi == groups.size()) {
                flip_rec(0, tls, cur);
                return;
            }
            auto [b, e] = groups[gi];
            std::vector<int> perm(e - b);
            for (int i = 0; i < e - b; ++i) perm[i] = i;
            do {
                std::vector<E> nxt = cur;
                for (int i = 0; i < e - b; ++i) nxt[b + i] = cur[b + perm[i]];
                group_rec(gi + 1, tls, nxt);
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
    std::function<void(size_t)> tail_rec = [&](size_t ti_g) {
        if (ti_g == tail_groups.size()) {
            group_rec(0, tail_keys, es);
            return;
        }
        auto [b, e] = tail_groups[ti_g];
        std::sort(tail_keys.begin() + b, tail_keys.begin() + e);
        do {
            tail_rec(ti_g + 1);
        } while (std::next_permutation(tail_keys.begin() + b, tail_keys.begin() + e));
    };
    tail_rec(0);
}

std::string serialize_source(const CoveringGraph& c, const std::vector<int>& tpos_of_vertex,
                             const TargetIndexing& ti, const std::vector<int>& sord) {
    int nsv = static_cast<int>(c.source.vertices.size());
    std::vector<int> pos(nsv);
    for (int i = 0; i < nsv; ++i) pos[sord[i]] = i;
    std::ostringstream os;
    for (int i = 0; i < nsv; ++i) {
        int v = sord[i];
        std::vector<std::string> tails;
        for (int h : c.source.half_edges_of(v))
            if (c.source.is_tail(h))
                tails.push_back(c.source.half_edges[h].label + "~" +
                                std::to_string(c.source.half_edges[h].mult) + "@" +
                                std::to_string(ti.index_of_he[c.half_edge_map[h]]));
        std::sort(tails.begin(), tails.end());
        os << "W(g=" << c.source.vertices[v].genus << ",a=" << c.source.vertices[v].mark
           << ",d=" << c.vertex_degree[v] << ",over=" << tpos_of_vertex[c.vertex_map[v]]
           << ",T=[";
        for (auto& t : tails) os << t << ";";
        os << "])";
    }
    std::vector<std::tuple<int, int, int, int, int>> es;
    for (auto [h1, h2] : c.source.edges()) {
        int a = pos[c.source.half_edges[h1].vertex], b = pos[c.source.half_edges[h2].vertex];
        int ta = ti.index_of_he[c.half_edge_map[h1]], tb = ti.index_of_he[c.half_edge_map[h2]];
        if (std::tie(a, ta) > std::tie(b, tb)) {
            std::swap(a, b);
            std::swap(ta, tb);
        }
        es.emplace_back(a, b, c.source.half_edges[h1].mult, ta, tb);
    }
    std::sort(es.begin(), es.end());
    os << "F[";
    for (auto& [a, b, m, ta, tb] : es)
        os << a << "-" << b << "~" << m << "@" << ta << "," << tb << ";";
    os << "]";
    return os.str();
}

}  // namespace

std::string canonical_form(const TwistedGraph& g) {
    auto color = refine_colors(g, base_signatures(g, nullptr));
    std::string best;
    for_each_order(color, [&](const std::vector<int>& ord) {
        std::string s = serialize_graph(g, ord);
        if (best.empty() || s < best) best = std::move(s);
    });
    return hex_encode(best);
}

std::string canonical_form(const CoveringGraph& c) {
    auto tcolor = refine_colors(c.target, base_signatures(c.target, nullptr));
    std::string best;
    for_each_order(tcolor, [&](const std::vector<int>& tord) {
        std::string tser = serialize_graph(c.target, tord);
        int ntv = static_cast<int>(c.target.vertices.size());
        std::vector<int> tpos(ntv);
        for (int i = 0; i < ntv; ++i) tpos[tord[i]] = i;
        for_each_target_indexing(c.target, tord, [&](const TargetIndexing& ti) {
            // source colors depend on the chosen target indexing
            auto extra = [&](int v) {
                std::vector<int> slots;
                for (int h : c.source.half_edges_of(v))
                    slots.push_back(ti.index_of_he[c.half_edge_map[h]]);
                std::sort(slots.begin(), slots.end());
                std::ostringstream os;
                os << "d" << c.vertex_degree[v] << "o" << tpos[c.vertex_map[v]] << "S[";
                for (int s : slots) os << s << ";";
                os << "]";
                return os.str();
            };
            auto scolor = refine_colors(c.source, base_signatures(c.source, extra));
            for_each_order(scolor, [&](const std::vector<int>& sord) {
                std::string full = tser + "||" + ti.edge_desc + "||" +
                                   serialize_source(c, tpos, ti, sord);
                if (best.empty() || full < best) best = std::move(full);
            });
        });
    });
    return hex_encode(best);
}

}  // namespace gwsym
