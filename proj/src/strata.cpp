#include "gwsym/strata.hpp"

#include "gwsym/canonical.hpp"
#include "gwsym/hurwitz.hpp"
#include "gwsym/iso.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace gwsym {

namespace {

struct CompInfo {
    std::vector<int> comp;  // source vertex -> component id (all edges except one)
    std::vector<int> genus, edge_count, vertex_count, mark_sum;
};

CompInfo components_without_edge(const CoveringGraph& rho, int skip_edge_id) {
    const TwistedGraph& s = rho.source;
    auto es = s.edges();
    int nv = static_cast<int>(s.vertices.size());
    std::vector<std::vector<int>> adj(nv);
    for (int i = 0; i < static_cast<int>(es.size()); ++i) {
        if (i == skip_edge_id) continue;
        adj[s.half_edges[es[i].first].vertex].push_back(i);
        adj[s.half_edges[es[i].second].vertex].push_back(i);
    }
    CompInfo info;
    info.comp.assign(nv, -1);
    for (int start = 0; start < nv; ++start) {
        if (info.comp[start] >= 0) continue;
        int c = static_cast<int>(info.genus.size());
        info.genus.push_back(0);
        info.edge_count.push_back(0);
        info.vertex_count.push_back(0);
        info.mark_sum.push_back(0);
        std::vector<int> stack{start};
        info.comp[start] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            info.genus[c] += s.vertices[v].genus;
            info.mark_sum[c] += s.vertices[v].mark;
            info.vertex_count[c] += 1;
            for (int ei : adj[v]) {
                int va = s.half_edges[es[ei].first].vertex;
                int vb = s.half_edges[es[ei].second].vertex;
                for (int w : {va, vb})
                    if (info.comp[w] < 0) {
                        info.comp[w] = c;
                        stack.push_back(w);
                    }
            }
        }
    }
    for (int i = 0; i < static_cast<int>(es.size()); ++i) {
        if (i == skip_edge_id) continue;
        info.edge_count[info.comp[s.half_edges[es[i].first].vertex]] += 1;
    }
    return info;
}

}  // namespace

int s_indicator(const CoveringGraph& rho, int source_edge_id, int retained_he,
                const std::set<int>& retained_all) {
    const TwistedGraph& s = rho.source;
    auto es = s.edges();
    auto info = components_without_edge(rho, source_edge_id);
    int u = info.comp[s.half_edges[retained_he].vertex];

    int arith_genus = info.genus[u] + info.edge_count[u] - info.vertex_count[u] + 1;
    if (arith_genus != 0) return 0;
    // indecomposable zero: the component mark vanishes iff the integer sum does
    if (info.mark_sum[u] != 0) return 0;

    int special = 0;
    for (int h : retained_all)
        if (info.comp[s.half_edges[h].vertex] == u) ++special;
    auto [h1, h2] = es.at(source_edge_id);
    if (info.comp[s.half_edges[h1].vertex] == u) ++special;
    if (info.comp[s.half_edges[h2].vertex] == u) ++special;
    return special <= 2 ? 1 : 0;
}

std::vector<int> retained_marks(const CoveringGraph& rho, const EtaLabel& eta) {
    std::map<std::string, int> mark_of_label;
    for (int i = 0; i < eta.n_points; ++i)
        mark_of_label[eta.covering.source.half_edges[eta.retained[i]].label] = i + 1;
    std::vector<int> out(rho.source.half_edges.size(), 0);
    for (int h : rho.source.tails()) {
        auto it = mark_of_label.find(rho.source.half_edges[h].label);
        if (it != mark_of_label.end()) out[h] = it->second;
    }
    return out;
}

WeightForm tail_weight(const CoveringGraph& rho, int target_tail_he,
                       const std::vector<int>& mark_of_source_he, int n_points) {
    WeightForm w;
    w.coef.assign(n_points, 0);
    for (int h : rho.fiber_of_half_edge(target_tail_he)) {
        int mark = mark_of_source_he[h];
        if (mark > 0) w.coef[mark - 1] += rho.source.half_edges[h].mult;
    }
    return w;
}

WeightForm edge_weight(const CoveringGraph& rho, int target_edge_id,
                       const std::vector<int>& mark_of_source_he, int n_points) {
    WeightForm w;
    w.coef.assign(n_points, 0);
    std::set<int> retained_all;
    for (int h = 0; h < static_cast<int>(mark_of_source_he.size()); ++h)
        if (mark_of_source_he[h] > 0) retained_all.insert(h);

    auto tes = rho.target.edges();
    auto ses = rho.source.edges();
    int tg1 = tes.at(target_edge_id).first;
    int tg2 = rho.target.half_edges[tg1].mate;
    for (int i = 0; i < static_cast<int>(ses.size()); ++i) {
        int th = rho.half_edge_map[ses[i].first];
        if (th != tg1 && th != tg2) continue;
        int mult = rho.source.half_edges[ses[i].first].mult;
        for (int t : retained_all)
            if (s_indicator(rho, i, t, retained_all))
                w.coef[mark_of_source_he[t] - 1] += mult;
    }
    return w;
}

namespace {

struct SrcTail {
    std::string label;
    int m = 1;
    int d = 1;
};

// One source vertex over a target vertex.
struct LocalSlot {
    int degree = 1;
    int genus = 0;
    std::vector<std::vector<int>> tails;       // per local tail position -> SrcTail indices
    std::vector<std::vector<int>> germ_parts;  // per incident edge position -> partition
};
using LocalData = std::vector<LocalSlot>;

struct TreeShape {
    int n_vertices = 1;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> tail_vertex;  // eta target tail index -> tree vertex
};

struct Inst {
    int slot;    // slot index within the local data of that side's vertex
    int degree;  // local degree of the germ
};

std::vector<std::vector<std::pair<int, int>>> labeled_trees(int V) {
    std::vector<std::vector<std::pair<int, int>>> out;
    if (V == 1) {
        out.push_back({});
        return out;
    }
    if (V == 2) {
        out.push_back({{0, 1}});
        return out;
    }
    std::vector<int> seq(V - 2, 0);
    while (true) {
        std::vector<int> degc(V, 1);
        for (int x : seq) degc[x] += 1;
        std::vector<std::pair<int, int>> edges;
        std::vector<bool> used(V, false);
        for (int x : seq) {
            int leaf = -1;
            for (int v = 0; v < V; ++v)
                if (degc[v] == 1 && !used[v]) {
                    leaf = v;
                    break;
                }
            edges.emplace_back(leaf, x);
            used[leaf] = true;
            degc[leaf] -= 1;
            degc[x] -= 1;
        }
        int a = -1, b = -1;
        for (int v = 0; v < V; ++v)
            if (!used[v] && degc[v] == 1) (a < 0 ? a : b) = v;
        edges.emplace_back(a, b);
        out.push_back(edges);
        int i = V - 3;
        while (i >= 0 && seq[i] == V - 1) seq[i--] = 0;
        if (i < 0) break;
        seq[i] += 1;
    }
    return out;
}

const std::vector<Partition>& partitions_cached(int d) {
    static std::map<int, std::vector<Partition>> cache;
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, partitions_of(d)).first;
    return it->second;
}

// Cheap canonical key for a stable tree with labelled tails: minimal rooted
// AHU serialization over all roots.
std::string tree_key(const std::vector<std::pair<int, int>>& edges,
                     const std::vector<int>& tail_vertex, int V) {
    std::vector<std::vector<int>> adj(V);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        adj[edges[i].first].push_back(edges[i].second);
        adj[edges[i].second].push_back(edges[i].first);
    }
    std::vector<std::string> base(V);
    for (int t = 0; t < static_cast<int>(tail_vertex.size()); ++t)
        base[tail_vertex[t]] += std::to_string(t) + ",";
    std::function<std::string(int, int)> dfs = [&](int v, int parent) {
        std::vector<std::string> kids;
        for (int w : adj[v])
            if (w != parent) kids.push_back(dfs(w, v));
        std::sort(kids.begin(), kids.end());
        std::string s = "(" + base[v] + "|";
        for (auto& k : kids) s += k;
        return s + ")";
    };
    std::string best;
    for (int root = 0; root < V; ++root) {
        std::string s = dfs(root, -1);
        if (best.empty() || s < best) best = std::move(s);
    }
    return best;
}

struct Enumerator {
    const EtaLabel& eta;
    const BracketQuery& query;
    const StrataOptions& opt;

    int g, n, total_degree, edge_cap;
    std::vector<int> eta_target_tails;           // target half-edge ids in eta
    std::vector<std::vector<SrcTail>> src_over;  // per eta target tail index

    std::map<std::string, ContractionTerm> results;
    std::set<std::string> seen_targets;
    std::set<std::string> retained_label_set;

    Enumerator(const EtaLabel& e, const BracketQuery& q, const StrataOptions& o)
        : eta(e), query(q), opt(o) {
        for (int h : e.retained)
            retained_label_set.insert(e.covering.source.half_edges[h].label);
        g = eta.genus;
        n = eta.n_points;
        total_degree = query.total_degree();
        edge_cap = total_degree + opt.edge_cap_bonus;
        const auto& cov = eta.covering;
        for (int th : cov.target.tails()) eta_target_tails.push_back(th);
        src_over.resize(eta_target_tails.size());
        for (size_t ti = 0; ti < eta_target_tails.size(); ++ti) {
            for (int h : cov.fiber_of_half_edge(eta_target_tails[ti])) {
                SrcTail st;
                st.label = cov.source.half_edges[h].label;
                st.m = cov.source.half_edges[h].mult;
                st.d = cov.local_degree(h);
                src_over[ti].push_back(st);
            }
        }
    }

    void run() {
        for (int E = 0; E <= edge_cap; ++E)
            for (const auto& tree : labeled_trees(E + 1)) {
                std::vector<int> deg(E + 1, 0);
                for (auto [a, b] : tree) {
                    deg[a] += 1;
                    deg[b] += 1;
                }
                distribute_tails(tree, deg);
            }
    }

    void distribute_tails(const std::vector<std::pair<int, int>>& tree,
                          const std::vector<int>& deg) {
        int V = static_cast<int>(deg.size());
        int T = static_cast<int>(eta_target_tails.size());
        std::vector<int> assign(T, -1);
        std::vector<int> count(V, 0);
        std::function<void(int)> rec = [&](int ti) {
            int deficit = 0;
            for (int v = 0; v < V; ++v) deficit += std::max(0, 3 - deg[v] - count[v]);
            if (deficit > T - ti) return;
            if (ti == T) {
                handle_target(TreeShape{V, tree, assign});
                return;
            }
            for (int v = 0; v < V; ++v) {
                assign[ti] = v;
                count[v] += 1;
                rec(ti + 1);
                count[v] -= 1;
            }
            assign[ti] = -1;
        };
        rec(0);
    }

    TwistedGraph build_target(const TreeShape& shape, const std::vector<int>& germ_mults,
                              std::vector<int>* tail_he_out) const {
        TwistedGraph t;
        for (int v = 0; v < shape.n_vertices; ++v) t.add_vertex(0, 0);
        const auto& cov = eta.covering;
        for (size_t ti = 0; ti < eta_target_tails.size(); ++ti) {
            int he = t.add_tail(shape.tail_vertex[ti],
                                cov.target.half_edges[eta_target_tails[ti]].mult,
                                cov.target.half_edges[eta_target_tails[ti]].label);
            if (tail_he_out) (*tail_he_out)[ti] = he;
        }
        for (size_t ei = 0; ei < shape.edges.size(); ++ei)
            t.add_edge(shape.edges[ei].first, shape.edges[ei].second,
                       germ_mults.empty() ? 1 : germ_mults[ei]);
        return t;
    }

    void handle_target(const TreeShape& shape) {
        // dedup isomorphic target shapes before the heavy source enumeration
        if (!seen_targets
                 .insert(tree_key(shape.edges, shape.tail_vertex, shape.n_vertices))
                 .second)
            return;

        std::vector<std::vector<int>> vertex_tails(shape.n_vertices);
        std::vector<std::vector<int>> vertex_edges(shape.n_vertices);
        for (int ti = 0; ti < static_cast<int>(shape.tail_vertex.size()); ++ti)
            vertex_tails[shape.tail_vertex[ti]].push_back(ti);
        for (int ei = 0; ei < static_cast<int>(shape.edges.size()); ++ei) {
            vertex_edges[shape.edges[ei].first].push_back(ei);
            vertex_edges[shape.edges[ei].second].push_back(ei);
        }

        std::vector<const std::vector<LocalData>*> choices(shape.n_vertices);
        for (int v = 0; v < shape.n_vertices; ++v) {
            choices[v] = &local_data_cached(vertex_tails[v],
                                            static_cast<int>(vertex_edges[v].size()));
            if (choices[v]->empty()) return;
        }

        // edges whose endpoints are both decided once vertex v is picked
        std::vector<std::vector<int>> ready_edges(shape.n_vertices);
        for (int ei = 0; ei < static_cast<int>(shape.edges.size()); ++ei)
            ready_edges[std::max(shape.edges[ei].first, shape.edges[ei].second)].push_back(ei);

        // germ degree multiset of one side of an edge
        auto side_degrees = [&](int ei, int v, const LocalData& ld) {
            std::vector<int> out;
            int pos = -1;
            for (size_t p = 0; p < vertex_edges[v].size(); ++p)
                if (vertex_edges[v][p] == ei) pos = static_cast<int>(p);
            for (const auto& slot : ld)
                for (int part : slot.germ_parts[pos]) out.push_back(part);
            std::sort(out.begin(), out.end());
            return out;
        };

        std::vector<const LocalData*> pick(shape.n_vertices);
        std::function<void(int, int)> rec = [&](int v, int genus_used) {
            if (v == shape.n_vertices) {
                glue(shape, vertex_tails, vertex_edges, pick);
                return;
            }
            for (const auto& ld : *choices[v]) {
                int gsum = genus_used;
                for (const auto& slot : ld) gsum += slot.genus;
                if (gsum > g) continue;
                bool compatible = true;
                for (int ei : ready_edges[v]) {
                    int other = shape.edges[ei].first == v ? shape.edges[ei].second
                                                           : shape.edges[ei].first;
                    if (other == v) continue;
                    if (side_degrees(ei, v, ld) != side_degrees(ei, other, *pick[other])) {
                        compatible = false;
                        break;
                    }
                }
                if (!compatible) continue;
                pick[v] = &ld;
                rec(v + 1, gsum);
            }
        };
        rec(0, 0);
    }

    // local covering data depend only on the tail set and the germ count
    mutable std::map<std::pair<std::vector<int>, int>, std::vector<LocalData>> local_cache;
    const std::vector<LocalData>& local_data_cached(const std::vector<int>& tail_idxs,
                                                    int n_germs) const {
        auto key = std::make_pair(tail_idxs, n_germs);
        auto it = local_cache.find(key);
        if (it != local_cache.end()) return it->second;
        std::vector<int> germ_slots(n_germs, 0);
        std::iota(germ_slots.begin(), germ_slots.end(), 0);
        return local_cache.emplace(key, local_data_for_vertex(tail_idxs, germ_slots))
            .first->second;
    }

    std::vector<LocalData> local_data_for_vertex(const std::vector<int>& tail_idxs,
                                                 const std::vector<int>& edge_idxs) const {
        std::vector<LocalData> out;
        int dtot = g + 1;
        for (int r = 1; r <= dtot; ++r) {
            std::vector<int> degs(r);
            std::function<void(int, int, int)> deg_rec = [&](int idx, int rest, int maxd) {
                if (idx == r) {
                    if (rest == 0) assign_tails(tail_idxs, edge_idxs, degs, out);
                    return;
                }
                for (int d = std::min(maxd, rest - (r - idx - 1)); d >= 1; --d) {
                    degs[idx] = d;
                    deg_rec(idx + 1, rest - d, d);
                }
            };
            deg_rec(0, dtot, dtot);
        }
        return out;
    }

    void assign_tails(const std::vector<int>& tail_idxs, const std::vector<int>& edge_idxs,
                      const std::vector<int>& degs, std::vector<LocalData>& out) const {
        int r = static_cast<int>(degs.size());
        LocalData data(r);
        for (int j = 0; j < r; ++j) {
            data[j].degree = degs[j];
            data[j].tails.assign(tail_idxs.size(), {});
            data[j].germ_parts.assign(edge_idxs.size(), {});
        }
        std::function<void(int)> tail_rec = [&](int tpos) {
            if (tpos == static_cast<int>(tail_idxs.size())) {
                assign_germs(tail_idxs, edge_idxs, data, out);
                return;
            }
            const auto& stails = src_over[tail_idxs[tpos]];
            std::vector<int> sums(r, 0);
            std::function<void(int)> one = [&](int si) {
                if (si == static_cast<int>(stails.size())) {
                    for (int j = 0; j < r; ++j)
                        if (sums[j] != degs[j]) return;
                    tail_rec(tpos + 1);
                    return;
                }
                for (int j = 0; j < r; ++j) {
                    if (sums[j] + stails[si].d > degs[j]) continue;
                    sums[j] += stails[si].d;
                    data[j].tails[tpos].push_back(si);
                    one(si + 1);
                    data[j].tails[tpos].pop_back();
                    sums[j] -= stails[si].d;
                }
            };
            one(0);
        };
        tail_rec(0);
    }

    void assign_germs(const std::vector<int>& tail_idxs, const std::vector<int>& edge_idxs,
                      LocalData& data, std::vector<LocalData>& out) const {
        int r = static_cast<int>(data.size());
        int ne = static_cast<int>(edge_idxs.size());
        if (ne == 0) {
            finalize_local(tail_idxs, data, out);
            return;
        }
        std::function<void(int, int)> rec = [&](int e, int j) {
            if (j == r) {
                if (e + 1 == ne)
                    finalize_local(tail_idxs, data, out);
                else
                    rec(e + 1, 0);
                return;
            }
            for (const auto& part : partitions_cached(data[j].degree)) {
                data[j].germ_parts[e] = part;
                rec(e, j + 1);
            }
            data[j].germ_parts[e].clear();
        };
        rec(0, 0);
    }

    void finalize_local(const std::vector<int>& tail_idxs, LocalData& data,
                        std::vector<LocalData>& out) const {
        for (auto& slot : data) {
            int ram = 0, half_edges = 0;
            for (size_t tpos = 0; tpos < slot.tails.size(); ++tpos)
                for (int si : slot.tails[tpos]) {
                    ram += src_over[tail_idxs[tpos]][si].d - 1;
                    half_edges += 1;
                }
            for (auto& part : slot.germ_parts)
                for (int p : part) {
                    ram += p - 1;
                    half_edges += 1;
                }
            // Riemann-Hurwitz over a genus 0 vertex: 2g' - 2 = -2d + ram
            int twice_genus = 2 - 2 * slot.degree + ram;
            if (twice_genus < 0 || twice_genus % 2) return;
            slot.genus = twice_genus / 2;
            if (2 * slot.genus - 2 + half_edges <= 0) return;
        }
        out.push_back(data);
    }

    // One glued source edge candidate: slots on both sides, local degree.
    struct MatchEdge {
        int slot_a, slot_b, degree;
    };
    struct LightEdge {
        int a, b, target_edge;
    };

    static int uf_find(std::vector<int>& p, int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }

    bool light_connected_with_genus(int n, const std::vector<int>& genus,
                                    const std::vector<LightEdge>& edges) const {
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        for (const auto& e : edges) parent[uf_find(parent, e.a)] = uf_find(parent, e.b);
        int root = uf_find(parent, 0);
        for (int v = 1; v < n; ++v)
            if (uf_find(parent, v) != root) return false;
        int gsum = 0;
        for (int v = 0; v < n; ++v) gsum += genus[v];
        return gsum + static_cast<int>(edges.size()) - n + 1 == g;
    }

    // A target edge can carry weight iff some source edge over it is a bridge
    // whose split-off side has genus 0 and exactly one retained tail.
    bool light_all_edges_weighted(int n, const std::vector<int>& genus,
                                  const std::vector<int>& retained,
                                  const std::vector<LightEdge>& edges, int ne) const {
        for (int ei = 0; ei < ne; ++ei) {
            bool ok = false;
            for (size_t k = 0; k < edges.size() && !ok; ++k) {
                if (edges[k].target_edge != ei) continue;
                std::vector<int> parent(n);
                std::iota(parent.begin(), parent.end(), 0);
                for (size_t j = 0; j < edges.size(); ++j)
                    if (j != k)
                        parent[uf_find(parent, edges[j].a)] = uf_find(parent, edges[j].b);
                int ra = uf_find(parent, edges[k].a), rb = uf_find(parent, edges[k].b);
                if (ra == rb) continue;  // not a bridge: both germs stay together
                for (int side_root : {ra, rb}) {
                    int gsum = 0, rsum = 0, vcount = 0, ecount = 0;
                    for (int v = 0; v < n; ++v)
                        if (uf_find(parent, v) == side_root) {
                            gsum += genus[v];
                            rsum += retained[v];
                            vcount += 1;
                        }
                    for (size_t j = 0; j < edges.size(); ++j)
                        if (j != k && uf_find(parent, edges[j].a) == side_root) ecount += 1;
                    if (gsum + ecount - vcount + 1 == 0 && rsum == 1) {
                        ok = true;
                        break;
                    }
                }
            }
            if (!ok) return false;
        }
        return true;
    }

    void glue(const TreeShape& shape, const std::vector<std::vector<int>>& vertex_tails,
              const std::vector<std::vector<int>>& vertex_edges,
              const std::vector<const LocalData*>& pick) {
        int ne = static_cast<int>(shape.edges.size());
        std::vector<std::array<std::vector<Inst>, 2>> inst(ne);
        for (int v = 0; v < shape.n_vertices; ++v) {
            const LocalData& ld = *pick[v];
            for (size_t pos = 0; pos < vertex_edges[v].size(); ++pos) {
                int ei = vertex_edges[v][pos];
                int side = shape.edges[ei].first == v ? 0 : 1;
                for (int j = 0; j < static_cast<int>(ld.size()); ++j)
                    for (int p : ld[j].germ_parts[pos]) inst[ei][side].push_back({j, p});
            }
        }
        for (int ei = 0; ei < ne; ++ei) {
            std::vector<int> da, db;
            for (auto& x : inst[ei][0]) da.push_back(x.degree);
            for (auto& x : inst[ei][1]) db.push_back(x.degree);
            std::sort(da.begin(), da.end());
            std::sort(db.begin(), db.end());
            if (da != db) return;
        }

        // Matchings only matter through the edge multiset (slot_a, slot_b,
        // degree): permuting identical germs is an isomorphism.  Enumerate
        // contingency tables per (edge, degree) instead of raw bijections.
        std::vector<std::vector<MatchEdge>> matching(ne);
        std::function<void(int)> edge_rec = [&](int ei) {
            if (ei == ne) {
                assemble(shape, vertex_tails, vertex_edges, pick, matching);
                return;
            }
            std::map<int, std::map<int, int>> rows, cols;  // degree -> slot -> count
            for (auto& x : inst[ei][0]) rows[x.degree][x.slot] += 1;
            for (auto& x : inst[ei][1]) cols[x.degree][x.slot] += 1;
            std::vector<int> degrees;
            for (auto& [d, _] : rows) degrees.push_back(d);

            matching[ei].clear();
            std::function<void(size_t)> deg_rec = [&](size_t di) {
                if (di == degrees.size()) {
                    edge_rec(ei + 1);
                    return;
                }
                int d = degrees[di];
                std::vector<std::pair<int, int>> ra(rows[d].begin(), rows[d].end());
                std::vector<std::pair<int, int>> cb(cols[d].begin(), cols[d].end());
                int nr = static_cast<int>(ra.size()), nc = static_cast<int>(cb.size());
                std::vector<int> row_left(nr), col_left(nc);
                for (int i = 0; i < nr; ++i) row_left[i] = ra[i].second;
                for (int j = 0; j < nc; ++j) col_left[j] = cb[j].second;
                size_t mark = matching[ei].size();
                std::function<void(int, int)> cell = [&](int i, int j) {
                    if (i == nr) {
                        for (int jj = 0; jj < nc; ++jj)
                            if (col_left[jj]) return;
                        deg_rec(di + 1);
                        return;
                    }
                    if (j == nc) {
                        if (row_left[i] == 0) cell(i + 1, 0);
                        return;
                    }
                    int maxn = std::min(row_left[i], col_left[j]);
                    for (int cnt = maxn; cnt >= 0; --cnt) {
                        row_left[i] -= cnt;
                        col_left[j] -= cnt;
                        size_t before = matching[ei].size();
                        for (int c = 0; c < cnt; ++c)
                            matching[ei].push_back({ra[i].first, cb[j].first, d});
                        cell(i, j + 1);
                        matching[ei].resize(before);
                        row_left[i] += cnt;
                        col_left[j] += cnt;
                    }
                };
                cell(0, 0);
                matching[ei].resize(mark);
            };
            deg_rec(0);
        };
        edge_rec(0);
    }

    void assemble(const TreeShape& shape, const std::vector<std::vector<int>>& vertex_tails,
                  const std::vector<std::vector<int>>& vertex_edges,
                  const std::vector<const LocalData*>& pick,
                  const std::vector<std::vector<MatchEdge>>& matching) {
        int ne = static_cast<int>(shape.edges.size());
        std::vector<int> germ_mults(ne, 1);
        for (int ei = 0; ei < ne; ++ei)
            for (const auto& me : matching[ei])
                germ_mults[ei] = std::lcm(germ_mults[ei], me.degree);

        // global slot indexing
        std::vector<std::vector<int>> global_slot(shape.n_vertices);
        int n_slots = 0;
        for (int v = 0; v < shape.n_vertices; ++v) {
            global_slot[v].resize(pick[v]->size());
            for (size_t j = 0; j < pick[v]->size(); ++j) global_slot[v][j] = n_slots++;
        }

        // cheap structural and weight screening on the slot graph
        std::vector<int> slot_genus(n_slots), slot_retained(n_slots, 0);
        for (int v = 0; v < shape.n_vertices; ++v) {
            const LocalData& ld = *pick[v];
            for (size_t j = 0; j < ld.size(); ++j) {
                slot_genus[global_slot[v][j]] = ld[j].genus;
                for (size_t tpos = 0; tpos < vertex_tails[v].size(); ++tpos)
                    for (int si : ld[j].tails[tpos])
                        if (retained_label_set.count(
                                src_over[vertex_tails[v][tpos]][si].label))
                            slot_retained[global_slot[v][j]] += 1;
            }
        }
        std::vector<LightEdge> light;
        for (int ei = 0; ei < ne; ++ei) {
            int va = shape.edges[ei].first, vb = shape.edges[ei].second;
            for (const auto& me : matching[ei])
                light.push_back({global_slot[va][me.slot_a], global_slot[vb][me.slot_b], ei});
        }

        if (!light_connected_with_genus(n_slots, slot_genus, light)) return;
        if (opt.prune_zero_weight && !light_all_edges_weighted(n_slots, slot_genus,
                                                               slot_retained, light, ne))
            return;

        // full assembly
        CoveringGraph rho;
        std::vector<int> tail_he(eta_target_tails.size(), -1);
        rho.target = build_target(shape, germ_mults, &tail_he);
        auto target_edges = rho.target.edges();  // in shape.edges order

        for (int v = 0; v < shape.n_vertices; ++v) {
            const LocalData& ld = *pick[v];
            for (int j = 0; j < static_cast<int>(ld.size()); ++j) {
                rho.source.add_vertex(ld[j].genus, 0);
                rho.vertex_map.push_back(v);
                rho.vertex_degree.push_back(ld[j].degree);
            }
        }
        for (int v = 0; v < shape.n_vertices; ++v) {
            const LocalData& ld = *pick[v];
            for (int j = 0; j < static_cast<int>(ld.size()); ++j)
                for (size_t tpos = 0; tpos < vertex_tails[v].size(); ++tpos) {
                    int ti = vertex_tails[v][tpos];
                    for (int si : ld[j].tails[tpos]) {
                        const SrcTail& st = src_over[ti][si];
                        rho.source.add_tail(global_slot[v][j], st.m, st.label);
                        rho.half_edge_map.push_back(tail_he[ti]);
                    }
                }
        }
        for (int ei = 0; ei < ne; ++ei) {
            int va = shape.edges[ei].first, vb = shape.edges[ei].second;
            int tg1 = target_edges[ei].first;  // germ at va
            int tg2 = target_edges[ei].second;
            for (const auto& me : matching[ei]) {
                int mult = germ_mults[ei] / me.degree;
                rho.source.add_edge(global_slot[va][me.slot_a], global_slot[vb][me.slot_b],
                                    mult);
                rho.half_edge_map.push_back(tg1);
                rho.half_edge_map.push_back(tg2);
            }
        }

        auto bad = validate(rho);
        if (!bad.empty())
            throw std::logic_error("contributing_terms: enumerated invalid covering: " +
                                   bad.front());

        auto marks = retained_marks(rho, eta);
        ContractionTerm term;
        term.edge_weights.resize(ne);
        bool zero_edge = false;
        for (int ei = 0; ei < ne; ++ei) {
            term.edge_weights[ei] = edge_weight(rho, ei, marks, n);
            if (term.edge_weights[ei].zero()) zero_edge = true;
        }
        if (zero_edge && opt.prune_zero_weight) return;

        std::string key = canonical_form(rho);
        if (results.count(key)) return;

        term.tail_weights.assign(rho.target.half_edges.size(), WeightForm{});
        for (int th : rho.target.tails()) term.tail_weights[th] = tail_weight(rho, th, marks, n);

        term.aut_count = automorphism_count(rho, FixSpec{.tails = true});
        Integer msq = 1;
        for (int ei = 0; ei < ne; ++ei) {
            Integer m = germ_mults[ei];
            msq *= m * m;
        }
        term.norm_value = Rational(term.aut_count) / Rational(msq);
        term.key = key;
        term.rho = std::move(rho);
        results.emplace(key, std::move(term));
    }
};

}  // namespace

std::vector<ContractionTerm> contributing_terms(const EtaLabel& eta, const BracketQuery& query,
                                                const StrataOptions& opt) {
    if (query.points() != eta.n_points)
        throw std::invalid_argument("contributing_terms: query size mismatch");
    if (!query.dimension_valid())
        throw std::invalid_argument("contributing_terms: dimension mismatch in query");

    // The term list depends on the query only through the edge cap, and the
    // cap is 3g-3+n for every dimension-valid query; queries at the same
    // (g, n, choice) share one enumeration.
    static std::map<std::tuple<int, int, std::vector<std::pair<int, int>>, bool, int>,
                    std::vector<ContractionTerm>>
        cache;
    static std::mutex cache_mtx;
    auto key = std::make_tuple(eta.genus, eta.n_points, eta.choice.pole_degrees,
                               opt.prune_zero_weight,
                               query.total_degree() + opt.edge_cap_bonus);
    {
        std::lock_guard<std::mutex> lock(cache_mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    Enumerator en(eta, query, opt);
    en.run();
    std::vector<ContractionTerm> out;
    out.reserve(en.results.size());
    for (auto& [_, term] : en.results) out.push_back(std::move(term));

    std::lock_guard<std::mutex> lock(cache_mtx);
    return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace gwsym
