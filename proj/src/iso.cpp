#include "gwsym/iso.hpp"

#include <algorithm>

namespace gwsym {

namespace {

struct Search {
    const TwistedGraph& g1;
    const TwistedGraph& g2;
    const IsoConstraints& cons;
    const IsoCallback& cb;
    std::vector<int> vmap, hmap;      // g1 -> g2, -1 unassigned
    std::vector<bool> vused, hused;   // g2 side
    long count = 0;

    bool vertex_compatible(int v1, int v2) const {
        if (vused[v2]) return false;
        if (!cons.forced_vertex.empty() && cons.forced_vertex[v1] >= 0 &&
            cons.forced_vertex[v1] != v2)
            return false;
        const auto& a = g1.vertices[v1];
        const auto& b = g2.vertices[v2];
        if (a.genus != b.genus || a.mark != b.mark) return false;
        if (g1.half_edges_of(v1).size() != g2.half_edges_of(v2).size()) return false;
        if (!cons.vertex_key1.empty() && cons.vertex_key1[v1] != cons.vertex_key2[v2])
            return false;
        return true;
    }

    bool half_edge_compatible(int h1, int h2) const {
        if (hused[h2]) return false;
        if (!cons.forced_half_edge.empty() && cons.forced_half_edge[h1] >= 0 &&
            cons.forced_half_edge[h1] != h2)
            return false;
        const auto& a = g1.half_edges[h1];
        const auto& b = g2.half_edges[h2];
        if (a.mult != b.mult) return false;
        if (g1.is_tail(h1) != g2.is_tail(h2)) return false;
        if (cons.match_labels && a.label != b.label) return false;
        if (!cons.half_edge_key1.empty() && cons.half_edge_key1[h1] != cons.half_edge_key2[h2])
            return false;
        if (vmap[a.vertex] != b.vertex) return false;
        // sigma consistency with what is already assigned
        if (!g1.is_tail(h1) && hmap[a.mate] >= 0 && hmap[a.mate] != b.mate) return false;
        return true;
    }

    void assign_half_edges(int h1) {
        int nh = static_cast<int>(g1.half_edges.size());
        while (h1 < nh && hmap[h1] >= 0) ++h1;
        if (h1 == nh) {
            ++count;
            if (cb) cb(vmap, hmap);
            return;
        }
        for (int h2 = 0; h2 < nh; ++h2) {
            if (!half_edge_compatible(h1, h2)) continue;
            hmap[h1] = h2;
            hused[h2] = true;
            int m1 = g1.half_edges[h1].mate, m2 = g2.half_edges[h2].mate;
            bool forced_mate = !g1.is_tail(h1) && hmap[m1] < 0;
            if (forced_mate && (hused[m2] || !half_edge_compatible(m1, m2))) {
                hmap[h1] = -1;
                hused[h2] = false;
                continue;
            }
            if (forced_mate) {
                hmap[m1] = m2;
                hused[m2] = true;
            }
            assign_half_edges(h1 + 1);
            if (forced_mate) {
                hmap[m1] = -1;
                hused[m2] = false;
            }
            hmap[h1] = -1;
            hused[h2] = false;
        }
    }

    void assign_vertices(int v1) {
        int nv = static_cast<int>(g1.vertices.size());
        if (v1 == nv) {
            assign_half_edges(0);
            return;
        }
        for (int v2 = 0; v2 < nv; ++v2) {
            if (!vertex_compatible(v1, v2)) continue;
            vmap[v1] = v2;
            vused[v2] = true;
            assign_vertices(v1 + 1);
            vmap[v1] = -1;
            vused[v2] = false;
        }
    }
};

std::vector<int> identity_on_tails(const TwistedGraph& g) {
    std::vector<int> forced(g.half_edges.size(), -1);
    for (int h : g.tails()) forced[h] = h;
    return forced;
}

// Pairs (target iso, source iso) commuting with the projections and
// preserving vertex degrees.
long covering_isos_impl(const CoveringGraph& c1, const CoveringGraph& c2,
                        IsoConstraints tcons, IsoConstraints scons_base) {
    if (c1.source.vertices.size() != c2.source.vertices.size()) return 0;
    if (c1.source.half_edges.size() != c2.source.half_edges.size()) return 0;

    long total = 0;
    enumerate_graph_isos(
        c1.target, c2.target, tcons,
        [&](const std::vector<int>& tvmap, const std::vector<int>& thmap) {
            IsoConstraints scons = scons_base;
            int nsv = static_cast<int>(c1.source.vertices.size());
            int nsh = static_cast<int>(c1.source.half_edges.size());
            int stride = static_cast<int>(c1.target.vertices.size()) + 1;
            scons.vertex_key1.resize(nsv);
            scons.vertex_key2.resize(nsv);
            for (int v = 0; v < nsv; ++v) {
                scons.vertex_key1[v] = tvmap[c1.vertex_map[v]] +
                                       stride * c1.vertex_degree[v];
                scons.vertex_key2[v] = c2.vertex_map[v] + stride * c2.vertex_degree[v];
            }
            scons.half_edge_key1.resize(nsh);
            scons.half_edge_key2.resize(nsh);
            for (int h = 0; h < nsh; ++h) {
                scons.half_edge_key1[h] = thmap[c1.half_edge_map[h]];
                scons.half_edge_key2[h] = c2.half_edge_map[h];
            }
            total += enumerate_graph_isos(c1.source, c2.source, scons);
        });
    return total;
}

}  // namespace

long enumerate_graph_isos(const TwistedGraph& g1, const TwistedGraph& g2,
                          const IsoConstraints& cons, const IsoCallback& cb) {
    if (g1.vertices.size() != g2.vertices.size()) return 0;
    if (g1.half_edges.size() != g2.half_edges.size()) return 0;
    Search s{g1, g2, cons, cb,
             std::vector<int>(g1.vertices.size(), -1),
             std::vector<int>(g1.half_edges.size(), -1),
             std::vector<bool>(g2.vertices.size(), false),
             std::vector<bool>(g2.half_edges.size(), false)};
    s.assign_vertices(0);
    return s.count;
}

long automorphism_count(const TwistedGraph& g, const FixSpec& spec) {
    IsoConstraints cons;
    if (spec.tails) cons.forced_half_edge = identity_on_tails(g);
    return enumerate_graph_isos(g, g, cons);
}

long enumerate_covering_isos(const CoveringGraph& c1, const CoveringGraph& c2,
                             bool match_labels,
                             const std::vector<int>& forced_target_vertex,
                             const std::vector<int>& forced_source_vertex) {
    IsoConstraints tcons, scons;
    tcons.match_labels = scons.match_labels = match_labels;
    tcons.forced_vertex = forced_target_vertex;
    scons.forced_vertex = forced_source_vertex;
    return covering_isos_impl(c1, c2, tcons, scons);
}

long automorphism_count(const CoveringGraph& c, const FixSpec& spec) {
    IsoConstraints tcons, scons;
    if (spec.tails) {
        tcons.forced_half_edge = identity_on_tails(c.target);
        scons.forced_half_edge = identity_on_tails(c.source);
    }
    if (spec.target) {
        tcons.forced_vertex.assign(c.target.vertices.size(), -1);
        tcons.forced_half_edge.assign(c.target.half_edges.size(), -1);
        for (int v = 0; v < static_cast<int>(c.target.vertices.size()); ++v)
            tcons.forced_vertex[v] = v;
        for (int h = 0; h < static_cast<int>(c.target.half_edges.size()); ++h)
            tcons.forced_half_edge[h] = h;
    }
    if (spec.source_vertices) {
        scons.forced_vertex.assign(c.source.vertices.size(), -1);
        for (int v = 0; v < static_cast<int>(c.source.vertices.size()); ++v)
            scons.forced_vertex[v] = v;
    }
    return covering_isos_impl(c, c, tcons, scons);
}

}  // namespace gwsym
