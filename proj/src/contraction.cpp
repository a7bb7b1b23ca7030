#include "gwsym/contraction.hpp"

#include "gwsym/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gwsym {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<int> Contraction::contracted_edge_ids() const {
    std::vector<int> out;
    auto es = source.edges();
    for (int i = 0; i < static_cast<int>(es.size()); ++i)
        if (half_edge_image[es[i].first] < 0) out.push_back(i);
    return out;
}

Contraction contract(const TwistedGraph& g, const std::vector<int>& edge_ids,
                     const Semigroup& a) {
    auto es = g.edges();
    int nv = static_cast<int>(g.vertices.size());
    int nh = static_cast<int>(g.half_edges.size());

    std::vector<bool> gone(nh, false);
    UnionFind uf(nv);
    for (int id : edge_ids) {
        auto [h1, h2] = es.at(id);
        gone[h1] = gone[h2] = true;
        uf.unite(g.half_edges[h1].vertex, g.half_edges[h2].vertex);
    }

    Contraction f;
    f.source = g;
    f.vertex_image.assign(nv, -1);
    f.half_edge_image.assign(nh, -1);

    // new vertices in order of first occurrence of each component
    std::map<int, int> comp_to_new;
    std::vector<int> comp_genus_sum, comp_vertex_count, comp_edge_count, comp_mark;
    for (int v = 0; v < nv; ++v) {
        int root = uf.find(v);
        auto it = comp_to_new.find(root);
        if (it == comp_to_new.end()) {
            it = comp_to_new.emplace(root, static_cast<int>(comp_genus_sum.size())).first;
            comp_genus_sum.push_back(0);
            comp_vertex_count.push_back(0);
            comp_edge_count.push_back(0);
            comp_mark.push_back(0);
        }
        int c = it->second;
        f.vertex_image[v] = c;
        comp_genus_sum[c] += g.vertices[v].genus;
        comp_vertex_count[c] += 1;
        comp_mark[c] = a.add(comp_mark[c], g.vertices[v].mark);
    }
    for (int id : edge_ids)
        comp_edge_count[f.vertex_image[g.half_edges[es[id].first].vertex]] += 1;

    for (int c = 0; c < static_cast<int>(comp_genus_sum.size()); ++c)
        f.target.add_vertex(comp_genus_sum[c] + comp_edge_count[c] - comp_vertex_count[c] + 1,
                            comp_mark[c]);

    // surviving half-edges keep their order; mates patched afterwards
    std::vector<int> new_index(nh, -1);
    for (int h = 0; h < nh; ++h) {
        if (gone[h]) continue;
        const auto& he = g.half_edges[h];
        new_index[h] = static_cast<int>(f.target.half_edges.size());
        f.target.half_edges.push_back({f.vertex_image[he.vertex], -1, he.mult, he.label});
    }
    for (int h = 0; h < nh; ++h) {
        if (gone[h]) continue;
        f.half_edge_image[h] = new_index[h];
        f.target.half_edges[new_index[h]].mate = new_index[g.half_edges[h].mate];
    }
    return f;
}

std::vector<std::string> validate(const Contraction& f, const Semigroup& a) {
    std::vector<std::string> bad;
    const auto& g1 = f.source;
    const auto& g2 = f.target;
    int nh1 = static_cast<int>(g1.half_edges.size());

    std::vector<bool> vhit(g2.vertices.size(), false), hhit(g2.half_edges.size(), false);
    for (int v = 0; v < static_cast<int>(g1.vertices.size()); ++v) {
        int w = f.vertex_image[v];
        if (w < 0 || w >= static_cast<int>(g2.vertices.size()))
            return {"contraction: vertex image out of range"};
        vhit[w] = true;
    }
    for (int h = 0; h < nh1; ++h) {
        int t = f.half_edge_image[h];
        if (t < 0) {
            if (g1.is_tail(h)) bad.push_back("contraction: a tail is contracted");
            continue;
        }
        hhit[t] = true;
        if (g2.half_edges[t].vertex != f.vertex_image[g1.half_edges[h].vertex])
            bad.push_back("contraction: attachment does not commute");
        if (g1.is_tail(h) != g2.is_tail(t))
            bad.push_back("contraction: tail status not preserved");
        if (!g1.is_tail(h)) {
            int mate_img = f.half_edge_image[g1.half_edges[h].mate];
            if (mate_img != g2.half_edges[t].mate)
                bad.push_back("contraction: involution does not commute");
        }
        if (g1.half_edges[h].mult != g2.half_edges[t].mult)
            bad.push_back("contraction: multiplicity not preserved");
        if (g1.half_edges[h].label != g2.half_edges[t].label)
            bad.push_back("contraction: label not preserved");
    }
    for (bool b : vhit)
        if (!b) bad.push_back("contraction: not surjective on vertices");
    for (bool b : hhit)
        if (!b) bad.push_back("contraction: not surjective on half-edges");

    // bijectivity over surviving half-edges
    std::map<int, int> preimage_count;
    for (int h = 0; h < nh1; ++h)
        if (f.half_edge_image[h] >= 0) preimage_count[f.half_edge_image[h]]++;
    for (auto& [t, c] : preimage_count)
        if (c != 1) bad.push_back("contraction: not injective over surviving half-edges");

    // per-target-vertex: preimage connected with matching arithmetic genus and mark
    for (int w = 0; w < static_cast<int>(g2.vertices.size()); ++w) {
        TwistedGraph piece;
        std::map<int, int> vmap;
        for (int v = 0; v < static_cast<int>(g1.vertices.size()); ++v)
            if (f.vertex_image[v] == w)
                vmap[v] = piece.add_vertex(g1.vertices[v].genus, g1.vertices[v].mark);
        int mark = 0;
        for (auto& [v, _] : vmap) mark = a.add(mark, g1.vertices[v].mark);
        for (auto [h1, h2] : g1.edges()) {
            if (f.half_edge_image[h1] >= 0) continue;
            int va = g1.half_edges[h1].vertex, vb = g1.half_edges[h2].vertex;
            if (vmap.count(va) && vmap.count(vb))
                piece.add_edge(vmap[va], vmap[vb], g1.half_edges[h1].mult);
            else if (vmap.count(va) || vmap.count(vb))
                bad.push_back("contraction: contracted edge crosses fibers");
        }
        if (piece.vertices.empty() || !piece.connected())
            bad.push_back("contraction: fiber over vertex " + std::to_string(w) +
                          " not connected");
        else if (piece.graph_genus() != g2.vertices[w].genus)
            bad.push_back("contraction: genus mismatch over vertex " + std::to_string(w));
        if (mark != g2.vertices[w].mark)
            bad.push_back("contraction: mark mismatch over vertex " + std::to_string(w));
    }
    return bad;
}

CoveringContraction induced_covering_contraction(const CoveringGraph& rho,
                                                 const std::vector<int>& target_edge_ids,
                                                 const Semigroup& a) {
    CoveringContraction out;
    out.from = rho;
    out.on_target = contract(rho.target, target_edge_ids, a);

    auto tes = rho.target.edges();
    std::vector<bool> tgerm_gone(rho.target.half_edges.size(), false);
    for (int id : target_edge_ids) {
        tgerm_gone[tes.at(id).first] = true;
        tgerm_gone[tes.at(id).second] = true;
    }
    auto ses = rho.source.edges();
    std::vector<int> source_edge_ids;
    for (int i = 0; i < static_cast<int>(ses.size()); ++i)
        if (tgerm_gone[rho.half_edge_map[ses[i].first]]) source_edge_ids.push_back(i);
    out.on_source = contract(rho.source, source_edge_ids, a);

    CoveringGraph& to = out.to;
    to.target = out.on_target.target;
    to.source = out.on_source.target;
    to.vertex_map.assign(to.source.vertices.size(), -1);
    to.vertex_degree.assign(to.source.vertices.size(), 0);
    to.half_edge_map.assign(to.source.half_edges.size(), -1);

    // degree of a merged source vertex: total over any one original target
    // vertex in its image fiber (well-defined for valid coverings)
    std::vector<int> witness(to.source.vertices.size(), -1);
    for (int v = 0; v < static_cast<int>(rho.source.vertices.size()); ++v) {
        int u = out.on_source.vertex_image[v];
        to.vertex_map[u] = out.on_target.vertex_image[rho.vertex_map[v]];
        if (witness[u] < 0) witness[u] = rho.vertex_map[v];
    }
    for (int v = 0; v < static_cast<int>(rho.source.vertices.size()); ++v) {
        int u = out.on_source.vertex_image[v];
        if (rho.vertex_map[v] == witness[u]) to.vertex_degree[u] += rho.vertex_degree[v];
    }
    for (int h = 0; h < static_cast<int>(rho.source.half_edges.size()); ++h) {
        int nh = out.on_source.half_edge_image[h];
        if (nh >= 0)
            to.half_edge_map[nh] = out.on_target.half_edge_image[rho.half_edge_map[h]];
    }
    return out;
}

long automorphism_count(const Contraction& f) {
    IsoConstraints cons;
    cons.vertex_key1 = cons.vertex_key2 = f.vertex_image;
    int nh = static_cast<int>(f.source.half_edges.size());
    cons.half_edge_key1.resize(nh);
    for (int h = 0; h < nh; ++h) cons.half_edge_key1[h] = f.half_edge_image[h] + 1;
    cons.half_edge_key2 = cons.half_edge_key1;
    return enumerate_graph_isos(f.source, f.source, cons);
}

long automorphism_count(const CoveringContraction& f) {
    const CoveringGraph& c = f.from;
    IsoConstraints tcons;
    tcons.vertex_key1 = tcons.vertex_key2 = f.on_target.vertex_image;
    int nth = static_cast<int>(c.target.half_edges.size());
    tcons.half_edge_key1.resize(nth);
    for (int h = 0; h < nth; ++h) tcons.half_edge_key1[h] = f.on_target.half_edge_image[h] + 1;
    tcons.half_edge_key2 = tcons.half_edge_key1;

    long total = 0;
    enumerate_graph_isos(
        c.target, c.target, tcons,
        [&](const std::vector<int>& tvmap, const std::vector<int>& thmap) {
            IsoConstraints scons;
            int nsv = static_cast<int>(c.source.vertices.size());
            int nsh = static_cast<int>(c.source.half_edges.size());
            int vstride = static_cast<int>(c.target.vertices.size()) + 1;
            int vstride2 = vstride * (c.covering_degree() + 2);
            scons.vertex_key1.resize(nsv);
            scons.vertex_key2.resize(nsv);
            for (int v = 0; v < nsv; ++v) {
                scons.vertex_key1[v] = tvmap[c.vertex_map[v]] + vstride * c.vertex_degree[v] +
                                       vstride2 * (f.on_source.vertex_image[v] + 1);
                scons.vertex_key2[v] = c.vertex_map[v] + vstride * c.vertex_degree[v] +
                                       vstride2 * (f.on_source.vertex_image[v] + 1);
            }
            int hstride = nth + 1;
            scons.half_edge_key1.resize(nsh);
            scons.half_edge_key2.resize(nsh);
            for (int h = 0; h < nsh; ++h) {
                scons.half_edge_key1[h] = thmap[c.half_edge_map[h]] +
                                          hstride * (f.on_source.half_edge_image[h] + 1);
                scons.half_edge_key2[h] = c.half_edge_map[h] +
                                          hstride * (f.on_source.half_edge_image[h] + 1);
            }
            total += enumerate_graph_isos(c.source, c.source, scons);
        });
    return total;
}

Rational norm(const Contraction& f, GraphCategory cat) {
    Rational aut(automorphism_count(f));
    if (cat == GraphCategory::Untwisted) return aut;
    Integer mprod = 1;
    auto es = f.source.edges();
    for (int id : f.contracted_edge_ids()) mprod *= f.source.half_edges[es[id].first].mult;
    return aut / Rational(mprod);
}

Rational norm(const CoveringContraction& f) {
    Rational aut(automorphism_count(f));
    Integer mprod = 1;
    auto tes = f.from.target.edges();
    for (int id : f.on_target.contracted_edge_ids()) {
        Integer m = f.from.target.half_edges[tes[id].first].mult;
        mprod *= m * m;
    }
    return aut / Rational(mprod);
}

}  // namespace gwsym
