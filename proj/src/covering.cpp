#include "gwsym/covering.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gwsym {

std::vector<int> CoveringGraph::fiber_of_half_edge(int target_he) const {
    std::vector<int> out;
    for (int h = 0; h < static_cast<int>(source.half_edges.size()); ++h)
        if (half_edge_map[h] == target_he) out.push_back(h);
    return out;
}

std::vector<int> CoveringGraph::fiber_of_vertex(int target_v) const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(source.vertices.size()); ++v)
        if (vertex_map[v] == target_v) out.push_back(v);
    return out;
}

int CoveringGraph::covering_degree() const {
    int d = 0;
    for (int v : fiber_of_vertex(0)) d += vertex_degree[v];
    return d;
}

std::vector<std::string> validate(const CoveringGraph& c, const Semigroup& a) {
    std::vector<std::string> bad = validate(c.target, a);
    for (auto& s : validate(c.source, a)) bad.push_back("source " + s);
    if (!bad.empty()) return bad;

    int nsv = static_cast<int>(c.source.vertices.size());
    int nsh = static_cast<int>(c.source.half_edges.size());
    if (static_cast<int>(c.vertex_map.size()) != nsv ||
        static_cast<int>(c.half_edge_map.size()) != nsh ||
        static_cast<int>(c.vertex_degree.size()) != nsv) {
        bad.push_back("covering: map sizes inconsistent");
        return bad;
    }
    for (int v = 0; v < nsv; ++v) {
        if (c.vertex_map[v] < 0 || c.vertex_map[v] >= static_cast<int>(c.target.vertices.size()))
            bad.push_back("covering: vertex map out of range");
        if (c.vertex_degree[v] < 1) bad.push_back("covering: vertex degree < 1");
    }
    if (!bad.empty()) return bad;

    for (int h = 0; h < nsh; ++h) {
        int th = c.half_edge_map[h];
        if (th < 0 || th >= static_cast<int>(c.target.half_edges.size())) {
            bad.push_back("covering: half-edge map out of range");
            return bad;
        }
        if (c.target.half_edges[th].vertex != c.vertex_map[c.source.half_edges[h].vertex])
            bad.push_back("covering: attachment does not commute at source half-edge " +
                          std::to_string(h));
        bool src_tail = c.source.is_tail(h);
        bool tgt_tail = c.target.is_tail(th);
        if (src_tail != tgt_tail)
            bad.push_back("covering: tails/edges not preserved at source half-edge " +
                          std::to_string(h));
        if (!src_tail && c.half_edge_map[c.source.half_edges[h].mate] !=
                             c.target.half_edges[th].mate)
            bad.push_back("covering: involution does not commute at source half-edge " +
                          std::to_string(h));
        if (c.target.half_edges[th].mult % c.source.half_edges[h].mult != 0)
            bad.push_back("covering: m(h') does not divide m(p(h')) at source half-edge " +
                          std::to_string(h));
    }
    if (!bad.empty()) return bad;

    // lcm rule per target half-edge
    int nth = static_cast<int>(c.target.half_edges.size());
    for (int th = 0; th < nth; ++th) {
        auto fib = c.fiber_of_half_edge(th);
        if (fib.empty()) {
            bad.push_back("covering: empty fiber over target half-edge " + std::to_string(th));
            continue;
        }
        long l = 1;
        for (int h : fib) l = std::lcm(l, static_cast<long>(c.local_degree(h)));
        if (l != c.target.half_edges[th].mult)
            bad.push_back("covering: lcm of local degrees != m at target half-edge " +
                          std::to_string(th));
    }

    // per (target half-edge at v, source vertex over v) sums and Riemann-Hurwitz
    for (int sv = 0; sv < nsv; ++sv) {
        int tv = c.vertex_map[sv];
        int dv = c.vertex_degree[sv];
        for (int th : c.target.half_edges_of(tv)) {
            int sum = 0;
            for (int h : c.source.half_edges_of(sv))
                if (c.half_edge_map[h] == th) sum += c.local_degree(h);
            if (sum != dv)
                bad.push_back("covering: degree sum over target half-edge " + std::to_string(th) +
                              " at source vertex " + std::to_string(sv) + " is " +
                              std::to_string(sum) + ", expected " + std::to_string(dv));
        }
        int rh = 2 * dv * (c.target.vertices[tv].genus - 1);
        for (int h : c.source.half_edges_of(sv)) rh += c.local_degree(h) - 1;
        if (2 * (c.source.vertices[sv].genus - 1) != rh)
            bad.push_back("covering: Riemann-Hurwitz fails at source vertex " +
                          std::to_string(sv));
    }

    // local mark sums
    for (int tv = 0; tv < static_cast<int>(c.target.vertices.size()); ++tv) {
        int sum = 0;
        for (int sv : c.fiber_of_vertex(tv)) sum = a.add(sum, c.source.vertices[sv].mark);
        if (sum != c.target.vertices[tv].mark)
            bad.push_back("covering: mark sum mismatch over target vertex " + std::to_string(tv));
    }

    // equal germ degrees across each source edge (forced by m constancy, but checked)
    for (auto [h1, h2] : c.source.edges())
        if (c.local_degree(h1) != c.local_degree(h2))
            bad.push_back("covering: unequal germ degrees on source edge");

    return bad;
}

LocalDatum local_datum(const CoveringGraph& c, int target_v) {
    LocalDatum out;
    out.slot_of_target_he.assign(c.target.half_edges.size(), -1);

    CoveringGraph& d = out.datum;
    int tv = d.target.add_vertex(c.target.vertices[target_v].genus,
                                 c.target.vertices[target_v].mark);
    for (int th : c.target.half_edges_of(target_v)) {
        std::string label = c.target.half_edges[th].label;
        if (label.empty()) label = "germ#" + std::to_string(th);
        int slot = d.target.add_tail(tv, c.target.half_edges[th].mult, label);
        out.slot_of_target_he[th] = slot;
    }

    std::map<int, int> sv_index;
    for (int sv : c.fiber_of_vertex(target_v)) {
        int nv = d.source.add_vertex(c.source.vertices[sv].genus, c.source.vertices[sv].mark);
        sv_index[sv] = nv;
        d.vertex_map.push_back(tv);
        d.vertex_degree.push_back(c.vertex_degree[sv]);
    }
    for (auto& [sv, nv] : sv_index) {
        for (int h : c.source.half_edges_of(sv)) {
            std::string label = c.source.half_edges[h].label;
            if (label.empty()) label = "germ#" + std::to_string(h);
            d.source.add_tail(nv, c.source.half_edges[h].mult, label);
            d.half_edge_map.push_back(out.slot_of_target_he[c.half_edge_map[h]]);
        }
    }
    return out;
}

}  // namespace gwsym
