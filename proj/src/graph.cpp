#include "gwsym/graph.hpp"

#include <algorithm>
#include <set>

namespace gwsym {

std::vector<int> TwistedGraph::tails() const {
    std::vector<int> out;
    for (int h = 0; h < static_cast<int>(half_edges.size()); ++h)
        if (is_tail(h)) out.push_back(h);
    return out;
}

std::vector<std::pair<int, int>> TwistedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int h = 0; h < static_cast<int>(half_edges.size()); ++h) {
        int m = half_edges[h].mate;
        if (m > h) out.emplace_back(h, m);
    }
    return out;
}

std::vector<int> TwistedGraph::half_edges_of(int v) const {
    std::vector<int> out;
    for (int h = 0; h < static_cast<int>(half_edges.size()); ++h)
        if (half_edges[h].vertex == v) out.push_back(h);
    return out;
}

int TwistedGraph::tail_by_label(const std::string& label) const {
    for (int h = 0; h < static_cast<int>(half_edges.size()); ++h)
        if (is_tail(h) && half_edges[h].label == label) return h;
    return -1;
}

namespace {

int component_count(const TwistedGraph& g, std::vector<int>* comp_out = nullptr) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<int> comp(n, -1);
    int count = 0;
    for (int start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        std::vector<int> stack{start};
        comp[start] = count;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int h : g.half_edges_of(v)) {
                if (g.is_tail(h)) continue;
                int w = g.half_edges[g.half_edges[h].mate].vertex;
                if (comp[w] < 0) {
                    comp[w] = count;
                    stack.push_back(w);
                }
            }
        }
        ++count;
    }
    if (comp_out) *comp_out = comp;
    return count;
}

}  // namespace

bool TwistedGraph::connected() const {
    if (vertices.empty()) return false;
    return component_count(*this) == 1;
}

int TwistedGraph::graph_genus() const {
    int gsum = 0;
    for (const auto& v : vertices) gsum += v.genus;
    int e = static_cast<int>(edges().size());
    int n = static_cast<int>(vertices.size());
    return gsum + e - n + component_count(*this);
}

std::vector<std::string> validate(const TwistedGraph& g, const Semigroup& a) {
    std::vector<std::string> bad;
    int nh = static_cast<int>(g.half_edges.size());
    int nv = static_cast<int>(g.vertices.size());
    for (int h = 0; h < nh; ++h) {
        const auto& he = g.half_edges[h];
        if (he.vertex < 0 || he.vertex >= nv) {
            bad.push_back("attachment: half-edge " + std::to_string(h) + " out of range");
            return bad;
        }
        if (he.mate < 0 || he.mate >= nh || g.half_edges[he.mate].mate != h)
            bad.push_back("involution: sigma^2 != id at half-edge " + std::to_string(h));
        if (he.mult < 1)
            bad.push_back("multiplicity: m < 1 at half-edge " + std::to_string(h));
        if (he.mate != h && g.half_edges[he.mate].mult != he.mult)
            bad.push_back("multiplicity: m not constant on edge orbit at half-edge " +
                          std::to_string(h));
        if (he.mate != h && !he.label.empty())
            bad.push_back("labels: edge germ " + std::to_string(h) + " carries a tail label");
    }
    std::set<std::string> seen;
    for (int h : g.tails()) {
        const auto& lbl = g.half_edges[h].label;
        if (lbl.empty()) continue;
        if (!seen.insert(lbl).second) bad.push_back("labels: duplicate tail label '" + lbl + "'");
    }
    for (int v = 0; v < nv; ++v) {
        const auto& vd = g.vertices[v];
        if (vd.genus < 0) bad.push_back("genus: negative at vertex " + std::to_string(v));
        if (!a.is_element(vd.mark))
            bad.push_back("mark: not a semigroup element at vertex " + std::to_string(v));
        int deg = static_cast<int>(g.half_edges_of(v).size());
        if (vd.mark == 0 && 2 * vd.genus - 2 + deg <= 0)
            bad.push_back("stability: 2g-2+#T <= 0 at vertex " + std::to_string(v));
    }
    return bad;
}

}  // namespace gwsym
