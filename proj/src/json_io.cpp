#include "gwsym/json_io.hpp"

#include <stdexcept>

namespace gwsym {

json to_json(const Rational& r) {
    return json{{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

Rational rational_from_json(const json& j) {
    Integer num(j.at("num").get<std::string>());
    Integer den(j.at("den").get<std::string>());
    if (den <= 0) throw std::invalid_argument("rational: denominator must be positive");
    return Rational(num, den);
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

json to_json(const TwistedGraph& g) {
    json vertices = json::array();
    for (const auto& v : g.vertices) vertices.push_back({{"genus", v.genus}, {"mark", v.mark}});
    json half_edges = json::array();
    for (const auto& h : g.half_edges) {
        json he{{"vertex", h.vertex}, {"mate", h.mate}, {"mult", h.mult}};
        if (!h.label.empty()) he["label"] = h.label;
        half_edges.push_back(he);
    }
    return json{{"vertices", vertices}, {"half_edges", half_edges}};
}

json to_json(const CoveringGraph& c) {
    return json{{"target", to_json(c.target)},
                {"source", to_json(c.source)},
                {"vertex_map", c.vertex_map},
                {"half_edge_map", c.half_edge_map},
                {"vertex_degree", c.vertex_degree}};
}

json to_json(const EtaLabel& eta) {
    json poles = json::array();
    for (auto [mark, deg] : eta.choice.pole_degrees)
        poles.push_back({{"mark", mark}, {"degree", deg}});
    return json{{"schema", "1"},
                {"genus", eta.genus},
                {"points", eta.n_points},
                {"pole_set", poles},
                {"branch_count", eta.branch_count},
                {"m_infinity", eta.m_infinity},
                {"covering", to_json(eta.covering)},
                {"retained", eta.retained},
                {"forget", eta.forget}};
}

namespace {

json weight_to_json(const WeightForm& w) {
    json coef = json::array();
    for (long c : w.coef) coef.push_back(c);
    return coef;
}

}  // namespace

json to_json(const ContractionTerm& term) {
    json tails = json::object();
    for (int th : term.rho.target.tails()) {
        const auto& w = term.tail_weights[th];
        if (!w.coef.empty() && !w.zero())
            tails[term.rho.target.half_edges[th].label] = weight_to_json(w);
    }
    json edges = json::array();
    for (const auto& w : term.edge_weights) edges.push_back(weight_to_json(w));
    return json{{"key", term.key},
                {"aut", term.aut_count},
                {"norm", to_json(term.norm_value)},
                {"rho", to_json(term.rho)},
                {"tail_weights", tails},
                {"edge_weights", edges}};
}

json to_json(const TermAudit& audit) {
    json chi = json::array();
    for (const auto& c : audit.chi) chi.push_back(c.str());
    return json{{"key", audit.key},
                {"aut", audit.aut_count},
                {"norm", to_json(audit.norm_value)},
                {"weight", to_json(audit.weight)},
                {"chi", chi},
                {"contribution", to_json(audit.contribution)}};
}

json bracket_report(const BracketQuery& query, const BracketResult& result, bool audit) {
    json out{{"schema", "1"},
             {"genus", query.genus},
             {"powers", query.exponents},
             {"value", to_json(result.value)},
             {"value_string", to_string(result.value)},
             {"eta_degree", to_json(result.eta_deg)}};
    if (audit) {
        json terms = json::array();
        for (const auto& t : result.terms) terms.push_back(to_json(t));
        out["terms"] = terms;
    }
    return out;
}

json strata_report(const EtaLabel& eta, const BracketQuery& query,
                   const std::vector<ContractionTerm>& terms) {
    json arr = json::array();
    for (const auto& t : terms) arr.push_back(to_json(t));
    return json{{"schema", "1"},
                {"genus", query.genus},
                {"powers", query.exponents},
                {"eta", to_json(eta)},
                {"terms", arr}};
}

}  // namespace gwsym
