#pragma once

#include "gwsym/eta.hpp"
#include "gwsym/integrator.hpp"
#include "gwsym/rational.hpp"
#include "gwsym/strata.hpp"

#include <nlohmann/json.hpp>

namespace gwsym {

using nlohmann::json;

// {"num": "<decimal>", "den": "<decimal>"}
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const TwistedGraph& g);
json to_json(const CoveringGraph& c);
json to_json(const EtaLabel& eta);
json to_json(const ContractionTerm& term);
json to_json(const TermAudit& audit);

// Full machine-readable bracket report (schema "1").
json bracket_report(const BracketQuery& query, const BracketResult& result, bool audit);
// Term list for the strata subcommand (schema "1").
json strata_report(const EtaLabel& eta, const BracketQuery& query,
                   const std::vector<ContractionTerm>& terms);

}  // namespace gwsym
