#pragma once

#include "gwsym/covering.hpp"
#include "gwsym/graph.hpp"

#include <string>

namespace gwsym {

// Canonical key: equal iff the inputs are isomorphic respecting genera, marks,
// multiplicities, degrees and the identities (labels) of named tails.
// Lowercase hex of a canonical serialization; deterministic across runs.
std::string canonical_form(const TwistedGraph& g);
std::string canonical_form(const CoveringGraph& c);

}  // namespace gwsym
