#pragma once

#include "gwsym/query.hpp"
#include "gwsym/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace gwsym {

// Independent verification path: the KdV/Virasoro recursion for descendant
// integrals, with base cases <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24.  Shares
// nothing with the covering pipeline except the Rational type.
class BracketTable {
public:
    // 0 for dimension-invalid or unstable queries; exact value otherwise.
    Rational value(int genus, std::vector<int> exponents);

    const std::map<std::pair<int, std::vector<int>>, Rational>& entries() const {
        return memo_;
    }

private:
    std::map<std::pair<int, std::vector<int>>, Rational> memo_;
};

// Errors on dimension-invalid queries; memoized behind a process-wide table.
Rational dvv_bracket(const BracketQuery& query);

// String and dilaton identities over every entry of the table whose tau_0 /
// tau_1 insertion is removable.  Violations name the failing entry.
std::vector<std::string> string_dilaton_check(BracketTable& table);

}  // namespace gwsym
