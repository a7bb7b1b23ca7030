#pragma once

#include <numeric>
#include <vector>

namespace gwsym {

// A descendant bracket <tau_{k_1} ... tau_{k_n}>_g.  Nonzero only in the top
// dimension sum k_i = 3g - 3 + n.
struct BracketQuery {
    int genus = 0;
    std::vector<int> exponents;

    int points() const { return static_cast<int>(exponents.size()); }
    int total_degree() const {
        return std::accumulate(exponents.begin(), exponents.end(), 0);
    }
    bool dimension_valid() const {
        if (genus < 0 || exponents.empty()) return false;
        for (int k : exponents)
            if (k < 0) return false;
        return total_degree() == 3 * genus - 3 + points();
    }
};

}  // namespace gwsym
