#include "gwsym/oracle.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gwsym {

namespace {

Integer double_factorial_odd(int k) {  // (2k+1)!!, with (-1)!! = 1
    Integer s = 1;
    for (int i = 1; i <= 2 * k + 1; i += 2) s *= i;
    return s;
}

bool dimension_valid(int g, const std::vector<int>& ks) {
    if (g < 0 || ks.empty()) return false;
    int total = 0;
    for (int k : ks) {
        if (k < 0) return false;
        total += k;
    }
    return total == 3 * g - 3 + static_cast<int>(ks.size());
}

}  // namespace

Rational BracketTable::value(int genus, std::vector<int> ks) {
    std::sort(ks.rbegin(), ks.rend());
    if (!dimension_valid(genus, ks)) return 0;
    int n = static_cast<int>(ks.size());

    if (genus == 0) {
        if (n < 3) return 0;
        Rational r(factorial(n - 3));
        for (int k : ks) r /= Rational(factorial(k));
        return r;
    }
    if (genus == 1 && n == 1 && ks[0] == 1) return Rational(1, 24);

    auto key = std::make_pair(genus, ks);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    // KdV/Virasoro step on the largest index (>= 1 whenever g >= 1 and the
    // dimension constraint holds)
    int d1 = ks[0];
    std::vector<int> rest(ks.begin() + 1, ks.end());
    Rational rhs = 0;

    for (int j = 0; j < n - 1; ++j) {
        std::vector<int> next = rest;
        next[j] = d1 + rest[j] - 1;
        Rational coef(double_factorial_odd(d1 + rest[j] - 1),
                      double_factorial_odd(rest[j] - 1));
        rhs += coef * value(genus, next);
    }
    for (int a = 0; a + 2 <= d1; ++a) {
        int b = d1 - 2 - a;
        Rational coef(double_factorial_odd(a) * double_factorial_odd(b));
        // non-separating degeneration
        std::vector<int> next = rest;
        next.push_back(a);
        next.push_back(b);
        rhs += coef / 2 * value(genus - 1, next);
        // separating degenerations over ordered (g', subset)
        int m = n - 1;
        for (int g1 = 0; g1 <= genus; ++g1)
            for (int mask = 0; mask < (1 << m); ++mask) {
                std::vector<int> left{a}, right{b};
                for (int i = 0; i < m; ++i)
                    (mask & (1 << i) ? left : right).push_back(rest[i]);
                Rational lv = value(g1, left);
                if (lv == 0) continue;
                Rational rv = value(genus - g1, right);
                if (rv == 0) continue;
                rhs += coef / 2 * lv * rv;
            }
    }
    Rational result = rhs / Rational(double_factorial_odd(d1));
    memo_.emplace(key, result);
    return result;
}

namespace {

BracketTable& shared_table() {
    static BracketTable t;
    return t;
}
std::mutex& table_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

Rational dvv_bracket(const BracketQuery& query) {
    if (!query.dimension_valid())
        throw std::invalid_argument("dvv_bracket: dimension mismatch (sum k_i = 3g-3+n)");
    std::lock_guard<std::mutex> lock(table_mutex());
    return shared_table().value(query.genus, query.exponents);
}

std::vector<std::string> string_dilaton_check(BracketTable& table) {
    std::vector<std::string> violations;
    auto entries = table.entries();  // copy; value() below mutates the memo
    for (const auto& [key, val] : entries) {
        auto [g, ks] = key;
        int n = static_cast<int>(ks.size());
        if (n < 2) continue;
        // string: remove a tau_0, lower each remaining index by one in turn
        if (std::find(ks.begin(), ks.end(), 0) != ks.end()) {
            std::vector<int> rest = ks;
            rest.erase(std::find(rest.begin(), rest.end(), 0));
            Rational sum = 0;
            for (size_t j = 0; j < rest.size(); ++j) {
                if (rest[j] == 0) continue;
                std::vector<int> lowered = rest;
                lowered[j] -= 1;
                sum += table.value(g, lowered);
            }
            if (sum != val) {
                std::ostringstream os;
                os << "string identity fails at g=" << g << " n=" << n;
                violations.push_back(os.str());
            }
        }
        // dilaton: remove a tau_1
        if (std::find(ks.begin(), ks.end(), 1) != ks.end()) {
            std::vector<int> rest = ks;
            rest.erase(std::find(rest.begin(), rest.end(), 1));
            if (!rest.empty()) {
                Rational expected =
                    Rational(2 * g - 2 + static_cast<int>(rest.size())) * table.value(g, rest);
                if (expected != val) {
                    std::ostringstream os;
                    os << "dilaton identity fails at g=" << g << " n=" << n;
                    violations.push_back(os.str());
                }
            }
        }
    }
    return violations;
}

}  // namespace gwsym
