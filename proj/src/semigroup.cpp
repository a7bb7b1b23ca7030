#include "gwsym/semigroup.hpp"

namespace gwsym {

const TrivialSemigroup& trivial_semigroup() {
    static const TrivialSemigroup s;
    return s;
}

const Bool01Semigroup& bool01_semigroup() {
    static const Bool01Semigroup s;
    return s;
}

std::vector<std::pair<int, int>> decompositions(const Semigroup& s, int a) {
    std::vector<std::pair<int, int>> out;
    for (int a1 : s.elements())
        for (int a2 : s.elements())
            if (s.add(a1, a2) == a) out.emplace_back(a1, a2);
    return out;
}

}  // namespace gwsym
