#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gwsym {

// Marking semigroup A for graph vertices.  Required axioms:
//   - commutative with unit 0,
//   - indecomposable zero: a + a' = 0 implies a = a' = 0,
//   - finite decomposition: {(a1,a2) : a1 + a2 = a} is finite.
// Elements are encoded as small non-negative integers.
class Semigroup {
public:
    virtual ~Semigroup() = default;
    virtual std::string name() const = 0;
    virtual int add(int a, int b) const = 0;
    virtual bool is_element(int a) const = 0;
    // All elements, for the shipped finite instances.
    virtual std::vector<int> elements() const = 0;
};

// A = {0}.
class TrivialSemigroup final : public Semigroup {
public:
    std::string name() const override { return "trivial"; }
    int add(int, int) const override { return 0; }
    bool is_element(int a) const override { return a == 0; }
    std::vector<int> elements() const override { return {0}; }
};

// A = {0,1} with 1 + 1 = 1.
class Bool01Semigroup final : public Semigroup {
public:
    std::string name() const override { return "bool01"; }
    int add(int a, int b) const override { return (a || b) ? 1 : 0; }
    bool is_element(int a) const override { return a == 0 || a == 1; }
    std::vector<int> elements() const override { return {0, 1}; }
};

const TrivialSemigroup& trivial_semigroup();
const Bool01Semigroup& bool01_semigroup();

// Complete duplicate-free list of ordered pairs (a1, a2) with a1 + a2 = a.
std::vector<std::pair<int, int>> decompositions(const Semigroup& s, int a);

}  // namespace gwsym
