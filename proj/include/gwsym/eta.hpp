#pragma once

#include "gwsym/covering.hpp"
#include "gwsym/rational.hpp"

#include <optional>
#include <vector>

namespace gwsym {

// Choice data for the covering label: a nonempty PoleSet of marked points and
// a positive pole degree per point summing to g+1.  The complement J and the
// branch count k = #PoleSet + 3g - 1 are derived.
struct EtaChoice {
    std::vector<std::pair<int, int>> pole_degrees;  // (mark in 1..n, degree)
};

EtaChoice default_eta_choice(int g);  // PoleSet = {1}, d(1) = g+1
std::vector<EtaChoice> all_eta_choices(int g, int n);

// The covering label: a degree g+1 covering of a genus 0 single-vertex target
// by a genus g single-vertex source, with the marked points of the bracket
// identified with retained source tails; the rest form the ForgetSet.
struct EtaLabel {
    int genus = 0;
    int n_points = 0;
    EtaChoice choice;
    int branch_count = 0;   // k
    int m_infinity = 1;     // lcm of pole degrees
    CoveringGraph covering;
    std::vector<int> retained;  // mark-1 -> source half-edge id
    std::vector<int> forget;    // source half-edge ids, ascending
};

// Builds the label for (g, n).  g must be >= 1 (genus 0 brackets bypass the
// covering machinery) and n >= 1.
EtaLabel build_eta(int g, int n, std::optional<EtaChoice> choice = std::nullopt);

// Degree of the covering moduli over the moduli of (g, n)-curves:
//   k! (g!)^{#J} ((g-1)!)^k / (2^k m(inf)).
Rational eta_degree(const EtaLabel& eta);

}  // namespace gwsym
