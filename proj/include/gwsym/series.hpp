#pragma once

#include "gwsym/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace gwsym {

// Truncation frame for polynomials in marked-point variables z_1..z_n and psi
// symbols attached to the target half-edges of one stratum.  Monomials are
// dropped once any z exponent exceeds its cap, the total z degree exceeds the
// cap, or the psi degree concentrated on one target vertex exceeds that
// vertex's dimension.
struct SeriesFrame {
    std::vector<int> z_cap;      // per z variable
    int z_total_cap = 0;
    std::vector<int> psi_vertex;  // psi slot -> vertex
    std::vector<int> vertex_dim;  // dimension cap per vertex

    int n_z() const { return static_cast<int>(z_cap.size()); }
    int n_psi() const { return static_cast<int>(psi_vertex.size()); }
    bool admissible(const std::vector<uint8_t>& mono) const;
};

// Linear form sum c_i z_i with non-negative integer coefficients.
struct WeightForm {
    std::vector<long> coef;
    bool zero() const {
        for (long c : coef)
            if (c) return false;
        return true;
    }
};

// Sparse exact polynomial over a frame.  Monomial layout: z exponents then
// psi exponents.
class PsiSeries {
public:
    explicit PsiSeries(const SeriesFrame* frame) : frame_(frame) {}

    static PsiSeries one(const SeriesFrame* frame);
    static PsiSeries monomial(const SeriesFrame* frame, const std::vector<uint8_t>& mono,
                              const Rational& c);

    const SeriesFrame& frame() const { return *frame_; }
    const std::map<std::vector<uint8_t>, Rational>& terms() const { return coef_; }

    void add_term(const std::vector<uint8_t>& mono, const Rational& c);
    PsiSeries operator*(const PsiSeries& o) const;
    PsiSeries& operator*=(const PsiSeries& o);
    PsiSeries& operator+=(const PsiSeries& o);

    // exp(w * psi_slot), truncated by the frame
    static PsiSeries exp_tail_factor(const SeriesFrame* frame, const WeightForm& w, int slot);
    // (1 - exp(w * (psi_a + psi_b))) / (psi_a + psi_b) =
    //   -sum_{j>=1} w^j (psi_a + psi_b)^{j-1} / j!
    static PsiSeries edge_factor(const SeriesFrame* frame, const WeightForm& w, int slot_a,
                                 int slot_b);

private:
    const SeriesFrame* frame_;
    std::map<std::vector<uint8_t>, Rational> coef_;
};

}  // namespace gwsym
