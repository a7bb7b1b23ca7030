#include "gwsym/series.hpp"

#include <functional>

namespace gwsym {

bool SeriesFrame::admissible(const std::vector<uint8_t>& mono) const {
    int nz = n_z();
    int ztot = 0;
    for (int i = 0; i < nz; ++i) {
        if (mono[i] > z_cap[i]) return false;
        ztot += mono[i];
    }
    if (ztot > z_total_cap) return false;
    std::vector<int> per_vertex(vertex_dim.size(), 0);
    for (int s = 0; s < n_psi(); ++s) {
        per_vertex[psi_vertex[s]] += mono[nz + s];
        if (per_vertex[psi_vertex[s]] > vertex_dim[psi_vertex[s]]) return false;
    }
    return true;
}

PsiSeries PsiSeries::one(const SeriesFrame* frame) {
    PsiSeries s(frame);
    s.coef_[std::vector<uint8_t>(frame->n_z() + frame->n_psi(), 0)] = 1;
    return s;
}

PsiSeries PsiSeries::monomial(const SeriesFrame* frame, const std::vector<uint8_t>& mono,
                              const Rational& c) {
    PsiSeries s(frame);
    s.add_term(mono, c);
    return s;
}

void PsiSeries::add_term(const std::vector<uint8_t>& mono, const Rational& c) {
    if (c == 0 || !frame_->admissible(mono)) return;
    auto [it, fresh] = coef_.emplace(mono, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) coef_.erase(it);
    }
}

PsiSeries PsiSeries::operator*(const PsiSeries& o) const {
    PsiSeries out(frame_);
    size_t width = frame_->n_z() + frame_->n_psi();
    std::vector<uint8_t> mono(width);
    for (const auto& [m1, c1] : coef_)
        for (const auto& [m2, c2] : o.coef_) {
            for (size_t i = 0; i < width; ++i) mono[i] = m1[i] + m2[i];
            out.add_term(mono, c1 * c2);
        }
    return out;
}

PsiSeries& PsiSeries::operator*=(const PsiSeries& o) {
    *this = *this * o;
    return *this;
}

PsiSeries& PsiSeries::operator+=(const PsiSeries& o) {
    for (const auto& [m, c] : o.coef_) add_term(m, c);
    return *this;
}

namespace {

// Enumerate z-monomials of w^j with their multinomial coefficients:
//   w^j = sum_{|alpha|=j} (j! / prod alpha_i!) prod c_i^{alpha_i} z^alpha.
void powers_of_form(const WeightForm& w, int j,
                    const std::function<void(const std::vector<uint8_t>&, const Integer&)>& cb) {
    int nz = static_cast<int>(w.coef.size());
    if (nz == 0) {
        if (j == 0) cb({}, 1);
        return;
    }
    std::vector<uint8_t> alpha(nz, 0);
    std::function<void(int, int, Integer)> rec = [&](int idx, int rest, Integer acc) {
        if (idx == nz - 1) {
            if (rest > 0 && w.coef[idx] == 0) return;
            alpha[idx] = static_cast<uint8_t>(rest);
            Integer c = acc;
            if (rest > 0) c = c * pow_integer(w.coef[idx], rest) / factorial(rest);
            cb(alpha, c);
            alpha[idx] = 0;
            return;
        }
        for (int a = 0; a <= rest; ++a) {
            if (a > 0 && w.coef[idx] == 0) break;
            alpha[idx] = static_cast<uint8_t>(a);
            Integer c = acc;
            if (a > 0) c = c * pow_integer(w.coef[idx], a) / factorial(a);
            rec(idx + 1, rest - a, c);
            alpha[idx] = 0;
        }
    };
    rec(0, j, factorial(j));
}

}  // namespace

PsiSeries PsiSeries::exp_tail_factor(const SeriesFrame* frame, const WeightForm& w, int slot) {
    PsiSeries out(frame);
    int nz = frame->n_z();
    int cap = std::min(frame->z_total_cap, frame->vertex_dim[frame->psi_vertex[slot]]);
    for (int j = 0; j <= cap; ++j) {
        Rational inv_fact = Rational(1) / Rational(factorial(j));
        powers_of_form(w, j, [&](const std::vector<uint8_t>& alpha, const Integer& c) {
            std::vector<uint8_t> mono(nz + frame->n_psi(), 0);
            for (int i = 0; i < nz; ++i) mono[i] = alpha[i];
            mono[nz + slot] = static_cast<uint8_t>(j);
            out.add_term(mono, Rational(c) * inv_fact);
        });
    }
    return out;
}

PsiSeries PsiSeries::edge_factor(const SeriesFrame* frame, const WeightForm& w, int slot_a,
                                 int slot_b) {
    PsiSeries out(frame);
    int nz = frame->n_z();
    for (int j = 1; j <= frame->z_total_cap; ++j) {
        Rational minus_inv_fact = Rational(-1) / Rational(factorial(j));
        powers_of_form(w, j, [&](const std::vector<uint8_t>& alpha, const Integer& c) {
            if (c == 0) return;
            for (int a = 0; a <= j - 1; ++a) {
                int b = j - 1 - a;
                std::vector<uint8_t> mono(nz + frame->n_psi(), 0);
                for (int i = 0; i < nz; ++i) mono[i] = alpha[i];
                mono[nz + slot_a] = static_cast<uint8_t>(a);
                mono[nz + slot_b] = static_cast<uint8_t>(b);
                out.add_term(mono, Rational(c * binomial(j - 1, a)) * minus_inv_fact);
            }
        });
    }
    return out;
}

}  // namespace gwsym
