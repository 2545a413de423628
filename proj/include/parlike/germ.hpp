#ifndef PARLIKE_GERM_HPP
#define PARLIKE_GERM_HPP

// Local analysis of a multiplier-1 fixed point: parabolic multiplicity,
// petal directions, and the coordinate w in which the map is close to the
// translation w -> w + 1 + c_hat / w.

#include <vector>

#include "parlike/dynamics.hpp"

namespace parlike {

// Result of conjugating a germ u -> u + a u^(n+1) + ... by a polynomial
// u = h(zeta) that removes every non-resonant term of degree n+2 .. n+max_m
// and every resonant term of degree jn+1 with j >= 3 in that range.
struct GermNormalization {
    CVector h;           // u = h(zeta), h(0) = 0, h'(0) = 1
    CVector normalized;  // zeta -> zeta + a zeta^(n+1) + b zeta^(2n+1) + ...
};

GermNormalization normalize_germ(const CVector& series, int n, int max_m, int order);

// The coordinate w = -1 / (n a zeta^n), zeta = h^{-1}(u), u the local
// coordinate at the base point (z - z0, or 1/z at infinity).
class TranslationChart {
public:
    TranslationChart() = default;
    TranslationChart(Complex base, int n, Complex a, CVector h);

    Complex base() const { return base_; }
    bool at_infinity() const { return is_infinity(base_); }
    int n() const { return n_; }
    Complex a() const { return a_; }
    const CVector& h() const { return h_; }

    Complex local(Complex z) const;
    Complex from_local(Complex u) const;
    // dz/du at the local coordinate u.
    Complex from_local_derivative(Complex u) const;

    // zeta with h(zeta) = u by Newton from zeta = u.
    Complex normalize(Complex u) const;

    Complex to_w(Complex z) const;
    // w and dw/dz.
    std::pair<Complex, Complex> to_w_with_derivative(Complex z) const;

    // The preimage of w whose zeta-argument is closest to `direction`.
    Complex from_w(Complex w, double direction) const;

private:
    Complex base_{0.0};
    int n_ = 1;
    Complex a_{1.0};
    CVector h_;
    CVector dh_;
};

struct ParabolicGerm {
    Complex base_point;  // kInfinity when the germ lives at infinity
    int multiplicity_n = 1;
    Complex leading_coeff_a;
    // Directions are angles of the local coordinate u (the 1/z chart at
    // infinity), sorted ascending in (-pi, pi].
    std::vector<double> attracting_dirs;
    std::vector<double> repelling_dirs;
    Complex c_hat;
    Complex resonant_b;  // coefficient of zeta^(2n+1) after normalization
    CVector series;      // local series of the map at the base point
    TranslationChart chart;

    bool base_at_infinity() const { return is_infinity(base_point); }
    // Chart inversion is refused for |w| below this radius.
    double validity_radius() const { return 20.0 * (1.0 + std::abs(c_hat)); }
};

// Throws std::invalid_argument when the multiplier differs from 1 by more
// than 1e-8 or the point is not fixed, NumericalError when the series
// vanishes to the available order.
ParabolicGerm germ_analyze(const MapSpec& map, Complex z0);

// w = -1/(n a zeta^n). For n = 1 zeta is the plain local coordinate; for
// n >= 2 zeta removes the terms between degrees n+2 and 3n so that the map
// reads w + 1 + c_hat/w + O(1/w^2). Throws at the base point.
Complex to_translation_chart(const ParabolicGerm& germ, Complex z);

// Inverse of to_translation_chart on the branch nearest the attracting
// direction attracting_dirs[sector_index].
Complex from_translation_chart(const ParabolicGerm& germ, Complex w, int sector_index);

}  // namespace parlike

#endif  // PARLIKE_GERM_HPP
