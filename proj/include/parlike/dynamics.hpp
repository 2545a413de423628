#ifndef PARLIKE_DYNAMICS_HPP
#define PARLIKE_DYNAMICS_HPP

// Catalog of the holomorphic maps under study and their elementary dynamics:
// evaluation, derivatives, orbits, fixed and critical points, local series.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "parlike/complex.hpp"
#include "parlike/poly.hpp"

namespace parlike {

// P_A(z) = z + 1/z + A.
struct PerOne {
    Complex A;
};

// h_2(z) = (3z^2 + 1) / (3 + z^2).
struct HTwo {};

// C_a(z) = z + a z^2 + z^3.
struct CubicC {
    Complex a;
};

// q-th iterate of z^2 + c, evaluated by composition.
struct QuadIter {
    Complex c;
    int q = 1;
};

// num(z) / den(z), ascending coefficients.
struct RationalPair {
    CVector num;
    CVector den;
};

class MapSpec {
public:
    using Variant = std::variant<PerOne, HTwo, CubicC, QuadIter, RationalPair>;

    static MapSpec per_one(Complex A) { return MapSpec(PerOne{A}); }
    static MapSpec h_two() { return MapSpec(HTwo{}); }
    static MapSpec cubic(Complex a) { return MapSpec(CubicC{a}); }
    static MapSpec quad_iter(Complex c, int q);
    // Validates the denominator and the absence of common roots.
    static MapSpec rational(CVector num, CVector den);

    const Variant& variant() const { return v_; }

    // Exact numerator/denominator; QuadIter is expanded here (only used for
    // root extraction, never for evaluation).
    const std::pair<CVector, CVector>& rational_form() const { return form_; }

    int degree() const { return degree_; }
    bool is_polynomial() const;
    std::string name() const;

    Complex operator()(Complex z) const;

private:
    explicit MapSpec(Variant v);
    Variant v_;
    std::pair<CVector, CVector> form_;
    int degree_ = 0;
};

struct FixedPointRecord {
    Complex location;  // kInfinity for the point at infinity
    Complex multiplier;
    int algebraic_multiplicity = 1;
    double residual = 0.0;

    bool at_infinity() const { return is_infinity(location); }
};

// Poles map to kInfinity; eval(map, kInfinity) is the limiting value.
Complex eval(const MapSpec& map, Complex z);

// Closed-form derivative; poles of the derivative give kInfinity.
Complex deriv(const MapSpec& map, Complex z);

// [z0, f(z0), ..., f^n(z0)], stopping early at the infinity marker.
std::vector<Complex> orbit(const MapSpec& map, Complex z0, int n);

// All solutions of f(z) = z on the sphere with multiplicities and multipliers
// (the multiplier at infinity is taken in the w = 1/z chart).
std::vector<FixedPointRecord> fixed_points(const MapSpec& map);

// All solutions of f'(z) = 0 on the sphere (kInfinity when infinity is
// critical), each listed once.
std::vector<Complex> critical_points(const MapSpec& map);

// Taylor coefficients [b_0, ..., b_order] of the map conjugated to a fixed
// point at the origin: u -> f(z0 + u) - z0, or w -> 1/f(1/w) when z0 is
// infinity. Throws std::invalid_argument when z0 is not fixed.
CVector series_at(const MapSpec& map, Complex z0, int order);

// All preimages of x (with repetition at critical values).
std::vector<Complex> preimages(const MapSpec& map, Complex x);

}  // namespace parlike

#endif  // PARLIKE_DYNAMICS_HPP
