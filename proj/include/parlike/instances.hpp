#ifndef PARLIKE_INSTANCES_HPP
#define PARLIKE_INSTANCES_HPP

// Concrete parabolic-like data: the three worked examples, restrictions of
// z + 1/z + A built from its attracting Fatou coordinate, and a deliberately
// broken control.

#include <string>

#include "parlike/plm.hpp"

namespace parlike {

struct PLInstance {
    std::string name;
    MapSpec map = MapSpec::h_two();
    Region U_prime;
    Region U;
    DividingArc gamma;
    // Instances of z + 1/z + A live in the chart zeta = 1/(z - chart_center)
    // so that the parabolic point at infinity sits at zeta = 0. For the
    // others chart_center is infinity and zeta = z.
    Complex chart_center = kInfinity;

    bool inverted_chart() const { return is_finite(chart_center); }
    Complex to_plane(Complex zeta) const;
    Complex from_plane(Complex z) const;
};

struct InstanceOptions {
    int octaves = 256;     // depth of the dividing arc, octaves of |t|
    int per_octave = 16;
};

// h2 with U' = {|z| < 1 + eps}, U = h2(U') and the arcs from the repelling
// Fatou coordinates (imaginary parts of m_plus / m_minus: -imag_m / +imag_m).
PLInstance example1_instance(double eps = 0.25, double imag_m = 0.5, InstanceOptions o = {});
// Same with explicit Fatou coordinates of gamma(1) and gamma(-1).
PLInstance example1_instance_from(double eps, Complex m_plus, Complex m_minus, InstanceOptions o = {});

// C_i(z) = z + i z^2 + z^3 with gamma the external rays 0 and 1/2.
PLInstance example2_instance(InstanceOptions o = {});

// Third iterate of the fat rabbit with gamma the rays 1/7 and 2/7.
PLInstance example3_instance(InstanceOptions o = {});

// Restriction of P_A (A != 0) with U the complement of psi(D(z0, r)) in the
// attracting Fatou coordinate normalized by phi(2 + A) = 1. `extra_radius`
// enlarges r, shrinking U.
PLInstance perone_instance(Complex A, double extra_radius = 0.0, InstanceOptions o = {});

// Example-1 data with gamma turned by a quarter turn about the parabolic
// point (into the attracting directions) and clipped at the boundary of U.
PLInstance rotated_control_instance(InstanceOptions o = {});

Assembly assemble_instance(const PLInstance& inst, const AssembleOptions& opts = {});

// c_{p/q} = lambda/2 - lambda^2/4, lambda = exp(2 pi i p/q).
Complex c_pq(int p, int q);
// (-1 + 3 sqrt(3) i) / 8.
Complex fat_rabbit_c();

}  // namespace parlike

#endif  // PARLIKE_INSTANCES_HPP
