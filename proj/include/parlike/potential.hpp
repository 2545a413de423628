#ifndef PARLIKE_POTENTIAL_HPP
#define PARLIKE_POTENTIAL_HPP

// Green potential, external rays and equipotentials of the polynomial
// members of the catalog. QuadIter(c, q) uses the underlying quadratic
// z^2 + c: its Green function is that of every iterate, and ray angles are
// read in the doubling dynamics.

#include <string>
#include <vector>

#include "parlike/dynamics.hpp"

namespace parlike {

struct PotentialValue {
    double value = 0.0;
    bool escaped = false;  // false: iteration cap reached, value reported as 0
    int steps = 0;
};

PotentialValue green_potential_ex(const MapSpec& map, Complex z, int max_iter = 20000);
double green_potential(const MapSpec& map, Complex z);

// Degree of the polynomial whose Böttcher coordinate defines angles (3 for
// CubicC, 2 for QuadIter). Throws for non-polynomial maps.
int base_degree(const MapSpec& map);

// The map z -> z^d + ... that is iterated for potentials and rays.
Complex base_eval(const MapSpec& map, Complex z);

struct RayTrace {
    double angle = 0.0;  // turns
    std::vector<double> potentials;
    std::vector<Complex> points;
    int failure_index = -1;  // index of the first potential that could not be reached
    std::string failure;

    bool complete() const { return failure_index < 0; }
};

// Point of the external ray of the given angle at the given potential, by
// Newton on f^m(z) = B^{-1}(exp(d^m (potential + 2 pi i angle))) from the
// guess, with m the smallest integer making d^m potential >= 16. Throws
// NumericalError when Newton does not converge.
Complex ray_point(const MapSpec& map, double angle, double potential, Complex guess);

// Samples from pot_hi down to pot_lo, geometric in the potential with
// `per_halving` samples per factor 2. On loss of lock the trace stops and
// reports the failure index.
RayTrace trace_external_ray(const MapSpec& map, double angle, double pot_hi, double pot_lo, int per_halving = 16);

// Ray point at potential `potential` reached from a high-potential start
// by descending along the ray; convenience wrapper around the tracer.
Complex ray_point_descend(const MapSpec& map, double angle, double potential);

// Points of the equipotential at `potential` for angles from angle_from to
// angle_to (turns, either direction, no wrapping), `samples` + 1 points.
std::vector<Complex> trace_equipotential(const MapSpec& map, double potential, double angle_from, double angle_to,
                                         int samples);

// d^k * angle mod 1.
double multiply_angle(double angle, int d, int k = 1);

}  // namespace parlike

#endif  // PARLIKE_POTENTIAL_HPP
