#ifndef PARLIKE_ARC_HPP
#define PARLIKE_ARC_HPP

// Dividing arcs gamma: [-1, 1] -> C through a parabolic point with
// f(gamma(t)) = gamma(d t), sampled on a grid geometric in |t|.

#include <vector>

#include "parlike/fatou.hpp"
#include "parlike/regions.hpp"

namespace parlike {

struct DividingArc {
    std::vector<double> params;  // strictly increasing, contains 0
    std::vector<Complex> points;
    int base_degree_d = 2;
    int petal_plus = 0;
    int petal_minus = 0;

    Complex base() const;
    // Cubic Lagrange interpolation in log|t| on the samples of the same sign;
    // linear between gamma(0) and the innermost sample. Throws for |t| > 1
    // beyond the sampled range.
    Complex at(double t) const;
    double max_param() const { return params.empty() ? 0.0 : params.back(); }
    double min_param() const { return params.empty() ? 0.0 : params.front(); }
    // The samples with lo <= t <= hi (t = 0 kept only when inside).
    DividingArc restricted(double lo, double hi) const;
    // Points of the half arc t > 0 (sign > 0) or t < 0, ordered from t = 0
    // outwards, with the base point first.
    std::vector<Complex> half(int sign) const;
};

struct ArcGrid {
    int per_octave = 16;  // samples per factor d in |t|
    int octaves = 40;     // smallest |t| is d^-octaves
};

// gamma_+(t) = psi_+(log_d t + m_plus), gamma_-(t) = psi_-(log_d(-t) + m_minus).
// NumericalError reports the smallest |t| reached when an inverse fails.
DividingArc build_dividing_arc(const MapSpec& map, const ParabolicGerm& germ, const FatouChart& plus,
                               const FatouChart& minus, Complex m_plus, Complex m_minus, int d, ArcGrid grid = {});

// Extends a seed known on [tau, d tau] (and/or [-d tau, -tau]) n_steps
// times forward by f and backward by the inverse branch continuous along
// the seed. Forward images leaving `clip` are dropped. The seed must contain
// both endpoints of each of its intervals.
DividingArc extend_arc_by_dynamics(const MapSpec& map, const DividingArc& seed, int n_steps,
                                   const Region* clip = nullptr);

// max over samples 0 < |t| <= 1/d of |f(gamma(t)) - gamma(d t)|.
double check_arc_invariance(const MapSpec& map, const DividingArc& arc);

// Fixed (or f-invariant) external rays at angles theta_plus (t > 0) and
// theta_minus (t < 0) landing at the parabolic point, parametrized by
// potential: G(gamma(t)) = top * |t|^(log_d D) with D the potential factor
// of the map (3 for CubicC, 2^q for QuadIter). Below `switch_potential` the
// arc is continued by pulling back along the dynamics.
struct RayArcOptions {
    double top_potential = 1.0;
    double switch_potential = 1e-4;
    ArcGrid grid{};
};
DividingArc ray_dividing_arc(const MapSpec& map, Complex parabolic_point, double theta_plus, double theta_minus,
                             int d, RayArcOptions opts = {});

// Potential multiplication factor of one application of the map.
int potential_factor(const MapSpec& map);

// Example-1 endpoints: m = x + i y with |psi(m - 1)| = radius solved for x,
// y = imag_part (negative for the plus chart, positive for minus).
Complex example1_endpoint(const FatouChart& chart, double imag_part, double radius);

// Repelling petal index whose direction is nearest to the arc's approach to
// its base point on the given side.
int arc_petal_index(const ParabolicGerm& germ, const DividingArc& arc, int sign);

}  // namespace parlike

#endif  // PARLIKE_ARC_HPP
