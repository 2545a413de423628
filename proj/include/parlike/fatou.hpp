#ifndef PARLIKE_FATOU_HPP
#define PARLIKE_FATOU_HPP

// Attracting and repelling Fatou coordinates on the petals of a parabolic
// fixed point, their inverses, and the Ecalle-cylinder projection.
//
// Evaluation runs the orbit (forward for attracting petals, backward along
// the petal branch for repelling ones) into a deeply normalized chart where
// the map is w -> w Q(1/w)^(-n) up to a tiny remainder. There the
// asymptotic coordinate w - c_hat log w + sum d_j w^-j is accurate to
// roughly 1e-12, so the limit converges after a handful of steps.

#include <optional>
#include <utility>

#include "parlike/germ.hpp"

namespace parlike {

enum class PetalKind { Attracting, Repelling };

struct FatouOptions {
    // Iterations allowed before the orbit must reach |Re w| >= validity
    // radius of the germ chart; points far out in the basin need more.
    int entry_budget = 200;
    int iteration_cap = 100000;
    double cauchy_tol = 1e-9;
};

class FatouChart {
public:
    // petal_index counts attracting_dirs or repelling_dirs (sorted by angle).
    FatouChart(const MapSpec& map, Complex base, PetalKind kind, int petal_index,
               FatouOptions opts = {});

    // Returns a copy with phi(z_ref) = target exactly.
    FatouChart anchored(Complex z_ref, Complex target) const;
    FatouChart with_shift(Complex shift) const;

    const MapSpec& map() const { return map_; }
    const ParabolicGerm& germ() const { return germ_; }
    PetalKind kind() const { return kind_; }
    int petal_index() const { return petal_; }
    Complex normalization_shift() const { return shift_; }
    const std::optional<std::pair<Complex, Complex>>& anchor() const { return anchor_; }
    const FatouOptions& options() const { return opts_; }
    void set_options(const FatouOptions& o) { opts_ = o; }

    // Angle of the petal axis in the local coordinate of the germ.
    double direction() const;

    // Asymptotic coordinate in the deep chart (shift not included).
    Complex asymptotic(Complex w) const;
    Complex asymptotic_derivative(Complex w) const;
    // Solves asymptotic(w) = s for w on the petal side.
    Complex asymptotic_inverse(Complex s) const;

    const TranslationChart& deep_chart() const { return deep_; }
    double entry_radius() const { return r_eval_; }

    // Chart coordinate of a point in the petal region |Re w| >= radius on the
    // petal side (entry_radius() by default), or nothing when z is outside it.
    std::optional<Complex> petal_w(Complex z, double radius = 0.0) const;

private:
    MapSpec map_;
    ParabolicGerm germ_;
    PetalKind kind_;
    int petal_;
    FatouOptions opts_;
    Complex shift_{0.0};
    std::optional<std::pair<Complex, Complex>> anchor_;

    TranslationChart deep_;
    CVector d_;  // d_1 .. d_K of the asymptotic expansion (index 0 unused)
    double r_eval_ = 50.0;
};

Complex attracting_fatou(const FatouChart& chart, Complex z);
Complex repelling_fatou(const FatouChart& chart, Complex z);
// Dispatches on the chart kind.
Complex fatou(const FatouChart& chart, Complex z);
// phi and phi' together.
std::pair<Complex, Complex> fatou_with_derivative(const FatouChart& chart, Complex z);

// psi with fatou(chart, psi(s)) = s.
Complex inverse_fatou(const FatouChart& chart, Complex s);

// Representative of w modulo 1 with real part in [0, 1).
Complex ecalle_project(Complex w);

// The two repelling charts at the parabolic point 1 of h2, normalized so the
// unit circle goes to the real axis: phi_plus(i) = -1 on the upper petal,
// phi_minus(-i) = -1 on the lower one. Both send the circle onto R_-.
struct Example1Charts {
    FatouChart plus;
    FatouChart minus;
};
Example1Charts example1_repelling_charts();

}  // namespace parlike

#endif  // PARLIKE_FATOU_HPP
