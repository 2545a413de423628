#include "parlike/straighten.hpp"

#include <algorithm>

namespace parlike {

namespace {

// Newton on f(z) - z. Returns false when the iteration hits a pole or does
// not settle.
bool newton_fixed(const MapSpec& f, Complex& z)
{
    for (int it = 0; it < 200; ++it) {
        const Complex fz = eval(f, z), dfz = deriv(f, z);
        if (!is_finite(fz) || !is_finite(dfz))
            return false;
        const Complex g = fz - z, dg = dfz - 1.0;
        if (g == Complex(0.0))
            return true;
        if (dg == Complex(0.0))
            return false;
        const Complex step = g / dg;
        z -= step;
        if (!is_finite(z) || std::abs(z) > 1e8)
            return false;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z)))
            return true;
    }
    return true;  // slow (multiple) roots are judged by the residual
}

}  // namespace

std::vector<InternalFixedPoint> internal_fixed_points(const PLMap& plm, int grid)
{
    if (grid < 2)
        throw std::invalid_argument("internal_fixed_points: grid must be at least 2");
    const Region& om = plm.omega_prime_locator.region();
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (Complex z : om.boundary) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    const double diam = om.diameter();
    const Complex base = plm.parabolic_point;

    std::vector<InternalFixedPoint> found;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            Complex z(x0 + (x1 - x0) * (i + 0.5) / grid, y0 + (y1 - y0) * (j + 0.5) / grid);
            if (!plm.omega_prime_locator.inside(z) || !newton_fixed(plm.map, z))
                continue;
            if (std::abs(z - base) < 1e-4 * diam)
                continue;  // the parabolic point, added below
            const double res = std::abs(eval(plm.map, z) - z);
            if (!(res < 1e-10 * (1.0 + std::abs(z))))
                continue;
            const Membership m = plm.omega_prime_locator.locate(z);
            if (m == Membership::Outside)
                continue;
            InternalFixedPoint p;
            p.record = {z, deriv(plm.map, z), 1, res};
            p.ambiguous = m == Membership::Boundary;
            found.push_back(p);
        }
    InternalFixedPoint b;
    b.record = {base, deriv(plm.map, base), 1, std::abs(eval(plm.map, base) - base)};
    b.parabolic_base = true;
    found.push_back(b);

    auto less = [](const InternalFixedPoint& p, const InternalFixedPoint& q) {
        const Complex a = p.record.location, c = q.record.location;
        return a.real() != c.real() ? a.real() < c.real() : a.imag() < c.imag();
    };
    std::sort(found.begin(), found.end(), less);
    std::vector<InternalFixedPoint> out;
    for (const auto& p : found) {
        auto same = std::find_if(out.begin(), out.end(), [&](const InternalFixedPoint& q) {
            return std::abs(q.record.location - p.record.location) < 1e-8 * (1.0 + std::abs(p.record.location));
        });
        if (same == out.end())
            out.push_back(p);
        else if (p.parabolic_base)
            *same = p;
        else if (p.record.residual < same->record.residual && !same->parabolic_base)
            *same = p;
    }
    return out;
}

Complex perone_fixed_multiplier(Complex A)
{
    if (A == Complex(0.0))
        throw std::invalid_argument("perone_fixed_multiplier: A = 0 has no finite fixed point");
    return 1.0 - A * A;
}

const char* method_name(StraightenMethod m)
{
    switch (m) {
    case StraightenMethod::AttractingMultiplier: return "attracting_multiplier";
    case StraightenMethod::IndifferentMultiplier: return "indifferent_multiplier";
    case StraightenMethod::InternalPetalZero: return "internal_petal_zero";
    case StraightenMethod::HeuristicRepelling: return "heuristic_repelling";
    }
    return "?";
}

const char* confidence_name(Confidence c) { return c == Confidence::Guaranteed ? "guaranteed" : "heuristic"; }

StraighteningEstimate straighten_estimate(const PLMap& plm)
{
    if (plm.degree_d != 2)
        throw std::invalid_argument("straighten_estimate: degree " + std::to_string(plm.degree_d) + ", need 2");
    const auto fps = internal_fixed_points(plm);

    auto make = [](Complex a2, StraightenMethod m, Confidence c, double res) {
        const Complex r = std::sqrt(a2);
        return StraighteningEstimate{a2, {r, -r}, m, c, res};
    };

    const InternalFixedPoint* attracting = nullptr;
    const InternalFixedPoint* indifferent = nullptr;
    const InternalFixedPoint* repelling = nullptr;
    for (const auto& p : fps) {
        if (p.parabolic_base || p.ambiguous)
            continue;
        const double m = std::abs(p.record.multiplier);
        if (m < 1.0 - 1e-9) {
            if (!attracting || m < std::abs(attracting->record.multiplier))
                attracting = &p;
        } else if (m <= 1.0 + 1e-9) {
            if (std::abs(p.record.multiplier - 1.0) > 1e-9 && !indifferent)
                indifferent = &p;
        } else if (!repelling || p.record.residual < repelling->record.residual) {
            repelling = &p;
        }
    }
    if (attracting)
        return make(1.0 - attracting->record.multiplier, StraightenMethod::AttractingMultiplier,
                    Confidence::Guaranteed, attracting->record.residual);
    if (indifferent)
        return make(1.0 - indifferent->record.multiplier, StraightenMethod::IndifferentMultiplier,
                    Confidence::Guaranteed, indifferent->record.residual);

    // An attracting direction of the parabolic germ pointing into Omega'.
    if (!repelling) {
        const ParabolicGerm germ = germ_analyze(plm.map, plm.parabolic_point);
        const double rho = 0.5 * plm.U_prime.distance(plm.parabolic_point);
        for (double a : germ.attracting_dirs) {
            bool all = true;
            for (int k = 0; k < 8 && all; ++k)
                all = plm.omega_prime_locator.inside(germ.chart.from_local(std::polar(rho * std::ldexp(1.0, -k), a)));
            if (all)
                return make(0.0, StraightenMethod::InternalPetalZero, Confidence::Guaranteed, 0.0);
        }
    }
    if (repelling)
        return make(1.0 - repelling->record.multiplier, StraightenMethod::HeuristicRepelling, Confidence::Heuristic,
                    repelling->record.residual);
    throw NumericalError("straighten_estimate: no internal fixed point and no internal petal; estimation impossible");
}

}  // namespace parlike
