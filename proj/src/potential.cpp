#include "parlike/potential.hpp"

#include <stdexcept>

namespace parlike {

namespace {

constexpr double kEscape = 1e8;
constexpr double kBottcherLevel = 16.0;  // d^m * potential at which B(z) ~ z + shift

// Constant term of the Böttcher coordinate B(z) = z + shift + O(1/z).
Complex bottcher_shift(const MapSpec& map)
{
    if (const auto* c = std::get_if<CubicC>(&map.variant()))
        return c->a / 3.0;
    return 0.0;
}

// p^m(z) and its derivative.
std::pair<Complex, Complex> iterate_with_derivative(const MapSpec& map, Complex z, int m)
{
    Complex d(1.0);
    if (const auto* c = std::get_if<CubicC>(&map.variant())) {
        for (int i = 0; i < m; ++i) {
            d *= 1.0 + 2.0 * c->a * z + 3.0 * z * z;
            z = z + c->a * z * z + z * z * z;
        }
    } else {
        const Complex cc = std::get<QuadIter>(map.variant()).c;
        for (int i = 0; i < m; ++i) {
            d *= 2.0 * z;
            z = z * z + cc;
        }
    }
    return {z, d};
}

}  // namespace

int base_degree(const MapSpec& map)
{
    if (std::holds_alternative<CubicC>(map.variant()))
        return 3;
    if (std::holds_alternative<QuadIter>(map.variant()))
        return 2;
    throw std::invalid_argument("potential theory is available for CubicC and QuadIter maps only");
}

Complex base_eval(const MapSpec& map, Complex z)
{
    base_degree(map);
    return iterate_with_derivative(map, z, 1).first;
}

double multiply_angle(double angle, int d, int k)
{
    double t = angle - std::floor(angle);
    for (int i = 0; i < k; ++i) {
        t *= d;
        t -= std::floor(t);
    }
    return t;
}

PotentialValue green_potential_ex(const MapSpec& map, Complex z, int max_iter)
{
    const int d = base_degree(map);
    PotentialValue r;
    if (!is_finite(z)) {
        r.value = std::numeric_limits<double>::infinity();
        r.escaped = true;
        return r;
    }
    int n = 0;
    while (std::abs(z) <= kEscape) {
        if (n >= max_iter) {
            r.steps = n;
            return r;
        }
        z = base_eval(map, z);
        ++n;
    }
    // A couple more steps shrink the O(1/|z|) error of log|z|.
    for (int extra = 0; extra < 2 && std::abs(z) < 1e80; ++extra) {
        z = base_eval(map, z);
        ++n;
    }
    r.value = std::log(std::abs(z)) / std::pow(double(d), n);
    r.escaped = true;
    r.steps = n;
    return r;
}

double green_potential(const MapSpec& map, Complex z)
{
    return green_potential_ex(map, z).value;
}

Complex ray_point(const MapSpec& map, double angle, double potential, Complex guess)
{
    const int d = base_degree(map);
    if (!(potential > 0.0))
        throw std::invalid_argument("ray_point: potential must be positive");
    int m = 0;
    double level = potential;
    while (level < kBottcherLevel) {
        level *= d;
        ++m;
    }
    const Complex target = std::exp(Complex(level, kTwoPi * multiply_angle(angle, d, m))) - bottcher_shift(map);
    Complex z = guess;
    for (int it = 0; it < 60; ++it) {
        const auto [v, dv] = iterate_with_derivative(map, z, m);
        const Complex step = (v - target) / dv;
        if (!is_finite(step))
            break;
        z -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z)))
            return z;
    }
    const auto [v, dv] = iterate_with_derivative(map, z, m);
    if (is_finite(v) && std::abs(v - target) <= 1e-9 * std::abs(target))
        return z;
    throw NumericalError("external ray Newton did not converge");
}

namespace {

// Descend from `from` (a ray point at potential p0) to potential p1 along
// the ray, with `per_halving` steps per factor 2. Returns false on loss of
// lock.
bool descend(const MapSpec& map, double angle, double p0, double p1, int per_halving, Complex& z)
{
    const double ratio = std::pow(2.0, -1.0 / per_halving);
    double p = p0;
    Complex prev_step(0.0);
    while (p > p1) {
        const double next = std::max(p * ratio, p1);
        Complex zn;
        try {
            zn = ray_point(map, angle, next, z);
        } catch (const NumericalError&) {
            return false;
        }
        const Complex step = zn - z;
        if (prev_step != Complex(0.0) && std::abs(step) > 6.0 * std::abs(prev_step) + 1e-12)
            return false;
        prev_step = step;
        z = zn;
        p = next;
    }
    return true;
}

Complex ray_start(const MapSpec& map, double angle)
{
    return std::exp(Complex(kBottcherLevel, kTwoPi * angle)) - bottcher_shift(map);
}

}  // namespace

RayTrace trace_external_ray(const MapSpec& map, double angle, double pot_hi, double pot_lo, int per_halving)
{
    base_degree(map);
    if (!(pot_lo > 0.0 && pot_lo < pot_hi))
        throw std::invalid_argument("trace_external_ray: need 0 < pot_lo < pot_hi");
    RayTrace r;
    r.angle = angle;
    Complex z = ray_start(map, angle);
    double p = kBottcherLevel;
    if (pot_hi < p) {
        if (!descend(map, angle, p, pot_hi, per_halving, z)) {
            r.failure_index = 0;
            r.failure = "lost lock above the requested potential range";
            return r;
        }
        p = pot_hi;
    } else {
        z = ray_point(map, angle, pot_hi, std::exp(Complex(pot_hi, kTwoPi * angle)) - bottcher_shift(map));
        p = pot_hi;
    }
    r.potentials.push_back(p);
    r.points.push_back(z);
    const double ratio = std::pow(2.0, -1.0 / per_halving);
    while (p > pot_lo) {
        const double next = std::max(p * ratio, pot_lo);
        if (!descend(map, angle, p, next, 1, z)) {
            r.failure_index = int(r.points.size());
            r.failure = "Newton lost lock at potential " + std::to_string(next);
            return r;
        }
        p = next;
        r.potentials.push_back(p);
        r.points.push_back(z);
    }
    return r;
}

Complex ray_point_descend(const MapSpec& map, double angle, double potential)
{
    Complex z = ray_start(map, angle);
    if (potential >= kBottcherLevel)
        return ray_point(map, angle, potential, std::exp(Complex(potential, kTwoPi * angle)) - bottcher_shift(map));
    if (!descend(map, angle, kBottcherLevel, potential, 16, z))
        throw NumericalError("external ray lost lock before reaching the requested potential");
    return z;
}

std::vector<Complex> trace_equipotential(const MapSpec& map, double potential, double angle_from, double angle_to,
                                         int samples)
{
    const int d = base_degree(map);
    if (samples < 1)
        throw std::invalid_argument("trace_equipotential: need at least one step");
    int m = 0;
    for (double level = potential; level < kBottcherLevel; level *= d)
        ++m;
    // Keep each Newton step within 1/64 turn at the top level.
    const double span = std::abs(angle_to - angle_from);
    const int sub = std::max(1, int(std::ceil(span * std::pow(double(d), m) * 64.0 / samples)));
    std::vector<Complex> out;
    Complex z = ray_point_descend(map, angle_from, potential);
    out.push_back(z);
    for (int k = 1; k <= samples; ++k) {
        for (int s = 1; s <= sub; ++s) {
            const double a = angle_from + (angle_to - angle_from) * ((k - 1) + double(s) / sub) / samples;
            z = ray_point(map, a, potential, z);
        }
        out.push_back(z);
    }
    return out;
}

}  // namespace parlike
