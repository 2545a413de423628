#include "parlike/dynamics.hpp"

#include <algorithm>
#include <sstream>

namespace parlike {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kFixedTol = 1e-8;

CVector make_poly(std::initializer_list<Complex> coeffs)
{
    CVector p(Eigen::Index(coeffs.size()));
    Eigen::Index i = 0;
    for (Complex c : coeffs)
        p(i++) = c;
    return p;
}

std::pair<CVector, CVector> build_form(const MapSpec::Variant& v)
{
    return std::visit(
        overloaded{
            [](const PerOne& m) { return std::pair{make_poly({1.0, m.A, 1.0}), make_poly({0.0, 1.0})}; },
            [](const HTwo&) { return std::pair{make_poly({1.0, 0.0, 3.0}), make_poly({3.0, 0.0, 1.0})}; },
            [](const CubicC& m) { return std::pair{make_poly({0.0, 1.0, m.a, 1.0}), make_poly({1.0})}; },
            [](const QuadIter& m) {
                CVector p = make_poly({0.0, 1.0});
                for (int k = 0; k < m.q; ++k) {
                    p = poly_mul(p, p);
                    p(0) += m.c;
                }
                return std::pair{p, make_poly({1.0})};
            },
            [](const RationalPair& m) { return std::pair{poly_trim(m.num), poly_trim(m.den)}; },
        },
        v);
}

Complex eval_rational(const CVector& num, const CVector& den, Complex z)
{
    const Complex d = poly_eval(den, z);
    if (d == Complex(0.0))
        return kInfinity;
    return poly_eval(num, z) / d;
}

Complex eval_at_infinity(const CVector& num, const CVector& den)
{
    const Eigen::Index n = num.size() - 1;
    const Eigen::Index m = den.size() - 1;
    if (n > m)
        return kInfinity;
    if (n == m)
        return num(n) / den(m);
    return Complex(0.0);
}

// Lowest index k >= start with |s_k| above tol * (1 + max |s_j|), or -1.
int first_nonzero(const CVector& s, int start, double tol)
{
    double scale = 1.0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        scale = std::max(scale, std::abs(s(k)));
    for (Eigen::Index k = start; k < s.size(); ++k)
        if (std::abs(s(k)) > tol * scale)
            return int(k);
    return -1;
}

}  // namespace

MapSpec MapSpec::quad_iter(Complex c, int q)
{
    if (q < 1)
        throw std::invalid_argument("QuadIter requires q >= 1");
    return MapSpec(QuadIter{c, q});
}

MapSpec MapSpec::rational(CVector num, CVector den)
{
    num = poly_trim(num);
    den = poly_trim(den);
    if (den.size() == 0 || den(den.size() - 1) == Complex(0.0))
        throw std::invalid_argument("RationalPair: denominator is identically zero");
    if (num.size() <= 1 && den.size() <= 1)
        throw std::invalid_argument("RationalPair: constant map");
    if (den.size() > 1) {
        const double scale = num.cwiseAbs().maxCoeff() + den.cwiseAbs().maxCoeff();
        for (const Root& r : find_roots(den)) {
            if (std::abs(poly_eval(num, r.value)) < 1e-10 * scale * std::pow(1.0 + std::abs(r.value), num.size()))
                throw std::invalid_argument("RationalPair: numerator and denominator share a root");
        }
    }
    return MapSpec(RationalPair{std::move(num), std::move(den)});
}

MapSpec::MapSpec(Variant v) : v_(std::move(v)), form_(build_form(v_))
{
    degree_ = int(std::max(form_.first.size(), form_.second.size())) - 1;
}

bool MapSpec::is_polynomial() const
{
    return std::holds_alternative<CubicC>(v_) || std::holds_alternative<QuadIter>(v_) ||
           (std::holds_alternative<RationalPair>(v_) && form_.second.size() == 1);
}

std::string MapSpec::name() const
{
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const PerOne& m) { os << "PerOne(A=" << m.A << ")"; },
                   [&](const HTwo&) { os << "HTwo"; },
                   [&](const CubicC& m) { os << "CubicC(a=" << m.a << ")"; },
                   [&](const QuadIter& m) { os << "QuadIter(c=" << m.c << ", q=" << m.q << ")"; },
                   [&](const RationalPair& m) {
                       os << "RationalPair(deg " << m.num.size() - 1 << "/" << m.den.size() - 1 << ")";
                   },
               },
               v_);
    return os.str();
}

Complex MapSpec::operator()(Complex z) const { return eval(*this, z); }

Complex eval(const MapSpec& map, Complex z)
{
    if (is_infinity(z))
        return eval_at_infinity(map.rational_form().first, map.rational_form().second);
    return std::visit(overloaded{
                          [&](const PerOne& m) -> Complex {
                              if (z == Complex(0.0))
                                  return kInfinity;
                              return z + 1.0 / z + m.A;
                          },
                          [&](const HTwo&) -> Complex {
                              const Complex z2 = z * z;
                              const Complex d = 3.0 + z2;
                              if (d == Complex(0.0))
                                  return kInfinity;
                              return (3.0 * z2 + 1.0) / d;
                          },
                          [&](const CubicC& m) -> Complex { return z + z * z * (m.a + z); },
                          [&](const QuadIter& m) -> Complex {
                              for (int k = 0; k < m.q; ++k)
                                  z = z * z + m.c;
                              return is_finite(z) ? z : kInfinity;
                          },
                          [&](const RationalPair& m) -> Complex { return eval_rational(m.num, m.den, z); },
                      },
                      map.variant());
}

Complex deriv(const MapSpec& map, Complex z)
{
    if (is_infinity(z))
        throw std::invalid_argument("deriv: use the w = 1/z chart (series_at) at infinity");
    return std::visit(overloaded{
                          [&](const PerOne&) -> Complex {
                              if (z == Complex(0.0))
                                  return kInfinity;
                              return 1.0 - 1.0 / (z * z);
                          },
                          [&](const HTwo&) -> Complex {
                              const Complex d = 3.0 + z * z;
                              if (d == Complex(0.0))
                                  return kInfinity;
                              return 16.0 * z / (d * d);
                          },
                          [&](const CubicC& m) -> Complex { return 1.0 + z * (2.0 * m.a + 3.0 * z); },
                          [&](const QuadIter& m) -> Complex {
                              Complex d(1.0);
                              for (int k = 0; k < m.q; ++k) {
                                  d *= 2.0 * z;
                                  z = z * z + m.c;
                              }
                              return d;
                          },
                          [&](const RationalPair& m) -> Complex {
                              const Complex den = poly_eval(m.den, z);
                              if (den == Complex(0.0))
                                  return kInfinity;
                              const Complex num = poly_eval(m.num, z);
                              return (poly_eval(poly_derivative(m.num), z) * den -
                                      num * poly_eval(poly_derivative(m.den), z)) /
                                     (den * den);
                          },
                      },
                      map.variant());
}

std::vector<Complex> orbit(const MapSpec& map, Complex z0, int n)
{
    if (n < 0)
        throw std::invalid_argument("orbit: n must be non-negative");
    std::vector<Complex> out;
    out.reserve(std::size_t(n) + 1);
    out.push_back(z0);
    for (int k = 0; k < n && !is_infinity(out.back()); ++k)
        out.push_back(eval(map, out.back()));
    return out;
}

CVector series_at(const MapSpec& map, Complex z0, int order)
{
    if (order < 1)
        throw std::invalid_argument("series_at: order must be at least 1");
    const auto& [num, den] = map.rational_form();

    if (is_infinity(z0)) {
        const Eigen::Index n = num.size() - 1;
        const Eigen::Index m = den.size() - 1;
        if (n <= m)
            throw std::invalid_argument("series_at: infinity is not a fixed point of " + map.name());
        CVector shifted = CVector::Zero(order + 1);
        const CVector q = series_div(poly_reverse(den), poly_reverse(num), order);
        for (Eigen::Index k = 0; k + (n - m) <= order; ++k)
            shifted(k + (n - m)) = q(k);
        return shifted;
    }

    const Complex image = eval(map, z0);
    if (is_infinity(image) || std::abs(image - z0) > kFixedTol * (1.0 + std::abs(z0)))
        throw std::invalid_argument("series_at: point is not fixed by " + map.name());

    if (const auto* quad = std::get_if<QuadIter>(&map.variant())) {
        CVector s = CVector::Zero(order + 1);
        s(0) = z0;
        s(1) = 1.0;
        for (int k = 0; k < quad->q; ++k) {
            s = series_mul(s, s, order);
            s(0) += quad->c;
        }
        s(0) = 0.0;
        return s;
    }

    const CVector ns = poly_taylor_shift(num, z0);
    const CVector ds = poly_taylor_shift(den, z0);
    CVector s = series_div(poly_sub(ns, CVector(z0 * ds)), ds, order);
    s(0) = 0.0;
    return s;
}

std::vector<FixedPointRecord> fixed_points(const MapSpec& map)
{
    const auto& [num, den] = map.rational_form();
    const CVector shifted_den = poly_mul(CVector(make_poly({0.0, 1.0})), den);
    const CVector fixed_poly = poly_sub(num, shifted_den);

    std::vector<FixedPointRecord> out;
    for (const Root& r : find_roots(fixed_poly)) {
        FixedPointRecord rec;
        rec.location = r.value;
        rec.multiplier = deriv(map, r.value);
        rec.algebraic_multiplicity = r.multiplicity;
        const Complex image = eval(map, r.value);
        rec.residual = is_infinity(image) ? std::numeric_limits<double>::infinity() : std::abs(image - r.value);
        if (rec.residual > 1e-6 * (1.0 + std::abs(r.value)))
            throw NumericalError("fixed_points: root solver residual too large for " + map.name());
        out.push_back(rec);
    }

    if (num.size() > den.size()) {
        const int order = map.degree() + 3;
        CVector g = series_at(map, kInfinity, order);
        FixedPointRecord rec;
        rec.location = kInfinity;
        rec.multiplier = g(1);
        g(1) -= 1.0;
        const int k = first_nonzero(g, 1, 1e-12);
        rec.algebraic_multiplicity = k < 0 ? order : k;
        out.push_back(rec);
    }
    return out;
}

std::vector<Complex> critical_points(const MapSpec& map)
{
    const auto& [num, den] = map.rational_form();
    const CVector crit_poly =
        poly_sub(poly_mul(poly_derivative(num), den), poly_mul(num, poly_derivative(den)));

    std::vector<Complex> out;
    for (const Root& r : find_roots(crit_poly))
        out.push_back(r.value);

    const Eigen::Index n = num.size() - 1;
    const Eigen::Index m = den.size() - 1;
    int local_deg = 1;
    if (n > m) {
        local_deg = int(n - m);
    } else {
        // f(1/w) = w^(m-n) rev(num)(w) / rev(den)(w); its order at w = 0
        // after removing the value f(infinity).
        const int order = map.degree() + 2;
        CVector s = CVector::Zero(order + 1);
        const CVector q = series_div(poly_reverse(num), poly_reverse(den), order);
        for (Eigen::Index k = 0; k + (m - n) <= order; ++k)
            s(k + (m - n)) = q(k);
        s(0) = 0.0;
        const int k = first_nonzero(s, 1, 1e-12);
        local_deg = k < 0 ? order : k;
    }
    if (local_deg >= 2)
        out.push_back(kInfinity);
    return out;
}

std::vector<Complex> preimages(const MapSpec& map, Complex x)
{
    if (const auto* quad = std::get_if<QuadIter>(&map.variant())) {
        std::vector<Complex> level{x};
        for (int k = 0; k < quad->q; ++k) {
            std::vector<Complex> next;
            for (Complex y : level) {
                const Complex r = std::sqrt(y - quad->c);
                next.push_back(r);
                next.push_back(-r);
            }
            level = std::move(next);
        }
        return level;
    }
    const auto& [num, den] = map.rational_form();
    if (is_infinity(x)) {
        std::vector<Complex> poles;
        for (const Root& r : find_roots(den))
            for (int k = 0; k < r.multiplicity; ++k)
                poles.push_back(r.value);
        return poles;
    }
    const CVector p = poly_sub(num, CVector(x * den));
    std::vector<Complex> roots = companion_roots(p);
    // One Newton step each against the rational equation.
    const CVector dp = poly_derivative(poly_trim(p, 1e-15));
    const CVector pt = poly_trim(p, 1e-15);
    for (Complex& y : roots) {
        for (int it = 0; it < 3; ++it) {
            const Complex d = poly_eval(dp, y);
            if (d == Complex(0.0))
                break;
            const Complex step = poly_eval(pt, y) / d;
            if (!is_finite(step) || std::abs(step) > 1e-3 * (1.0 + std::abs(y)))
                break;
            y -= step;
        }
    }
    return roots;
}

}  // namespace parlike
