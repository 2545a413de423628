#include "parlike/fatou.hpp"

#include <cmath>
#include <stdexcept>

namespace parlike {

namespace {

constexpr int kTerms = 6;  // d_1 .. d_6 in the asymptotic expansion

Complex nearest(const std::vector<Complex>& pts, Complex target, double* d1, double* d2)
{
    Complex best = kInfinity;
    *d1 = *d2 = std::numeric_limits<double>::infinity();
    for (Complex p : pts) {
        if (!is_finite(p))
            continue;
        const double d = std::abs(p - target);
        if (d < *d1) {
            *d2 = *d1;
            *d1 = d;
            best = p;
        } else if (d < *d2) {
            *d2 = d;
        }
    }
    return best;
}

// Preimage of x on the branch that is continuous along the segment from
// f(x) to x and starts at x itself: the local inverse near a parabolic point.
Complex continued_preimage(const MapSpec& f, Complex x)
{
    const Complex fx = eval(f, x);
    if (!is_finite(fx))
        return x;
    constexpr int kSteps = 16;
    Complex y = x;
    for (int i = 1; i <= kSteps; ++i) {
        const Complex target = fx + (x - fx) * (double(i) / kSteps);
        double d1, d2;
        const Complex next = nearest(preimages(f, target), y, &d1, &d2);
        if (!is_finite(next))
            return x;
        y = next;
    }
    return y;
}

}  // namespace

FatouChart::FatouChart(const MapSpec& map, Complex base, PetalKind kind, int petal_index,
                       FatouOptions opts)
    : map_(map), germ_(germ_analyze(map, base)), kind_(kind), petal_(petal_index), opts_(opts)
{
    const int n = germ_.multiplicity_n;
    if (petal_index < 0 || petal_index >= n)
        throw std::invalid_argument("FatouChart: petal index out of range");
    const Complex a = germ_.leading_coeff_a;

    // Normalize far enough that the remainder is O(x^(kTerms+2)), x = 1/w.
    const int order = n * (kTerms + 2);
    CVector s = series_at(map, base, order);
    s(1) = 1.0;
    for (int k = 2; k <= n; ++k)
        s(k) = 0.0;
    const GermNormalization norm = normalize_germ(s, n, order - n, order);
    deep_ = TranslationChart(base, n, a, norm.h);

    const Complex b = norm.normalized(2 * n + 1);
    const int ord = kTerms + 2;
    CVector q = CVector::Zero(3);
    q << 1.0, -1.0 / double(n), b / (double(n) * double(n) * a * a);
    CVector one = CVector::Zero(1);
    one(0) = 1.0;
    const CVector e = series_div(one, series_pow(q, n, ord), ord);  // F(w) = w e(1/w)
    const CVector lg = series_log(e, ord);
    const Complex c_hat = germ_.c_hat;

    d_ = CVector::Zero(kTerms + 1);
    for (int k = 1; k <= kTerms; ++k) {
        Complex acc = e(k + 2) - c_hat * lg(k + 1);
        for (int j = 1; j < k; ++j)
            acc += d_(j) * series_pow(q, n * j, ord)(k + 1 - j);
        d_(k) = acc / double(k);
    }

    r_eval_ = std::max(germ_.validity_radius(), 50.0);
}

FatouChart FatouChart::anchored(Complex z_ref, Complex target) const
{
    FatouChart c = with_shift(0.0);
    c.shift_ = target - fatou(c, z_ref);
    c.anchor_ = std::make_pair(z_ref, target);
    return c;
}

FatouChart FatouChart::with_shift(Complex shift) const
{
    FatouChart c = *this;
    c.shift_ = shift;
    c.anchor_.reset();
    return c;
}

double FatouChart::direction() const
{
    return kind_ == PetalKind::Attracting ? germ_.attracting_dirs[petal_] : germ_.repelling_dirs[petal_];
}

Complex FatouChart::asymptotic(Complex w) const
{
    const Complex lw = kind_ == PetalKind::Attracting ? std::log(w) : std::log(-w);
    const Complex x = 1.0 / w;
    Complex tail(0.0);
    for (int j = kTerms; j >= 1; --j)
        tail = (tail + d_(j)) * x;
    return w - germ_.c_hat * lw + tail;
}

Complex FatouChart::asymptotic_derivative(Complex w) const
{
    const Complex x = 1.0 / w;
    Complex tail(0.0);
    for (int j = kTerms; j >= 1; --j)
        tail = (tail - double(j) * d_(j)) * x;
    return 1.0 - germ_.c_hat * x + tail * x;
}

Complex FatouChart::asymptotic_inverse(Complex s) const
{
    const bool att = kind_ == PetalKind::Attracting;
    Complex w = s + germ_.c_hat * (att ? std::log(s) : std::log(-s));
    for (int it = 0; it < 60; ++it) {
        const Complex step = (asymptotic(w) - s) / asymptotic_derivative(w);
        w -= step;
        if (std::abs(step) <= 1e-15 * std::abs(w))
            return w;
    }
    if (std::abs(asymptotic(w) - s) > 1e-10 * std::abs(s))
        throw NumericalError("asymptotic Fatou coordinate inversion did not converge");
    return w;
}

std::optional<Complex> FatouChart::petal_w(Complex z, double radius) const
{
    if (!is_finite(z))
        return std::nullopt;
    if (radius <= 0.0)
        radius = r_eval_;
    const Complex u = deep_.local(z);
    const double u_max = 1.5 * std::pow(1.0 / (germ_.multiplicity_n * std::abs(germ_.leading_coeff_a) * radius),
                                        1.0 / germ_.multiplicity_n);
    if (u == Complex(0.0) || !(std::abs(u) <= u_max))
        return std::nullopt;
    Complex zeta;
    try {
        zeta = deep_.normalize(u);
    } catch (const NumericalError&) {
        return std::nullopt;
    }
    const int n = germ_.multiplicity_n;
    if (angle_distance(std::arg(zeta), direction()) >= kPi / (2.0 * n))
        return std::nullopt;
    const Complex w = -1.0 / (double(n) * germ_.leading_coeff_a * std::pow(zeta, n));
    const bool ok = kind_ == PetalKind::Attracting ? w.real() >= radius : w.real() <= -radius;
    if (!ok)
        return std::nullopt;
    return w;
}

namespace {

// Shared limit loop. `forward` chooses the orbit direction.
std::pair<Complex, Complex> evaluate(const FatouChart& c, Complex z, bool want_derivative)
{
    const bool att = c.kind() == PetalKind::Attracting;
    const FatouOptions& o = c.options();
    const MapSpec& f = c.map();
    const TranslationChart& chart = c.deep_chart();
    if (!is_finite(z))
        throw std::invalid_argument("Fatou coordinate: point at infinity");
    if (!chart.at_infinity() && z == chart.base())
        throw std::invalid_argument("Fatou coordinate: undefined at the parabolic point");

    Complex zk = z;
    Complex dprod(1.0);  // derivative of f^k along the orbit
    Complex prev(0.0);
    bool inside = false;
    bool member = false;  // reached the validity radius of the germ chart
    for (int k = 0; k <= o.iteration_cap; ++k) {
        if (!member)
            member = c.petal_w(zk, c.germ().validity_radius()).has_value();
        const std::optional<Complex> w = c.petal_w(zk);
        if (w) {
            const Complex e = c.asymptotic(*w) + (att ? -double(k) : double(k));
            if (inside && std::abs(e - prev) < o.cauchy_tol) {
                Complex deriv(0.0);
                if (want_derivative) {
                    const Complex dw = chart.to_w_with_derivative(zk).second;
                    deriv = c.asymptotic_derivative(*w) * dw * (att ? dprod : 1.0 / dprod);
                }
                return {e + c.normalization_shift(), deriv};
            }
            prev = e;
            inside = true;
        } else if (inside) {
            throw NumericalError("Fatou coordinate: orbit left the petal chart");
        } else if (!member && k >= o.entry_budget) {
            throw NumericalError(std::string("Fatou coordinate: point not ") +
                                 (att ? "attracted into" : "pulled back into") + " the petal within " +
                                 std::to_string(o.entry_budget) + " iterations");
        }

        if (att) {
            if (want_derivative)
                dprod *= deriv(f, zk);
            zk = eval(f, zk);
        } else {
            Complex seed = kInfinity;
            const Complex u = chart.local(zk);
            if (std::abs(u) < 4.0 * std::abs(chart.local(chart.from_w(c.entry_radius(), c.direction())))) {
                try {
                    const Complex wz = chart.to_w(zk);
                    if (wz.real() < 0.0) {
                        const Complex back = c.asymptotic_inverse(c.asymptotic(wz) - 1.0);
                        seed = chart.from_w(back, c.direction());
                    }
                } catch (const std::exception&) {
                }
            }
            double d1, d2;
            if (!is_finite(seed))
                seed = continued_preimage(f, zk);
            const Complex next = nearest(preimages(f, zk), seed, &d1, &d2);
            if (!is_finite(next))
                throw NumericalError("Fatou coordinate: no finite preimage on the petal branch");
            zk = next;
            if (want_derivative)
                dprod *= deriv(f, zk);
        }
        if (!is_finite(zk))
            throw NumericalError("Fatou coordinate: orbit hit a pole");
    }
    throw NumericalError("Fatou coordinate: iteration cap exceeded");
}

}  // namespace

Complex attracting_fatou(const FatouChart& chart, Complex z)
{
    if (chart.kind() != PetalKind::Attracting)
        throw std::invalid_argument("attracting_fatou: chart is repelling");
    return evaluate(chart, z, false).first;
}

Complex repelling_fatou(const FatouChart& chart, Complex z)
{
    if (chart.kind() != PetalKind::Repelling)
        throw std::invalid_argument("repelling_fatou: chart is attracting");
    return evaluate(chart, z, false).first;
}

Complex fatou(const FatouChart& chart, Complex z)
{
    return evaluate(chart, z, false).first;
}

std::pair<Complex, Complex> fatou_with_derivative(const FatouChart& chart, Complex z)
{
    return evaluate(chart, z, true);
}

namespace {

Complex inverse_repelling(const FatouChart& c, Complex t)
{
    const double r = c.entry_radius();
    int K = std::max(0, int(std::ceil(t.real() + r + 2.0)));
    Complex w;
    for (int tries = 0;; ++tries) {
        w = c.asymptotic_inverse(t - double(K));
        if (w.real() <= -r && std::abs(w) >= r)
            break;
        if (tries > 100)
            throw NumericalError("inverse Fatou coordinate: could not reach the petal chart");
        K += 1 + K / 4;
    }
    Complex z = c.deep_chart().from_w(w, c.direction());
    for (int k = 0; k < K; ++k) {
        z = eval(c.map(), z);
        if (!is_finite(z))
            throw NumericalError("inverse Fatou coordinate: orbit hit a pole");
    }
    return z;
}

// Pull the horizontal segment [t+K, t+K+1] back K times by continuation.
Complex inverse_attracting(const FatouChart& c, Complex t, int samples)
{
    const double r = c.entry_radius();
    int K = std::max(0, int(std::ceil(r - t.real() + 2.0)));
    for (int tries = 0;; ++tries) {
        const Complex w = c.asymptotic_inverse(t + double(K));
        if (w.real() >= r && std::abs(w) >= r)
            break;
        if (tries > 100)
            throw NumericalError("inverse Fatou coordinate: could not reach the petal chart");
        K += 1 + K / 4;
    }
    const TranslationChart& chart = c.deep_chart();
    std::vector<Complex> path(samples + 1);
    for (int j = 0; j <= samples; ++j) {
        const Complex w = c.asymptotic_inverse(t + double(K) + double(j) / samples);
        path[j] = chart.from_w(w, c.direction());
    }
    std::vector<Complex> next(samples + 1);
    for (int level = 0; level < K; ++level) {
        next[samples] = path[0];
        for (int j = samples - 1; j >= 0; --j) {
            double d1, d2;
            const Complex p = nearest(preimages(c.map(), path[j]), next[j + 1], &d1, &d2);
            if (!is_finite(p) || d2 < 2.0 * d1)
                throw NumericalError("inverse Fatou coordinate: ambiguous inverse branch");
            next[j] = p;
        }
        std::swap(path, next);
    }
    return path[0];
}

}  // namespace

Complex inverse_fatou(const FatouChart& chart, Complex s)
{
    const Complex t = s - chart.normalization_shift();
    if (chart.kind() == PetalKind::Repelling)
        return inverse_repelling(chart, t);

    Complex z;
    try {
        z = inverse_attracting(chart, t, 64);
    } catch (const NumericalError&) {
        z = inverse_attracting(chart, t, 1024);
    }
    FatouChart check = chart;
    FatouOptions o = chart.options();
    o.entry_budget = std::max(o.entry_budget, int(std::abs(t.real())) + int(chart.entry_radius()) + 64);
    check.set_options(o);
    const Complex back = fatou(check, z);
    if (std::abs(back - s) > 1e-8 * std::max(1.0, std::abs(s)))
        throw NumericalError("inverse Fatou coordinate: round trip failed (w outside the image?)");
    return z;
}

Complex ecalle_project(Complex w)
{
    double re = w.real() - std::floor(w.real());
    if (re >= 1.0)
        re -= 1.0;
    return {re, w.imag()};
}

Example1Charts example1_repelling_charts()
{
    const MapSpec h = MapSpec::h_two();
    const FatouChart plus(h, 1.0, PetalKind::Repelling, 1);
    const FatouChart minus(h, 1.0, PetalKind::Repelling, 0);
    return {plus.anchored(kI, -1.0), minus.anchored(-kI, -1.0)};
}

}  // namespace parlike
