#include "parlike/germ.hpp"

#include <stdexcept>

namespace parlike {

GermNormalization normalize_germ(const CVector& series, int n, int max_m, int order)
{
    if (n < 1 || order < n + 1)
        throw std::invalid_argument("normalize_germ: order too small");
    CVector g = series_truncate(series, order);
    g(0) = 0.0;
    const Complex a = g(n + 1);
    if (a == Complex(0.0))
        throw std::invalid_argument("normalize_germ: vanishing leading coefficient");

    CVector h = CVector::Zero(order + 1);
    h(1) = 1.0;
    for (int m = 2; m <= max_m && n + m <= order; ++m) {
        if (m == n + 1)
            continue;
        const Complex c = g(n + m);
        if (c == Complex(0.0))
            continue;
        // Conjugating by zeta + beta zeta^m shifts the degree n+m coefficient
        // by a beta (n + 1 - m) and leaves lower degrees alone.
        const Complex beta = c / (a * double(m - n - 1));
        CVector hm = CVector::Zero(m + 1);
        hm(1) = 1.0;
        hm(m) = beta;
        const CVector hm_inv = series_revert(hm, order);
        g = series_compose(hm_inv, series_compose(g, hm, order), order);
        h = series_compose(h, hm, order);
    }
    return {h, g};
}

TranslationChart::TranslationChart(Complex base, int n, Complex a, CVector h)
    : base_(base), n_(n), a_(a), h_(poly_trim(h)), dh_(poly_derivative(h_))
{
}

Complex TranslationChart::local(Complex z) const
{
    return at_infinity() ? 1.0 / z : z - base_;
}

Complex TranslationChart::from_local(Complex u) const
{
    if (at_infinity())
        return u == Complex(0.0) ? kInfinity : 1.0 / u;
    return base_ + u;
}

Complex TranslationChart::from_local_derivative(Complex u) const
{
    return at_infinity() ? -1.0 / (u * u) : Complex(1.0);
}

Complex TranslationChart::normalize(Complex u) const
{
    if (h_.size() <= 2)
        return u;
    Complex zeta = u;
    for (int it = 0; it < 60; ++it) {
        const Complex step = (poly_eval(h_, zeta) - u) / poly_eval(dh_, zeta);
        zeta -= step;
        if (std::abs(step) <= 1e-16 * std::abs(zeta))
            return zeta;
    }
    if (std::abs(poly_eval(h_, zeta) - u) > 1e-12 * std::abs(u))
        throw NumericalError("normalizing coordinate did not converge");
    return zeta;
}

Complex TranslationChart::to_w(Complex z) const
{
    return to_w_with_derivative(z).first;
}

std::pair<Complex, Complex> TranslationChart::to_w_with_derivative(Complex z) const
{
    if (!is_finite(z) && !at_infinity())
        throw std::invalid_argument("translation chart: point at infinity");
    const Complex u = local(z);
    if (u == Complex(0.0))
        throw std::invalid_argument("translation chart: undefined at the base point");
    const Complex du_dz = at_infinity() ? -u * u : Complex(1.0);
    const Complex zeta = normalize(u);
    const Complex dzeta_du = 1.0 / poly_eval(dh_, zeta);
    const Complex zn = std::pow(zeta, n_);
    const Complex w = -1.0 / (double(n_) * a_ * zn);
    const Complex dw_dzeta = 1.0 / (a_ * zn * zeta);
    return {w, dw_dzeta * dzeta_du * du_dz};
}

Complex TranslationChart::from_w(Complex w, double direction) const
{
    const Complex zn = -1.0 / (double(n_) * a_ * w);
    const Complex root = std::pow(zn, 1.0 / double(n_));
    Complex best = root;
    double best_d = 1e300;
    for (int k = 0; k < n_; ++k) {
        const Complex cand = root * std::polar(1.0, kTwoPi * k / n_);
        const double d = angle_distance(std::arg(cand), direction);
        if (d < best_d) {
            best_d = d;
            best = cand;
        }
    }
    return from_local(poly_eval(h_, best));
}

ParabolicGerm germ_analyze(const MapSpec& map, Complex z0)
{
    int order = 24;
    CVector s = series_at(map, z0, order);
    if (std::abs(s(1) - 1.0) > 1e-8)
        throw std::invalid_argument("germ_analyze: multiplier is not 1");
    s(1) = 1.0;

    // Coefficients are compared after rescaling z by their growth rate, so a
    // small radius of convergence does not swamp the low-order terms.
    auto leading = [](const CVector& c) {
        double growth = 0.0;
        for (Eigen::Index k = 2; k < c.size(); ++k)
            growth = std::max(growth, std::pow(std::abs(c(k)), 1.0 / double(k - 1)));
        if (growth == 0.0)
            return -1;
        for (Eigen::Index k = 2; k < c.size(); ++k)
            if (std::abs(c(k)) > 1e-10 * std::pow(growth, double(k - 1)))
                return int(k);
        return -1;
    };
    const int lead = leading(s);
    if (lead < 0)
        throw NumericalError("germ_analyze: map agrees with the identity to the available order");
    const int n = lead - 1;
    if (3 * n + 1 > order) {
        order = 3 * n + 1;
        s = series_at(map, z0, order);
        s(1) = 1.0;
    }
    for (int k = 2; k <= n; ++k)
        s(k) = 0.0;

    ParabolicGerm g;
    g.base_point = z0;
    g.multiplicity_n = n;
    g.leading_coeff_a = s(n + 1);
    g.series = s;

    const Complex a = g.leading_coeff_a;
    const GermNormalization norm = normalize_germ(s, n, 2 * n, 3 * n + 1);
    g.resonant_b = norm.normalized(2 * n + 1);
    g.c_hat = double(n + 1) / (2.0 * n) - g.resonant_b / (double(n) * a * a);

    for (int k = 0; k < n; ++k) {
        g.attracting_dirs.push_back(wrap_angle((kPi - std::arg(a) + kTwoPi * k) / n));
        g.repelling_dirs.push_back(wrap_angle((-std::arg(a) + kTwoPi * k) / n));
    }
    std::sort(g.attracting_dirs.begin(), g.attracting_dirs.end());
    std::sort(g.repelling_dirs.begin(), g.repelling_dirs.end());

    g.chart = TranslationChart(z0, n, a, norm.h.head(2 * n + 1));
    return g;
}

Complex to_translation_chart(const ParabolicGerm& germ, Complex z)
{
    return germ.chart.to_w(z);
}

Complex from_translation_chart(const ParabolicGerm& germ, Complex w, int sector_index)
{
    if (sector_index < 0 || sector_index >= germ.multiplicity_n)
        throw std::invalid_argument("from_translation_chart: sector index out of range");
    if (!(std::abs(w) >= germ.validity_radius()))
        throw std::invalid_argument("from_translation_chart: w inside the validity radius");
    return germ.chart.from_w(w, germ.attracting_dirs[sector_index]);
}

}  // namespace parlike
