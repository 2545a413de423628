#include "parlike/instances.hpp"

#include <algorithm>
#include <cmath>

#include "parlike/potential.hpp"

namespace parlike {

namespace {

// Append `pts` to `out`, skipping the first point when it repeats the last.
void append(std::vector<Complex>& out, const std::vector<Complex>& pts)
{
    for (Complex z : pts)
        if (out.empty() || std::abs(z - out.back()) > 1e-12 * (1.0 + std::abs(z)))
            out.push_back(z);
}

std::vector<Complex> reversed(std::vector<Complex> v)
{
    std::reverse(v.begin(), v.end());
    return v;
}

std::vector<Complex> ray_points(const MapSpec& f, double angle, double pot_hi, double pot_lo)
{
    const RayTrace r = trace_external_ray(f, angle, pot_hi, pot_lo, 16);
    if (!r.complete())
        throw NumericalError("external ray " + std::to_string(angle) + ": " + r.failure);
    return r.points;  // from pot_hi down
}

// Equipotential through the listed angles, with each listed angle a sample.
std::vector<Complex> equipotential_through(const MapSpec& f, double potential, const std::vector<double>& angles,
                                           double samples_per_turn)
{
    std::vector<Complex> out;
    for (std::size_t i = 0; i + 1 < angles.size(); ++i) {
        const int n = std::max(8, int(std::ceil(std::abs(angles[i + 1] - angles[i]) * samples_per_turn)));
        append(out, trace_equipotential(f, potential, angles[i], angles[i + 1], n));
    }
    return out;
}

std::vector<Complex> chord(Complex a, Complex b, double step)
{
    const int n = std::max(2, int(std::ceil(std::abs(b - a) / step)));
    std::vector<Complex> out;
    for (int k = 0; k <= n; ++k)
        out.push_back(a + (b - a) * (double(k) / n));
    return out;
}

RayArcOptions ray_options(const InstanceOptions& o)
{
    RayArcOptions r;
    r.grid = {o.per_octave, o.octaves};
    return r;
}

}  // namespace

Complex PLInstance::to_plane(Complex zeta) const
{
    if (!inverted_chart())
        return zeta;
    return zeta == Complex(0.0) ? kInfinity : chart_center + 1.0 / zeta;
}

Complex PLInstance::from_plane(Complex z) const
{
    if (!inverted_chart())
        return z;
    return is_infinity(z) ? Complex(0.0) : 1.0 / (z - chart_center);
}

Complex c_pq(int p, int q)
{
    const Complex lam = std::polar(1.0, kTwoPi * double(p) / double(q));
    return lam / 2.0 - lam * lam / 4.0;
}

Complex fat_rabbit_c() { return Complex(-1.0, 3.0 * std::sqrt(3.0)) / 8.0; }

Assembly assemble_instance(const PLInstance& inst, const AssembleOptions& opts)
{
    return assemble(inst.map, inst.U_prime, inst.U, inst.gamma, opts);
}

PLInstance example1_instance(double eps, double imag_m, InstanceOptions o)
{
    const auto charts = example1_repelling_charts();
    const Complex mp = example1_endpoint(charts.plus, -imag_m, 1.0 + eps);
    const Complex mm = example1_endpoint(charts.minus, imag_m, 1.0 + eps);
    return example1_instance_from(eps, mp, mm, o);
}

PLInstance example1_instance_from(double eps, Complex m_plus, Complex m_minus, InstanceOptions o)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("example1: epsilon must be positive");
    if (!(m_plus.imag() < 0.0 && m_minus.imag() > 0.0))
        throw std::invalid_argument("example1: need Im m_plus < 0 < Im m_minus");
    PLInstance I;
    I.name = "example1-h2";
    I.map = MapSpec::h_two();
    const double R = 1.0 + eps;
    const auto charts = example1_repelling_charts();
    const Complex mp = m_plus, mm = m_minus;
    const ParabolicGerm germ = germ_analyze(I.map, 1.0);
    I.gamma = build_dividing_arc(I.map, germ, charts.plus, charts.minus, mp, mm, 2, {o.per_octave, o.octaves});

    // U' is the disk of radius R sampled so that gamma(+-1/2) and their
    // negatives are vertices; U is the image of its upper half circle.
    std::vector<Complex> circle;
    const int N = 2048;
    for (int k = 0; k < N; ++k)
        circle.push_back(std::polar(R, kTwoPi * k / N));
    for (Complex g : {I.gamma.at(0.5), I.gamma.at(-0.5)}) {
        circle.push_back(g);
        circle.push_back(-g);
    }
    auto angle = [](Complex z) {
        const double a = std::arg(z);
        return a < 0.0 ? a + kTwoPi : a;
    };
    std::sort(circle.begin(), circle.end(), [&](Complex a, Complex b) { return angle(a) < angle(b); });
    std::vector<Complex> image;
    for (Complex z : circle)
        if (angle(z) < kPi - 1e-12)
            image.push_back(eval(I.map, z));
    I.U_prime = Region::from_boundary(std::move(circle));
    I.U = Region::from_boundary(std::move(image));
    return I;
}

PLInstance example2_instance(InstanceOptions o)
{
    PLInstance I;
    I.name = "example2-cubic";
    I.map = MapSpec::cubic(kI);
    const MapSpec& f = I.map;
    I.gamma = ray_dividing_arc(f, 0.0, 0.0, 0.5, 2, ray_options(o));

    // Chord between the rays 1/26 and 6/13 (period 3) just above the
    // parabolic point, below the critical value.
    const double thR = 1.0 / 26.0, thL = 6.0 / 13.0, low = 1e-4;
    const auto rayR = ray_points(f, thR, 1.0, low);
    const auto rayL = ray_points(f, thL, 1.0, low);
    std::vector<Complex> b;
    append(b, chord(rayR.back(), rayL.back(), 2e-3));
    append(b, reversed(rayL));
    append(b, equipotential_through(f, 1.0, {thL, 0.5, 1.0, 1.0 + thR}, 2600.0));
    append(b, rayR);
    b.pop_back();  // closes onto the first chord point
    I.U = Region::from_boundary(std::move(b));
    I.U_prime = preimage_component(f, I.U, 0.0);
    return I;
}

PLInstance example3_instance(InstanceOptions o)
{
    PLInstance I;
    I.name = "example3-fat-rabbit";
    const Complex c = fat_rabbit_c();
    I.map = MapSpec::quad_iter(c, 3);
    const MapSpec f1 = MapSpec::quad_iter(c, 1);
    const Complex a = Complex(-1.0, std::sqrt(3.0)) / 4.0;
    I.gamma = ray_dividing_arc(I.map, a, 1.0 / 7.0, 2.0 / 7.0, 2, ray_options(o));

    // Angles of period 4 under z^8 on the boundary of the component A0 of
    // 0, on either side of the parabolic point, and their preimages on the
    // boundary of A2.
    const double th0a = 2344.0 / 4095.0, th0b = 83.0 / 585.0;
    const double th2a = th0a / 2.0, th2b = (th0b + 1.0) / 2.0;
    const double low = 1e-4;
    const auto r0a = ray_points(I.map, th0a, 1.0, low);
    const auto r0b = ray_points(I.map, th0b, 1.0, low);
    const auto r2a = ray_points(I.map, th2a, 1.0, low / 2.0);
    const auto r2b = ray_points(I.map, th2b, 1.0, low / 2.0);
    const auto chord0 = chord(r0a.back(), r0b.back(), 2e-3);
    // Chord across A2: the lift of chord0 through the endpoint of ray th2a.
    std::vector<Complex> chord2{r2a.back()};
    for (std::size_t k = 1; k < chord0.size(); ++k)
        chord2.push_back(continue_preimage(f1, chord0[k - 1], chord0[k], chord2.back()));
    if (std::abs(chord2.back() - r2b.back()) > 1e-8)
        throw NumericalError("example3: lifted chord does not end on the ray " + std::to_string(th2b));

    std::vector<Complex> b;
    append(b, chord0);
    append(b, reversed(r0b));
    append(b, equipotential_through(I.map, 1.0, {th0b, 1.0 / 7.0, 2.0 / 7.0, th2a}, 2600.0));
    append(b, r2a);
    append(b, chord2);
    append(b, reversed(r2b));
    append(b, equipotential_through(I.map, 1.0, {th2b, 4.0 / 7.0, th0a}, 2600.0));
    append(b, r0a);
    b.pop_back();
    I.U = Region::from_boundary(std::move(b));
    I.U_prime = preimage_component(I.map, I.U, a);
    return I;
}

PLInstance perone_instance(Complex A, double extra_radius, InstanceOptions o)
{
    if (A == Complex(0.0))
        throw std::invalid_argument("perone_instance: A = 0 has a double parabolic point; not supported");
    PLInstance I;
    I.name = "perone";
    const MapSpec P = MapSpec::per_one(A);
    FatouOptions fo;
    fo.entry_budget = 2000;
    const FatouChart raw(P, kInfinity, PetalKind::Attracting, 0, fo);
    // Anchor on the critical value 2 + A, or on A - 2 when the former is
    // not in the parabolic basin (it is then the other critical value that
    // the basin must contain).
    Complex other = A - 2.0;
    FatouChart chart = raw;
    try {
        chart = raw.anchored(2.0 + A, 1.0);
    } catch (const NumericalError&) {
        chart = raw.anchored(A - 2.0, 1.0);
        other = 2.0 + A;
    }

    // Fatou coordinate of the other critical value, when it is in the basin.
    double im_cv = 0.0;
    std::optional<Complex> cv;
    try {
        cv = fatou(chart, other);
        im_cv = std::abs(cv->imag());
    } catch (const NumericalError&) {
    }
    const double r = std::max(1.0 + im_cv, 2.0) + 0.5 + extra_radius;
    double z0 = r + 0.5;
    if (cv) {
        bool found = false;
        for (double off : {0.5, 0.25, 0.75, 0.1, 0.9})
            if (std::abs(*cv - (r + off)) > r + 1e-6) {
                z0 = r + off;
                found = true;
                break;
            }
        if (!found)
            throw NumericalError("perone_instance: the critical value A-2 falls in every candidate disk");
    }
    // Horizontal lines at +-y0: the strip contains phi(A-2), and each line
    // reaches the disk before leaving its translate by -1.
    const double ymax = std::sqrt(r * r - 0.25);
    const double y0 = im_cv + 1.0 < ymax - 0.25 ? im_cv + 1.0 : 0.5 * (im_cv + ymax);
    const double xs = z0 - std::sqrt(r * r - y0 * y0);
    const Complex m_plus(xs, y0), m_minus(xs, -y0);

    const Complex zB = inverse_fatou(chart, z0);
    I.chart_center = zB;
    // zeta = 1/(z - zB) conjugates P_A to zeta (zB zeta + 1) / (1 + (zB + A) zeta + (A zB + 1) zeta^2).
    CVector num(3), den(3);
    num << 0.0, 1.0, zB;
    den << 1.0, zB + A, A * zB + 1.0;
    I.map = MapSpec::rational(num, den);
    auto zeta = [&](Complex z) { return 1.0 / (z - zB); };

    // Boundary of U: psi of the circle |s - z0| = r, obtained from the
    // asymptotic chart K units to the right and pulled back K times.
    const int N = 2048;
    std::vector<double> thetas;
    for (int k = 0; k < N; ++k)
        thetas.push_back(kTwoPi * k / N);
    for (Complex m : {m_plus, m_minus}) {
        double t = std::arg(m - z0);
        thetas.push_back(t < 0.0 ? t + kTwoPi : t);
    }
    std::sort(thetas.begin(), thetas.end());
    std::vector<Complex> s(thetas.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        s[k] = z0 + std::polar(r, thetas[k]);
    const double reval = chart.entry_radius();
    const Complex shift = chart.normalization_shift();
    int K = int(std::ceil(reval - (z0 - r) + 2.0));
    std::vector<Complex> curve;
    for (int tries = 0;; ++tries) {
        curve.clear();
        bool ok = true;
        for (Complex sk : s) {
            const Complex w = chart.asymptotic_inverse(sk - shift + double(K));
            if (w.real() < reval || std::abs(w) < reval) {
                ok = false;
                break;
            }
            curve.push_back(zeta(chart.deep_chart().from_w(w, chart.direction())));
        }
        if (ok)
            break;
        if (tries > 20)
            throw NumericalError("perone_instance: could not place the disk in the petal chart");
        K += 4;
    }
    for (int level = K - 1; level >= 0; --level) {
        std::vector<Complex> next(curve.size());
        next[0] = zeta(inverse_fatou(chart, s[0] + double(level)));
        for (std::size_t k = 1; k < curve.size(); ++k)
            next[k] = continue_preimage(I.map, curve[k - 1], curve[k], next[k - 1]);
        if (std::abs(continue_preimage(I.map, curve.back(), curve[0], next.back()) - next[0]) >
            1e-9 * (1.0 + std::abs(next[0])))
            throw NumericalError("perone_instance: pulled-back disk boundary does not close");
        curve = std::move(next);
    }
    I.U = Region::from_boundary(curve);
    I.U_prime = preimage_component(I.map, I.U, 0.0);

    // gamma on [1/2, 1] from the Fatou coordinate, continued down by pullback.
    DividingArc seed;
    seed.base_degree_d = 2;
    std::vector<std::pair<double, Complex>> samples;
    for (int k = 0; k <= o.per_octave; ++k) {
        const double t = std::pow(2.0, -double(k) / o.per_octave);
        const double ds = -double(k) / o.per_octave;
        samples.push_back({t, zeta(inverse_fatou(chart, m_plus + ds))});
        samples.push_back({-t, zeta(inverse_fatou(chart, m_minus + ds))});
    }
    samples.push_back({0.0, 0.0});
    std::sort(samples.begin(), samples.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [t, z] : samples) {
        seed.params.push_back(t);
        seed.points.push_back(z);
    }
    DividingArc g = extend_arc_by_dynamics(I.map, seed, o.octaves, &I.U);
    I.gamma = g.restricted(-1.0, 1.0);
    const ParabolicGerm germ = germ_analyze(I.map, 0.0);
    I.gamma.petal_plus = arc_petal_index(germ, I.gamma, 1);
    I.gamma.petal_minus = arc_petal_index(germ, I.gamma, -1);
    return I;
}

PLInstance rotated_control_instance(InstanceOptions o)
{
    PLInstance I = example1_instance(0.25, 0.5, o);
    I.name = "rotated-control";
    const RegionLocator locU(I.U);
    const Complex base = 1.0;
    auto rot = [&](Complex z) { return base + kI * (z - base); };
    const auto& bd = I.U.boundary;

    DividingArc out;
    out.base_degree_d = I.gamma.base_degree_d;
    out.petal_plus = I.gamma.petal_plus;
    out.petal_minus = I.gamma.petal_minus;
    std::vector<std::pair<double, Complex>> all{{0.0, base}};
    for (int sign : {1, -1}) {
        std::vector<std::pair<double, Complex>> side;
        for (std::size_t i = 0; i < I.gamma.params.size(); ++i)
            if (sign * I.gamma.params[i] > 0.0)
                side.push_back({std::abs(I.gamma.params[i]), rot(I.gamma.points[i])});
        std::sort(side.begin(), side.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        // A quarter turn can leave the whole arc inside U; it is then
        // continued along its last chord until it leaves.
        const double ratio = side.back().first / side[side.size() - 2].first;
        for (int guard = 0; locU.inside(side.back().second); ++guard) {
            if (guard > 100000)
                throw NumericalError("rotated control: continued arc never leaves U");
            const Complex step = side.back().second - side[side.size() - 2].second;
            side.push_back({side.back().first * ratio, side.back().second + step});
        }
        // Clip at the first exit from U, ending exactly on its boundary.
        std::size_t k = 0;
        while (k < side.size() && locU.inside(side[k].second))
            ++k;
        if (k == 0 || k == side.size())
            throw NumericalError("rotated control: rotated arc does not cross the boundary of U");
        const Complex p = side[k - 1].second, q = side[k].second;
        Complex hit = q;
        double lam = 1.0;
        for (std::size_t j = 0; j < bd.size(); ++j) {
            const Complex a = bd[j], b = bd[(j + 1) % bd.size()];
            const Complex e = q - p, g = b - a, h = a - p;
            const double den = e.real() * g.imag() - e.imag() * g.real();
            if (den == 0.0)
                continue;
            const double u = (h.real() * g.imag() - h.imag() * g.real()) / den;
            const double v = (h.real() * e.imag() - h.imag() * e.real()) / den;
            if (u >= 0.0 && u <= lam && v >= 0.0 && v <= 1.0) {
                lam = u;
                hit = p + u * e;
            }
        }
        const double t_hit = side[k - 1].first * std::pow(side[k].first / side[k - 1].first, lam);
        side.resize(k);
        side.push_back({t_hit, hit});
        for (auto& [t, z] : side)
            all.push_back({sign * t / t_hit, z});
        all.back().first = sign;
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [t, z] : all) {
        out.params.push_back(t);
        out.points.push_back(z);
    }
    I.gamma = std::move(out);
    return I;
}

}  // namespace parlike
