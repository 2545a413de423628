#include "parlike/arc.hpp"

#include <algorithm>
#include <cmath>

#include "parlike/potential.hpp"

namespace parlike {

namespace {

Complex lift(const MapSpec& f, Complex a, Complex b, Complex y) { return continue_preimage(f, a, b, y); }

struct Sample {
    double t;  // |t|
    Complex z;
};

// Layer on [tau, d tau] ascending -> layer on [tau/d, tau].
std::vector<Sample> pull_back_layer(const MapSpec& f, const std::vector<Sample>& layer, int d)
{
    const std::size_t n = layer.size();
    std::vector<Sample> out(n);
    out[n - 1] = {layer[n - 1].t / d, layer[0].z};
    for (std::size_t j = n - 1; j-- > 0;)
        out[j] = {layer[j].t / d, lift(f, layer[j + 1].z, layer[j].z, out[j + 1].z)};
    out[n - 1].t = layer[0].t;
    return out;
}

// Samples of one side of the arc, ascending in |t|.
std::vector<Sample> side_samples(const DividingArc& arc, int sign)
{
    std::vector<Sample> s;
    for (std::size_t i = 0; i < arc.params.size(); ++i) {
        const double t = arc.params[i];
        if (sign > 0 ? t > 0.0 : t < 0.0)
            s.push_back({std::abs(t), arc.points[i]});
    }
    std::sort(s.begin(), s.end(), [](const Sample& a, const Sample& b) { return a.t < b.t; });
    return s;
}

DividingArc assemble_arc(Complex base, const std::vector<Sample>& plus, const std::vector<Sample>& minus, int d,
                         int petal_plus, int petal_minus)
{
    DividingArc arc;
    arc.base_degree_d = d;
    arc.petal_plus = petal_plus;
    arc.petal_minus = petal_minus;
    for (auto it = minus.rbegin(); it != minus.rend(); ++it) {
        arc.params.push_back(-it->t);
        arc.points.push_back(it->z);
    }
    arc.params.push_back(0.0);
    arc.points.push_back(base);
    for (const Sample& s : plus) {
        arc.params.push_back(s.t);
        arc.points.push_back(s.z);
    }
    return arc;
}

// Append pulled-back layers below the lowest octave until n more octaves
// are covered. `samples` ascending and its top octave [tau, d tau] present.
void extend_down(const MapSpec& f, std::vector<Sample>& samples, int d, int per_octave, int n)
{
    if (samples.size() < std::size_t(per_octave + 1) || n <= 0)
        return;
    std::vector<Sample> layer(samples.begin(), samples.begin() + per_octave + 1);
    for (int k = 0; k < n; ++k) {
        layer = pull_back_layer(f, layer, d);
        samples.insert(samples.begin(), layer.begin(), layer.end() - 1);
    }
}

}  // namespace

Complex DividingArc::base() const
{
    const auto it = std::lower_bound(params.begin(), params.end(), 0.0);
    if (it != params.end() && *it == 0.0)
        return points[std::size_t(it - params.begin())];
    throw std::invalid_argument("dividing arc has no sample at t = 0");
}

Complex DividingArc::at(double t) const
{
    if (t == 0.0)
        return base();
    // Samples of the requested side as a range [lo, hi) ordered by |t|.
    const auto zero = std::lower_bound(params.begin(), params.end(), 0.0) - params.begin();
    const bool pos = t > 0.0;
    const std::ptrdiff_t first = pos ? zero + (zero < std::ptrdiff_t(params.size()) && params[zero] == 0.0) : 0;
    const std::ptrdiff_t last = pos ? std::ptrdiff_t(params.size()) : zero;
    const std::ptrdiff_t n = last - first;
    if (n <= 0)
        throw std::invalid_argument("dividing arc has no samples on this side");
    // k-th sample by increasing |t|.
    auto idx = [&](std::ptrdiff_t k) { return pos ? first + k : last - 1 - k; };
    auto s_of = [&](std::ptrdiff_t k) { return std::log(std::abs(params[idx(k)])); };
    const double ls = std::log(std::abs(t));
    const double tol = 1e-12;
    if (ls < s_of(0) - tol) {
        const double lam = std::abs(t) / std::abs(params[idx(0)]);
        return base() + lam * (points[idx(0)] - base());
    }
    if (ls > s_of(n - 1) + tol)
        throw std::invalid_argument("dividing arc: parameter beyond the sampled range");
    // Largest k with s_k <= ls.
    std::ptrdiff_t lo = 0, hi = n - 1;
    while (lo < hi) {
        const std::ptrdiff_t mid = (lo + hi + 1) / 2;
        if (s_of(mid) <= ls)
            lo = mid;
        else
            hi = mid - 1;
    }
    const std::ptrdiff_t j = lo;
    if (std::abs(ls - s_of(j)) <= tol)
        return points[idx(j)];
    if (j + 1 < n && std::abs(ls - s_of(j + 1)) <= tol)
        return points[idx(j + 1)];
    if (n < 4) {
        if (j + 1 >= n)
            return points[idx(n - 1)];
        const double lam = (ls - s_of(j)) / (s_of(j + 1) - s_of(j));
        return points[idx(j)] + lam * (points[idx(j + 1)] - points[idx(j)]);
    }
    const std::ptrdiff_t k0 = std::min(std::max<std::ptrdiff_t>(j - 1, 0), n - 4);
    Complex out(0.0);
    for (std::ptrdiff_t p = k0; p < k0 + 4; ++p) {
        double w = 1.0;
        for (std::ptrdiff_t q = k0; q < k0 + 4; ++q)
            if (q != p)
                w *= (ls - s_of(q)) / (s_of(p) - s_of(q));
        out += w * points[idx(p)];
    }
    return out;
}

DividingArc DividingArc::restricted(double lo, double hi) const
{
    DividingArc r;
    r.base_degree_d = base_degree_d;
    r.petal_plus = petal_plus;
    r.petal_minus = petal_minus;
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i] >= lo && params[i] <= hi) {
            r.params.push_back(params[i]);
            r.points.push_back(points[i]);
        }
    return r;
}

std::vector<Complex> DividingArc::half(int sign) const
{
    std::vector<Complex> out{base()};
    for (const Sample& s : side_samples(*this, sign))
        out.push_back(s.z);
    return out;
}

DividingArc build_dividing_arc(const MapSpec& map, const ParabolicGerm& germ, const FatouChart& plus,
                               const FatouChart& minus, Complex m_plus, Complex m_minus, int d, ArcGrid grid)
{
    if (d < 2)
        throw std::invalid_argument("build_dividing_arc: degree must be at least 2");
    if (germ.base_at_infinity())
        throw std::invalid_argument("build_dividing_arc: base point must be finite");
    const int total = grid.per_octave * grid.octaves;
    std::vector<Sample> ps, ms;
    for (int k = 0; k <= total; ++k) {
        const double t = std::pow(double(d), -double(k) / grid.per_octave);
        const double shift = -double(k) / grid.per_octave;
        try {
            ps.push_back({t, inverse_fatou(plus, m_plus + shift)});
            ms.push_back({t, inverse_fatou(minus, m_minus + shift)});
        } catch (const NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " (smallest |t| reached: " +
                                 std::to_string(std::pow(double(d), -double(k - 1) / grid.per_octave)) + ")");
        }
    }
    (void)map;
    std::reverse(ps.begin(), ps.end());
    std::reverse(ms.begin(), ms.end());
    return assemble_arc(germ.base_point, ps, ms, d, plus.petal_index(), minus.petal_index());
}

DividingArc extend_arc_by_dynamics(const MapSpec& map, const DividingArc& seed, int n_steps, const Region* clip)
{
    if (n_steps < 0)
        throw std::invalid_argument("extend_arc_by_dynamics: n_steps must be non-negative");
    if (n_steps == 0)
        return seed;
    const int d = seed.base_degree_d;
    std::vector<Sample> sides[2];
    for (int side = 0; side < 2; ++side) {
        std::vector<Sample> s = side_samples(seed, side == 0 ? 1 : -1);
        if (s.empty())
            continue;
        if (std::abs(s.back().t - d * s.front().t) > 1e-9 * s.back().t)
            throw std::invalid_argument("extend_arc_by_dynamics: seed must span exactly [tau, d tau]");
        std::vector<Sample> out = s;
        // Backward.
        std::vector<Sample> layer = s;
        for (int k = 0; k < n_steps; ++k) {
            layer = pull_back_layer(map, layer, d);
            out.insert(out.begin(), layer.begin(), layer.end() - 1);
        }
        // Forward, clipped.
        layer = s;
        bool stop = false;
        for (int k = 0; k < n_steps && !stop; ++k) {
            std::vector<Sample> next;
            for (std::size_t j = 1; j < layer.size(); ++j) {
                const Complex w = eval(map, layer[j].z);
                if (!is_finite(w) || (clip && !inside(*clip, w))) {
                    stop = true;
                    break;
                }
                next.push_back({layer[j].t * d, w});
            }
            out.insert(out.end(), next.begin(), next.end());
            next.insert(next.begin(), layer.back());
            layer = std::move(next);
        }
        sides[side] = std::move(out);
    }
    Complex base;
    try {
        base = seed.base();
    } catch (const std::invalid_argument&) {
        base = sides[0].empty() ? sides[1].front().z : sides[0].front().z;
    }
    return assemble_arc(base, sides[0], sides[1], d, seed.petal_plus, seed.petal_minus);
}

double check_arc_invariance(const MapSpec& map, const DividingArc& arc)
{
    const int d = arc.base_degree_d;
    double worst = 0.0;
    for (std::size_t i = 0; i < arc.params.size(); ++i) {
        const double t = arc.params[i];
        if (std::abs(t) > (1.0 + 1e-12) / d)
            continue;
        const Complex lhs = eval(map, arc.points[i]);
        const Complex rhs = arc.at(std::clamp(d * t, -1.0, 1.0));
        const double r = std::abs(lhs - rhs);
        worst = std::max(worst, std::isfinite(r) ? r : std::numeric_limits<double>::infinity());
    }
    return worst;
}

int potential_factor(const MapSpec& map)
{
    if (std::holds_alternative<CubicC>(map.variant()))
        return 3;
    if (const auto* q = std::get_if<QuadIter>(&map.variant()))
        return 1 << q->q;
    throw std::invalid_argument("ray arcs need a polynomial map (CubicC or QuadIter)");
}

DividingArc ray_dividing_arc(const MapSpec& map, Complex parabolic_point, double theta_plus, double theta_minus,
                             int d, RayArcOptions opts)
{
    const int D = potential_factor(map);
    const double e = std::log(double(D)) / std::log(double(d));
    const int po = opts.grid.per_octave;
    const int total = po * opts.grid.octaves;
    std::vector<Sample> sides[2];
    const double thetas[2] = {theta_plus, theta_minus};
    for (int side = 0; side < 2; ++side) {
        std::vector<Sample> s;
        Complex z = ray_point_descend(map, thetas[side], opts.top_potential);
        int k = 0;
        for (; k <= total; ++k) {
            const double t = std::pow(double(d), -double(k) / po);
            const double pot = opts.top_potential * std::pow(t, e);
            if (pot < opts.switch_potential && k > po)
                break;
            if (k > 0) {
                // Substeps keep Newton locked on the ray.
                const double prev = opts.top_potential * std::pow(double(d), -e * double(k - 1) / po);
                for (int sub = 1; sub <= 4; ++sub)
                    z = ray_point(map, thetas[side], prev * std::pow(pot / prev, sub / 4.0), z);
            }
            s.push_back({t, z});
        }
        std::reverse(s.begin(), s.end());
        // Continue the innermost whole octaves by pullback.
        const int have = (k - 1) / po;
        const int drop = int(s.size()) - (have * po + 1);
        s.erase(s.begin(), s.begin() + drop);
        extend_down(map, s, d, po, opts.grid.octaves - have);
        sides[side] = std::move(s);
    }
    DividingArc arc = assemble_arc(parabolic_point, sides[0], sides[1], d, 0, 0);
    try {
        const ParabolicGerm g = germ_analyze(map, parabolic_point);
        arc.petal_plus = arc_petal_index(g, arc, 1);
        arc.petal_minus = arc_petal_index(g, arc, -1);
    } catch (const std::exception&) {
        // Not parabolic: petal indices stay 0.
    }
    return arc;
}

int arc_petal_index(const ParabolicGerm& germ, const DividingArc& arc, int sign)
{
    const std::vector<Complex> h = arc.half(sign);
    if (h.size() < 2)
        throw std::invalid_argument("arc_petal_index: empty half arc");
    const double ang = std::arg(germ.chart.local(h[1]));
    int best = 0;
    for (std::size_t i = 1; i < germ.repelling_dirs.size(); ++i)
        if (angle_distance(ang, germ.repelling_dirs[i]) < angle_distance(ang, germ.repelling_dirs[best]))
            best = int(i);
    return best;
}

Complex example1_endpoint(const FatouChart& chart, double imag_part, double radius)
{
    auto g = [&](double x) { return std::abs(inverse_fatou(chart, Complex(x - 1.0, imag_part))) - radius; };
    double lo = -8.0;
    if (g(lo) > 0.0)
        throw NumericalError("example1_endpoint: the requested radius is reached too close to the base point");
    double hi = lo;
    double ghi = g(hi);
    while (ghi < 0.0) {
        lo = hi;
        hi += 0.5;
        if (hi > 60.0)
            throw NumericalError("example1_endpoint: radius not reached along the horizontal line");
        ghi = g(hi);
    }
    for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), imag_part};
}

}  // namespace parlike
