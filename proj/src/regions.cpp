#include "parlike/regions.hpp"

#include <fstream>
#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace parlike {

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double segment_distance(Complex p, Complex a, Complex b)
{
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d)
{
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on = [](Complex p, Complex q, Complex r) {
        return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
               std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
    };
    return (d1 == 0 && on(a, b, c)) || (d2 == 0 && on(a, b, d)) || (d3 == 0 && on(c, d, a)) ||
           (d4 == 0 && on(c, d, b));
}

}  // namespace

Region Region::from_boundary(std::vector<Complex> pts)
{
    Region r;
    r.boundary = std::move(pts);
    r.orientation = r.signed_area() >= 0.0 ? Orientation::Positive : Orientation::Negative;
    return r;
}

double Region::signed_area() const
{
    double a = 0.0;
    const std::size_t n = boundary.size();
    for (std::size_t i = 0; i < n; ++i)
        a += cross(boundary[i], boundary[(i + 1) % n]);
    return 0.5 * a;
}

double Region::diameter() const
{
    if (boundary.empty())
        return 0.0;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (Complex z : boundary) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    return std::hypot(x1 - x0, y1 - y0);
}

double Region::distance(Complex z) const
{
    double d = 1e300;
    const std::size_t n = boundary.size();
    for (std::size_t i = 0; i < n; ++i)
        d = std::min(d, segment_distance(z, boundary[i], boundary[(i + 1) % n]));
    return d;
}

bool Region::is_simple() const
{
    const std::size_t n = boundary.size();
    if (n < 3)
        return false;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        total += std::abs(boundary[(i + 1) % n] - boundary[i]);
    const double cell = std::max(2.0 * total / double(n), 1e-300);

    auto adjacent = [n](std::size_t s, std::size_t t) {
        const std::size_t diff = s > t ? s - t : t - s;
        return diff <= 1 || diff == n - 1;
    };
    auto crosses = [&](std::size_t s, std::size_t t) {
        return !adjacent(s, t) &&
               segments_intersect(boundary[s], boundary[(s + 1) % n], boundary[t], boundary[(t + 1) % n]);
    };

    // Segments covering many cells (mixed sampling densities) are tested
    // against every other segment instead of being binned.
    std::unordered_map<long long, std::vector<std::size_t>> grid;
    std::vector<std::size_t> long_segs;
    auto key = [](long long i, long long j) { return (i << 32) ^ (j & 0xffffffffLL); };
    for (std::size_t s = 0; s < n; ++s) {
        const Complex a = boundary[s], b = boundary[(s + 1) % n];
        const long long i0 = std::llround(std::floor(std::min(a.real(), b.real()) / cell));
        const long long i1 = std::llround(std::floor(std::max(a.real(), b.real()) / cell));
        const long long j0 = std::llround(std::floor(std::min(a.imag(), b.imag()) / cell));
        const long long j1 = std::llround(std::floor(std::max(a.imag(), b.imag()) / cell));
        if ((i1 - i0 + 1) * (j1 - j0 + 1) > 64) {
            long_segs.push_back(s);
            continue;
        }
        for (long long i = i0; i <= i1; ++i)
            for (long long j = j0; j <= j1; ++j)
                grid[key(i, j)].push_back(s);
    }
    for (const auto& [k, segs] : grid) {
        for (std::size_t p = 0; p < segs.size(); ++p)
            for (std::size_t q = p + 1; q < segs.size(); ++q)
                if (crosses(segs[p], segs[q]))
                    return false;
    }
    for (std::size_t s : long_segs)
        for (std::size_t t = 0; t < n; ++t)
            if (t != s && crosses(s, t))
                return false;
    return true;
}

Region Region::reversed() const
{
    Region r = *this;
    std::reverse(r.boundary.begin(), r.boundary.end());
    r.orientation = orientation == Orientation::Positive ? Orientation::Negative : Orientation::Positive;
    return r;
}

Region circle_region(Complex center, double radius, int samples)
{
    std::vector<Complex> pts(samples);
    for (int k = 0; k < samples; ++k)
        pts[k] = center + std::polar(radius, kTwoPi * k / samples);
    return Region::from_boundary(std::move(pts));
}

double boundary_epsilon(const Region& region) { return 1e-9 * region.diameter(); }

int winding_number(const Region& region, Complex z)
{
    int wn = 0;
    const auto& b = region.boundary;
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex p = b[i], q = b[(i + 1) % n];
        if (p.imag() <= z.imag()) {
            if (q.imag() > z.imag() && cross(q - p, z - p) > 0)
                ++wn;
        } else if (q.imag() <= z.imag() && cross(q - p, z - p) < 0) {
            --wn;
        }
    }
    return wn;
}

Membership contains(const Region& region, Complex z)
{
    if (!is_finite(z))
        return Membership::Outside;
    if (region.distance(z) <= boundary_epsilon(region))
        return Membership::Boundary;
    const int expected = region.orientation == Orientation::Positive ? 1 : -1;
    return winding_number(region, z) == expected ? Membership::Inside : Membership::Outside;
}

std::vector<Complex> densify(const std::vector<Complex>& pts, double max_step, bool closed)
{
    std::vector<Complex> out;
    const std::size_t n = pts.size();
    const std::size_t segs = closed ? n : (n == 0 ? 0 : n - 1);
    for (std::size_t i = 0; i < segs; ++i) {
        const Complex a = pts[i], b = pts[(i + 1) % n];
        const int k = std::max(1, int(std::ceil(std::abs(b - a) / max_step)));
        for (int j = 0; j < k; ++j)
            out.push_back(a + (b - a) * (double(j) / k));
    }
    if (!closed && n > 0)
        out.push_back(pts.back());
    return out;
}

double map_degree_raw(const MapSpec& map, const Region& domain, Complex w)
{
    const auto& [num, den] = map.rational_form();
    const CVector g = poly_sub(num, w * den);
    const CVector dg = poly_derivative(g);
    const CVector an = num.cwiseAbs().cast<Complex>();
    const CVector ad = den.cwiseAbs().cast<Complex>();
    const double diam = domain.diameter();
    const double max_step = 1e-2 * diam;
    const double max_turn = 2.0 * kPi / 180.0;

    auto gval = [&](Complex z) {
        const Complex v = poly_eval(g, z);
        const double scale = std::abs(poly_eval(an, std::abs(z))) + std::abs(w) * std::abs(poly_eval(ad, std::abs(z)));
        if (std::abs(v) <= 1e-13 * scale)
            throw std::invalid_argument("map_degree_on: w lies on the image of the boundary");
        return v;
    };

    Complex sum(0.0);
    std::function<void(Complex, Complex, Complex, Complex, int)> segment = [&](Complex a, Complex b, Complex ga,
                                                                                 Complex gb, int depth) {
        const bool fine = std::abs(b - a) <= max_step && std::abs(std::arg(gb / ga)) <= max_turn;
        if (fine || depth > 48) {
            if (!fine)
                throw NumericalError("map_degree_on: boundary refinement did not resolve the image");
            sum += 0.5 * (poly_eval(dg, a) / ga + poly_eval(dg, b) / gb) * (b - a);
            return;
        }
        const Complex m = 0.5 * (a + b);
        const Complex gm = gval(m);
        segment(a, m, ga, gm, depth + 1);
        segment(m, b, gm, gb, depth + 1);
    };
    const auto& pts = domain.boundary;
    const std::size_t n = pts.size();
    if (n < 3)
        throw std::invalid_argument("map_degree_on: boundary has fewer than 3 samples");
    std::vector<Complex> gv(n);
    for (std::size_t i = 0; i < n; ++i)
        gv[i] = gval(pts[i]);
    for (std::size_t i = 0; i < n; ++i)
        segment(pts[i], pts[(i + 1) % n], gv[i], gv[(i + 1) % n], 0);
    double raw = (sum / (kTwoPi * kI)).real();
    if (domain.orientation == Orientation::Negative)
        raw = -raw;
    return raw;
}

int map_degree_on(const MapSpec& map, const Region& domain, Complex w)
{
    const double raw = map_degree_raw(map, domain, w);
    const double r = std::round(raw);
    if (std::abs(raw - r) > 0.05)
        throw NumericalError("map_degree_on: quadrature value " + std::to_string(raw) +
                             " is not within 0.05 of an integer");
    return int(r);
}

namespace {

Complex nearest_of(const std::vector<Complex>& pts, Complex y, double* d1, double* d2)
{
    Complex best = kInfinity;
    *d1 = *d2 = std::numeric_limits<double>::infinity();
    for (Complex p : pts) {
        if (!is_finite(p))
            continue;
        const double d = std::abs(p - y);
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

// Lift the boundary segment a -> b starting from y (f(y) = a), appending the
// lifted samples after y. Subdivides where the branch choice is not clear.
void lift_segment(const MapSpec& f, Complex a, Complex b, Complex y, double max_step, std::vector<Complex>& out,
                  int depth = 0)
{
    double d1, d2;
    const Complex next = nearest_of(preimages(f, b), y, &d1, &d2);
    const bool clear = d2 > 4.0 * d1 && d1 <= max_step;
    if (!clear && depth < 40) {
        const Complex m = 0.5 * (a + b);
        lift_segment(f, a, m, y, max_step, out, depth + 1);
        lift_segment(f, m, b, out.back(), max_step, out, depth + 1);
        return;
    }
    if (!clear || !is_finite(next))
        throw NumericalError("preimage lift: branch ambiguity near a critical value on the boundary");
    out.push_back(next);
}

}  // namespace

Complex continue_preimage(const MapSpec& map, Complex a, Complex b, Complex y)
{
    std::vector<Complex> out{y};
    lift_segment(map, a, b, y, std::numeric_limits<double>::infinity(), out);
    return out.back();
}

std::vector<Region> preimage_components(const MapSpec& map, const Region& region)
{
    const auto& pts = region.boundary;
    const std::size_t n = pts.size();
    if (n < 3)
        throw std::invalid_argument("preimage_components: boundary has fewer than 3 samples");
    std::vector<Complex> starts;
    for (Complex p : preimages(map, pts[0]))
        if (is_finite(p))
            starts.push_back(p);
    const double max_step = 5e-3 * region.diameter();
    std::vector<bool> used(starts.size(), false);
    std::vector<Region> out;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        if (used[s])
            continue;
        used[s] = true;
        std::vector<Complex> curve{starts[s]};
        for (int loop = 0; loop < map.degree() + 1; ++loop) {
            for (std::size_t i = 0; i < n; ++i)
                lift_segment(map, pts[i], pts[(i + 1) % n], curve.back(), max_step, curve);
            // curve.back() lies over pts[0] again.
            double best = 1e300;
            std::size_t which = 0;
            for (std::size_t k = 0; k < starts.size(); ++k) {
                const double d = std::abs(starts[k] - curve.back());
                if (d < best) {
                    best = d;
                    which = k;
                }
            }
            curve.pop_back();
            if (which == s)
                break;
            used[which] = true;
            curve.push_back(starts[which]);
        }
        out.push_back(Region::from_boundary(std::move(curve)));
    }
    return out;
}

Region preimage_component(const MapSpec& map, const Region& region, Complex z)
{
    for (Region& r : preimage_components(map, region))
        if (contains(r, z) == Membership::Inside)
            return r;
    throw NumericalError("preimage_component: no component contains the given point");
}

Region read_region(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open region file " + path);
    std::vector<Complex> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        double re, im;
        if (!(ss >> re))
            continue;
        if (!(ss >> im))
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected \"re im\"");
        pts.emplace_back(re, im);
    }
    if (pts.size() < 3)
        throw std::invalid_argument(path + ": a region needs at least 3 boundary points");
    return Region::from_boundary(std::move(pts));
}

}  // namespace parlike

namespace parlike {

RegionLocator::RegionLocator(Region region) : region_(std::move(region))
{
    const auto& b = region_.boundary;
    const std::size_t n = b.size();
    if (n < 3)
        throw std::invalid_argument("RegionLocator: boundary has fewer than 3 samples");
    eps_ = boundary_epsilon(region_);
    double xa = 1e300, xb = -1e300, ya = 1e300, yb = -1e300;
    for (Complex z : b) {
        xa = std::min(xa, z.real());
        xb = std::max(xb, z.real());
        ya = std::min(ya, z.imag());
        yb = std::max(yb, z.imag());
    }
    const int g = std::clamp(int(2.0 * std::sqrt(double(n))), 16, 512);
    cell_ = std::max(xb - xa, yb - ya) / g * (1.0 + 1e-9);
    x0_ = xa - cell_;
    y0_ = ya - cell_;
    nx_ = int((xb - xa) / cell_) + 3;
    ny_ = int((yb - ya) / cell_) + 3;
    cells_.assign(std::size_t(nx_) * ny_, {});

    auto cell_of = [&](double v, double o, int m) { return std::clamp(int(std::floor((v - o) / cell_)), 0, m - 1); };
    for (std::size_t s = 0; s < n; ++s) {
        const Complex p = b[s], q = b[(s + 1) % n];
        const int pieces = std::max(1, int(std::ceil(std::abs(q - p) / cell_)));
        for (int k = 0; k < pieces; ++k) {
            const Complex a = p + (q - p) * (double(k) / pieces);
            const Complex c = p + (q - p) * (double(k + 1) / pieces);
            const int i0 = cell_of(std::min(a.real(), c.real()) - eps_, x0_, nx_);
            const int i1 = cell_of(std::max(a.real(), c.real()) + eps_, x0_, nx_);
            const int j0 = cell_of(std::min(a.imag(), c.imag()) - eps_, y0_, ny_);
            const int j1 = cell_of(std::max(a.imag(), c.imag()) + eps_, y0_, ny_);
            for (int j = j0; j <= j1; ++j)
                for (int i = i0; i <= i1; ++i) {
                    auto& v = cells_[std::size_t(j) * nx_ + i];
                    if (v.empty() || v.back() != int(s))
                        v.push_back(int(s));
                }
        }
    }

    // Winding numbers of the cell centers, row by row.
    center_winding_.assign(std::size_t(nx_) * ny_, 0);
    std::vector<std::vector<std::pair<double, int>>> rows(ny_);
    for (std::size_t s = 0; s < n; ++s) {
        const Complex p = b[s], q = b[(s + 1) % n];
        const double lo = std::min(p.imag(), q.imag()), hi = std::max(p.imag(), q.imag());
        const int j0 = std::max(0, int(std::ceil((lo - y0_) / cell_ - 0.5)));
        const int j1 = std::min(ny_ - 1, int(std::floor((hi - y0_) / cell_ - 0.5)));
        for (int j = j0; j <= j1; ++j) {
            const double y = y0_ + (j + 0.5) * cell_;
            // Same half-open convention as winding_number().
            int dir = 0;
            if (p.imag() <= y && q.imag() > y)
                dir = 1;
            else if (p.imag() > y && q.imag() <= y)
                dir = -1;
            if (dir == 0)
                continue;
            const double x = p.real() + (y - p.imag()) * (q.real() - p.real()) / (q.imag() - p.imag());
            rows[j].push_back({x, dir});
        }
    }
    for (int j = 0; j < ny_; ++j) {
        auto& r = rows[j];
        std::sort(r.begin(), r.end());
        // A center left of an upward crossing gains +1, of a downward one -1.
        int acc = 0;
        std::size_t k = r.size();
        for (int i = nx_ - 1; i >= 0; --i) {
            const double x = x0_ + (i + 0.5) * cell_;
            while (k > 0 && r[k - 1].first > x) {
                acc += r[k - 1].second;
                --k;
            }
            center_winding_[std::size_t(j) * nx_ + i] = acc;
        }
    }
}

Membership RegionLocator::locate(Complex z) const
{
    if (!is_finite(z))
        return Membership::Outside;
    const double fx = (z.real() - x0_) / cell_, fy = (z.imag() - y0_) / cell_;
    if (fx < 0 || fy < 0 || fx >= nx_ || fy >= ny_)
        return Membership::Outside;
    const int i = int(fx), j = int(fy);
    const std::size_t idx = std::size_t(j) * nx_ + i;
    const int expected = region_.orientation == Orientation::Positive ? 1 : -1;
    const auto& segs = cells_[idx];
    const auto& b = region_.boundary;
    const std::size_t n = b.size();
    const Complex c(x0_ + (i + 0.5) * cell_, y0_ + (j + 0.5) * cell_);
    int w = center_winding_[idx];
    for (int s : segs) {
        const Complex p = b[s], q = b[(s + 1) % n];
        if (segment_distance(z, p, q) <= eps_)
            return Membership::Boundary;
        const double sc = cross(q - p, c - p), sz = cross(q - p, z - p);
        const double sp = cross(z - c, p - c), sq = cross(z - c, q - c);
        if (sc == 0.0 || sp == 0.0 || sq == 0.0)  // degenerate: exact count
            return winding_number(region_, z) == expected ? Membership::Inside : Membership::Outside;
        if (((sc < 0 && sz > 0) || (sc > 0 && sz < 0)) && ((sp < 0 && sq > 0) || (sp > 0 && sq < 0)))
            w += sz > 0 ? 1 : -1;
    }
    return w == expected ? Membership::Inside : Membership::Outside;
}

}  // namespace parlike
