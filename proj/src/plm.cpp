#include "parlike/plm.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>

namespace parlike {

namespace {

struct BoundaryPos {
    std::size_t seg = 0;
    double frac = 0.0;
    double dist = 1e300;
};

BoundaryPos nearest_position(const std::vector<Complex>& b, Complex z)
{
    BoundaryPos best;
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex p = b[i], ab = b[(i + 1) % n] - p;
        const double len2 = std::norm(ab);
        const double t = len2 > 0.0 ? std::clamp(((z - p) * std::conj(ab)).real() / len2, 0.0, 1.0) : 0.0;
        const double d = std::abs(z - (p + t * ab));
        if (d < best.dist)
            best = {i, t, d};
    }
    return best;
}

// Vertices strictly after position `from` up to position `to`, walking
// forward around the polygon.
void walk(const std::vector<Complex>& b, BoundaryPos from, BoundaryPos to, std::vector<Complex>& out)
{
    const std::size_t n = b.size();
    std::size_t count = (to.seg + n - from.seg) % n;
    if (count == 0 && to.frac < from.frac)
        count = n;
    for (std::size_t k = 1; k <= count; ++k)
        out.push_back(b[(from.seg + k) % n]);
}

Region positive(const Region& r) { return r.orientation == Orientation::Positive ? r : r.reversed(); }

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Deterministic interior samples at least `margin` away from the boundary.
std::vector<Complex> interior_samples(const Region& r, const RegionLocator& loc, int count, double margin,
                                      std::mt19937_64& rng)
{
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (Complex z : r.boundary) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
    std::vector<Complex> out;
    for (int tries = 0; tries < 200000 && int(out.size()) < count; ++tries) {
        const Complex z(ux(rng), uy(rng));
        if (loc.inside(z) && r.distance(z) >= margin)
            out.push_back(z);
    }
    return out;
}

std::vector<Complex> arc_path(const DividingArc& arc, double tmax)
{
    std::vector<Complex> path{arc.at(-tmax)};
    for (std::size_t i = 0; i < arc.params.size(); ++i)
        if (std::abs(arc.params[i]) < tmax * (1.0 - 1e-12))
            path.push_back(arc.points[i]);
    path.push_back(arc.at(tmax));
    return path;
}

}  // namespace

const char* clause_name(Clause c)
{
    switch (c) {
    case Clause::DomainShape: return "domain_shape";
    case Clause::ProperDegree: return "properness_degree";
    case Clause::ParabolicMultiplier: return "parabolic_multiplier";
    case Clause::ArcInvariance: return "arc_invariance";
    case Clause::ArcEndpoints: return "arc_endpoints";
    case Clause::OmegaCompactness: return "omega_compactness";
    case Clause::DeltaIsomorphism: return "delta_isomorphism";
    case Clause::AttractingPetalInDelta: return "attracting_petal_in_delta";
    }
    return "?";
}

bool ValidationReport::any_fail() const
{
    return std::any_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.status == ClauseStatus::Fail; });
}

std::vector<Clause> ValidationReport::failed() const
{
    std::vector<Clause> out;
    for (int i = 0; i < kClauseCount; ++i)
        if (clauses[i].status == ClauseStatus::Fail)
            out.push_back(Clause(i));
    return out;
}

std::string ValidationReport::to_text() const
{
    std::ostringstream os;
    for (int i = 0; i < kClauseCount; ++i) {
        const char* st = clauses[i].status == ClauseStatus::Pass ? "pass"
                         : clauses[i].status == ClauseStatus::Fail ? "FAIL"
                                                                   : "unverifiable";
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-26s %-13s ", clause_name(Clause(i)), st);
        os << buf << clauses[i].detail << '\n';
    }
    return os.str();
}

Region insert_boundary_point(const Region& region, Complex z)
{
    Region r = region;
    auto& b = r.boundary;
    const double snap = 1e-9 * region.diameter();
    for (Complex& v : b)
        if (std::abs(v - z) <= snap) {
            v = z;
            return r;
        }
    const BoundaryPos p = nearest_position(b, z);
    b.insert(b.begin() + std::ptrdiff_t(p.seg + 1), z);
    return r;
}

std::pair<Region, Region> split_region(const Region& region, const std::vector<Complex>& path)
{
    if (path.size() < 2)
        throw std::invalid_argument("split_region: path needs at least two points");
    const Region r = positive(region);
    const auto& b = r.boundary;
    const BoundaryPos a = nearest_position(b, path.front());
    const BoundaryPos e = nearest_position(b, path.back());
    std::vector<Complex> left(path.begin(), path.end());
    walk(b, e, a, left);
    std::vector<Complex> right(path.rbegin(), path.rend());
    walk(b, a, e, right);
    // Drop boundary vertices duplicating the path ends.
    auto dedupe = [](std::vector<Complex>& v) {
        std::vector<Complex> o;
        for (Complex z : v)
            if (o.empty() || std::abs(z - o.back()) > 0.0)
                o.push_back(z);
        while (o.size() > 1 && o.back() == o.front())
            o.pop_back();
        v = std::move(o);
    };
    dedupe(left);
    dedupe(right);
    return {Region::from_boundary(std::move(left)), Region::from_boundary(std::move(right))};
}

Assembly assemble(const MapSpec& map, const Region& U_prime_in, const Region& U_in, const DividingArc& gamma,
                  const AssembleOptions& opts)
{
    if (U_in.boundary.size() < 3 || U_prime_in.boundary.size() < 3)
        throw std::invalid_argument("assemble: regions need at least 3 boundary samples");
    if (U_in.signed_area() == 0.0 || U_prime_in.signed_area() == 0.0)
        throw std::invalid_argument("assemble: degenerate region (zero area)");
    if (gamma.params.size() < 3 || std::abs(gamma.params.front() + 1.0) > 1e-9 ||
        std::abs(gamma.params.back() - 1.0) > 1e-9)
        throw std::invalid_argument("assemble: dividing arc must be sampled on [-1, 1]");
    const Complex base = gamma.base();
    const int d = gamma.base_degree_d;
    const Complex g_m1 = gamma.points.front(), g_p1 = gamma.points.back();
    {
        const Region u = positive(U_in);
        const double far = 0.1 * u.diameter();
        if (u.distance(g_m1) > far || u.distance(g_p1) > far)
            throw std::invalid_argument("assemble: dividing arc does not reach the boundary of U");
    }

    Assembly out;
    ValidationReport& rep = out.report;
    PLMap& P = out.draft;
    P.map = map;
    P.gamma = gamma;
    P.parabolic_point = base;
    P.U = positive(U_in);
    P.U_prime = positive(U_prime_in);

    const double diamU = P.U.diameter();
    const double tolU = 1e-6 * diamU;
    const Complex gd_m = gamma.at(-1.0 / d), gd_p = gamma.at(1.0 / d);

    // Pieces. gamma runs from gamma(-1) to gamma(1); "left" is to its left.
    const Region Uc = insert_boundary_point(insert_boundary_point(P.U, g_m1), g_p1);
    const Region Upc = insert_boundary_point(insert_boundary_point(P.U_prime, gd_m), gd_p);
    auto [U_left, U_right] = split_region(Uc, arc_path(gamma, 1.0));
    auto [Up_left, Up_right] = split_region(Upc, arc_path(gamma, 1.0 / d));

    const RegionLocator locU(P.U), locUp(P.U_prime);
    const RegionLocator locUpL(Up_left), locUpR(Up_right);
    int crit_left = 0, crit_right = 0;
    for (Complex c : critical_points(map)) {
        if (!is_finite(c) || std::abs(c - base) < 1e-9 * diamU)
            continue;
        crit_left += locUpL.inside(c);
        crit_right += locUpR.inside(c);
    }
    const bool omega_left = crit_left >= crit_right;
    P.omega_prime = omega_left ? Up_left : Up_right;
    P.delta_prime = omega_left ? Up_right : Up_left;
    P.omega = omega_left ? U_left : U_right;
    P.delta = omega_left ? U_right : U_left;
    P.omega_prime_locator = RegionLocator(P.omega_prime);
    const RegionLocator locDp(P.delta_prime), locD(P.delta), locOm(P.omega);

    std::mt19937_64 rng(opts.seed);

    // domain_shape
    {
        std::string bad;
        const std::pair<const char*, const Region*> named[] = {{"U", &P.U},           {"U'", &P.U_prime},
                                                               {"Omega", &P.omega},   {"Omega'", &P.omega_prime},
                                                               {"Delta", &P.delta},   {"Delta'", &P.delta_prime}};
        for (const auto& [nm, reg] : named)
            if (!reg->is_simple())
                bad += std::string(bad.empty() ? "" : ", ") + nm + " not simple";
        if (!locU.inside(base) || !locUp.inside(base))
            bad += std::string(bad.empty() ? "" : ", ") + "parabolic point not interior to U and U'";
        if (crit_left + crit_right == 0)
            bad += std::string(bad.empty() ? "" : ", ") + "no critical point in U'";
        rep[Clause::DomainShape] = bad.empty()
                                       ? ClauseResult{ClauseStatus::Pass, "U, U' and the four pieces are Jordan polygons"}
                                       : ClauseResult{ClauseStatus::Fail, bad};
    }

    // properness_degree
    {
        ClauseResult& cr = rep[Clause::ProperDegree];
        double worst = 0.0;
        for (Complex z : P.U_prime.boundary)
            worst = std::max(worst, P.U.distance(eval(map, z)));
        const auto ws = interior_samples(P.U, locU, opts.degree_samples, 0.02 * diamU, rng);
        std::vector<int> degs;
        std::string err;
        for (Complex w : ws) {
            try {
                degs.push_back(map_degree_on(map, P.U_prime, w));
            } catch (const std::exception& e) {
                err = e.what();
            }
        }
        const bool constant = !degs.empty() && std::all_of(degs.begin(), degs.end(), [&](int k) { return k == degs[0]; });
        if (!err.empty()) {
            cr = {ClauseStatus::Fail, err};
        } else if (ws.empty()) {
            cr = {ClauseStatus::Unverifiable, "no interior sample of U away from its boundary"};
        } else if (!constant) {
            cr = {ClauseStatus::Fail, "degree varies over U"};
        } else if (degs[0] < 2) {
            cr = {ClauseStatus::Fail, "degree " + std::to_string(degs[0]) + " < 2"};
        } else if (worst > tolU) {
            cr = {ClauseStatus::Fail, "f(boundary U') leaves boundary U by " + fmt("%.3g", worst)};
        } else {
            P.degree_d = degs[0];
            cr = {ClauseStatus::Pass, "degree " + std::to_string(degs[0]) + " at " + std::to_string(degs.size()) +
                                          " points; f(dU') on dU to " + fmt("%.2g", worst)};
        }
    }

    // parabolic_multiplier
    {
        const Complex fz = eval(map, base), mu = deriv(map, base);
        const bool fixed = std::abs(fz - base) <= 1e-10 * (1.0 + std::abs(base));
        const bool one = std::abs(mu - 1.0) <= opts.multiplier_tol;
        rep[Clause::ParabolicMultiplier] = {fixed && one ? ClauseStatus::Pass : ClauseStatus::Fail,
                                            "|f'(gamma(0)) - 1| = " + fmt("%.3g", std::abs(mu - 1.0)) +
                                                (fixed ? "" : ", gamma(0) is not fixed")};
    }

    // arc_invariance
    {
        const double r = check_arc_invariance(map, gamma);
        rep[Clause::ArcInvariance] = {r < opts.invariance_tol ? ClauseStatus::Pass : ClauseStatus::Fail,
                                      "max |f(gamma(t)) - gamma(dt)| = " + fmt("%.3g", r)};
    }

    // arc_endpoints
    {
        std::string bad;
        const double e1 = std::max(P.U.distance(g_m1), P.U.distance(g_p1));
        if (e1 > tolU)
            bad += "gamma(+-1) off boundary U by " + fmt("%.3g", e1) + "; ";
        const double e2 = std::max(P.U_prime.distance(gd_m), P.U_prime.distance(gd_p));
        if (e2 > tolU)
            bad += "gamma(+-1/d) off boundary U' by " + fmt("%.3g", e2) + "; ";
        int out_U = 0, in_Up = 0, out_Up = 0;
        for (std::size_t i = 0; i < gamma.params.size(); ++i) {
            const double t = std::abs(gamma.params[i]);
            const Complex z = gamma.points[i];
            if (t < 1.0 - 1e-12 && t > 0.0 && locU.locate(z) == Membership::Outside)
                ++out_U;
            if (t > 1.0 / d * (1 + 1e-12) && t < 1.0 - 1e-12 && locUp.locate(z) == Membership::Inside)
                ++in_Up;
            if (t < 1.0 / d * (1 - 1e-12) && t > 0.0 && locUp.locate(z) == Membership::Outside)
                ++out_Up;
        }
        if (out_U)
            bad += std::to_string(out_U) + " samples of gamma(-1,1) outside U; ";
        if (in_Up)
            bad += std::to_string(in_Up) + " samples of gamma([1/d,1)) inside U'; ";
        if (out_Up)
            bad += std::to_string(out_Up) + " samples of gamma(-1/d,1/d) outside U'; ";
        rep[Clause::ArcEndpoints] =
            bad.empty() ? ClauseResult{ClauseStatus::Pass, "gamma(+-1) on dU to " + fmt("%.2g", e1) +
                                                               ", gamma([1/d,1)) in U minus U'"}
                        : ClauseResult{ClauseStatus::Fail, bad.substr(0, bad.size() - 2)};
    }

    // omega_compactness
    {
        double dmin = 1e300;
        int outside = 0;
        for (Complex z : P.omega_prime.boundary) {
            dmin = std::min(dmin, P.U.distance(z));
            outside += !locU.inside(z);
        }
        const bool ok = outside == 0 && dmin > tolU;
        rep[Clause::OmegaCompactness] = {ok ? ClauseStatus::Pass : ClauseStatus::Fail,
                                         "dist(boundary Omega', boundary U) = " + fmt("%.4g", dmin) +
                                             (outside ? ", " + std::to_string(outside) + " vertices outside U" : "")};
    }

    // delta_isomorphism
    {
        ClauseResult& cr = rep[Clause::DeltaIsomorphism];
        const auto ws = interior_samples(P.delta, locD, opts.degree_samples, 0.01 * P.delta.diameter(), rng);
        std::string bad;
        for (Complex w : ws) {
            try {
                const int k = map_degree_on(map, P.delta_prime, w);
                if (k != 1)
                    bad = "degree " + std::to_string(k) + " over Delta";
            } catch (const std::exception& e) {
                bad = e.what();
            }
        }
        // Preimage count over random points of Delta.
        const auto wc = interior_samples(P.delta, locD, 200, 0.0, rng);
        int miscount = 0;
        for (Complex w : wc) {
            int k = 0, amb = 0;
            for (Complex z : preimages(map, w)) {
                const Membership m = locDp.locate(z);
                k += m == Membership::Inside;
                amb += m == Membership::Boundary;
            }
            if (k != 1 && amb == 0)
                ++miscount;
        }
        if (miscount)
            bad += (bad.empty() ? "" : "; ") + std::to_string(miscount) + " of " + std::to_string(wc.size()) +
                   " points of Delta without exactly one preimage in Delta'";
        // Pair separation.
        const auto zs = interior_samples(P.delta_prime, locDp, 2 * opts.injectivity_pairs, 0.0, rng);
        int collide = 0;
        for (std::size_t i = 0; i + 1 < zs.size(); i += 2) {
            const double dz = std::abs(zs[i] - zs[i + 1]);
            if (dz > 1e-9 * diamU && std::abs(eval(map, zs[i]) - eval(map, zs[i + 1])) <= 1e-12 * diamU)
                ++collide;
        }
        if (collide)
            bad += (bad.empty() ? "" : "; ") + std::to_string(collide) + " colliding pairs";
        if (ws.empty())
            cr = {ClauseStatus::Unverifiable, "Delta has no interior sample"};
        else
            cr = bad.empty() ? ClauseResult{ClauseStatus::Pass, "degree 1 at " + std::to_string(ws.size()) +
                                                                    " points, " + std::to_string(zs.size() / 2) +
                                                                    " pairs separated"}
                             : ClauseResult{ClauseStatus::Fail, bad};
    }

    // attracting_petal_in_delta
    {
        ClauseResult& cr = rep[Clause::AttractingPetalInDelta];
        try {
            const ParabolicGerm germ = germ_analyze(map, base);
            std::string bad;
            // The arc must approach the base inside repelling sectors.
            for (int sign : {1, -1}) {
                const auto h = gamma.half(sign);
                const std::size_t inner = std::max<std::size_t>(2, h.size() / 4);
                for (std::size_t k = 1; k < std::min(inner, h.size()); ++k) {
                    const double ang = std::arg(germ.chart.local(h[k]));
                    double dr = 1e9, da = 1e9;
                    for (double r : germ.repelling_dirs)
                        dr = std::min(dr, angle_distance(ang, r));
                    for (double a : germ.attracting_dirs)
                        da = std::min(da, angle_distance(ang, a));
                    if (dr >= da) {
                        bad = "gamma approaches the parabolic point outside the repelling sectors";
                        break;
                    }
                }
            }
            // Some attracting direction points into Delta'.
            const double rho = 0.5 * P.U_prime.distance(base);
            int good_dirs = 0;
            for (double a : germ.attracting_dirs) {
                bool all = true;
                for (int k = 0; k < 8 && all; ++k)
                    all = locDp.inside(germ.chart.from_local(std::polar(rho * std::ldexp(1.0, -k), a)));
                good_dirs += all;
            }
            if (good_dirs == 0)
                bad += std::string(bad.empty() ? "" : "; ") + "no attracting direction points into Delta'";
            cr = bad.empty() ? ClauseResult{ClauseStatus::Pass, std::to_string(good_dirs) +
                                                                    " attracting direction(s) into Delta'"}
                             : ClauseResult{ClauseStatus::Fail, bad};
        } catch (const std::exception& e) {
            cr = {ClauseStatus::Fail, e.what()};
        }
    }

    if (!rep.any_fail())
        out.plm = P;
    return out;
}

JuliaMembership in_filled_julia(const PLMap& plm, Complex z, int max_iter)
{
    const RegionLocator& loc = plm.omega_prime_locator;
    const double eps = boundary_epsilon(loc.region());
    for (int k = 0; k <= max_iter; ++k) {
        if (std::abs(z - plm.parabolic_point) <= eps)
            return {JuliaMembership::Inside, k};
        switch (loc.locate(z)) {
        case Membership::Boundary: return {JuliaMembership::Undecided, k};
        case Membership::Outside: return {JuliaMembership::Escaped, k};
        case Membership::Inside: break;
        }
        if (k == max_iter)
            break;
        z = eval(plm.map, z);
    }
    return {JuliaMembership::Inside, max_iter};
}

double h2_p0_conjugacy_residual(int n_samples, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const MapSpec h = MapSpec::h_two();
    const Complex poles[] = {1.0, -1.0, Complex(0, std::sqrt(3.0)), Complex(0, -std::sqrt(3.0))};
    auto phi = [](Complex z) { return (z + 1.0) / (z - 1.0); };
    double worst = 0.0;
    int done = 0;
    while (done < n_samples) {
        const Complex z(u(rng), u(rng));
        if (std::abs(z) >= 3.0)
            continue;
        bool near = false;
        for (Complex p : poles)
            near = near || std::abs(z - p) < 1e-3;
        if (near)
            continue;
        const Complex lhs = phi(eval(h, z));
        const Complex w = phi(z);
        const Complex rhs = w + 1.0 / w;
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
        ++done;
    }
    return worst;
}

double h2_derivative_modulus(Complex z)
{
    const Complex q = 3.0 + z * z;
    return 16.0 * std::abs(z) / std::norm(q);
}

ExpansionProfile circle_expansion_profile(int n_samples)
{
    if (n_samples < 360)
        throw std::invalid_argument("circle_expansion_profile: need at least 360 samples");
    std::vector<double> v(n_samples);
    ExpansionProfile p;
    p.min_modulus = 1e300;
    for (int k = 0; k < n_samples; ++k) {
        v[k] = h2_derivative_modulus(std::polar(1.0, kTwoPi * k / n_samples));
        p.min_modulus = std::min(p.min_modulus, v[k]);
    }
    for (int k = 0; k < n_samples; ++k)
        if (v[k] - p.min_modulus <= 1e-6)
            p.argmin_angles.push_back(kTwoPi * k / n_samples);
    return p;
}

}  // namespace parlike
