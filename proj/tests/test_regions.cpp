#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>

#include "parlike/potential.hpp"
#include "parlike/regions.hpp"

using namespace parlike;

namespace {

// Even-odd ray casting, written independently of the library.
bool even_odd(const std::vector<Complex>& poly, Complex z)
{
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Complex a = poly[i], b = poly[j];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
            if (z.real() < x)
                in = !in;
        }
    }
    return in;
}

// Random star-shaped polygon about the origin (hence simple).
std::vector<Complex> random_star(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> r(0.3, 1.5);
    std::vector<Complex> out;
    for (int k = 0; k < n; ++k)
        out.push_back(std::polar(r(rng), kTwoPi * k / n));
    return out;
}

int count_roots_in_disk(Complex a, Complex b, Complex c, double radius)
{
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    int n = 0;
    for (Complex z : {(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)})
        n += std::abs(z) < radius;
    return n;
}

}  // namespace

TEST_CASE("membership examples")
{
    const Region disk = circle_region(0.0, 1.0, 720);
    CHECK(contains(disk, 0.0) == Membership::Inside);
    CHECK(contains(disk, 2.0) == Membership::Outside);
    const Region square = Region::from_boundary({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
    CHECK(contains(square, {0.99, 0.99}) == Membership::Inside);
    CHECK(contains(square, {1.0, 0.5}) == Membership::Boundary);
    CHECK(square.orientation == Orientation::Positive);
    CHECK(square.reversed().orientation == Orientation::Negative);
    CHECK(contains(square.reversed(), 0.0) == Membership::Inside);
}

TEST_CASE("winding membership agrees with even-odd on random polygons")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.6, 1.6);
    int disagreements = 0;
    for (int p = 0; p < 10; ++p) {
        const auto poly = random_star(rng, 5 + 7 * p);
        const Region r = Region::from_boundary(poly);
        const RegionLocator loc(r);
        for (int k = 0; k < 1000; ++k) {
            const Complex z(u(rng), u(rng));
            const Membership m = contains(r, z);
            if (m == Membership::Boundary)
                continue;
            disagreements += (m == Membership::Inside) != even_odd(poly, z);
            disagreements += loc.locate(z) != m;
        }
    }
    CHECK(disagreements == 0);
}

TEST_CASE("simplicity")
{
    CHECK(circle_region(0.0, 1.0, 100).is_simple());
    const Region eight = Region::from_boundary({{0, 0}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
    CHECK_FALSE(eight.is_simple());

    // Dense tiny steps followed by long segments: still simple.
    std::vector<Complex> mixed;
    for (int k = 0; k <= 4000; ++k)
        mixed.push_back({1e-4 * k, 0.0});
    mixed.push_back({0.4, 5.0});
    mixed.push_back({0.0, 5.0});
    CHECK(Region::from_boundary(mixed).is_simple());
    // A long segment crossing the dense part.
    mixed.back() = {0.2, -3.0};
    mixed.push_back({0.0, 5.0});
    CHECK_FALSE(Region::from_boundary(mixed).is_simple());
}

TEST_CASE("argument-principle degree")
{
    const Region d15 = circle_region(0.0, 1.5, 720);
    // h2(z) = w  <=>  (3 - w) z^2 + (1 - 3w) = 0.
    const Complex w = 0.2;
    CHECK(map_degree_on(MapSpec::h_two(), d15, w) == count_roots_in_disk(3.0 - w, 0.0, 1.0 - 3.0 * w, 1.5));
    CHECK(map_degree_on(MapSpec::h_two(), d15, w) == 2);

    // P_1(z) = 3  <=>  z^2 + (1 - 3) z + 1 = 0.
    const Region d10 = circle_region(0.0, 10.0, 2000);
    CHECK(map_degree_on(MapSpec::per_one(1.0), d10, 3.0) == count_roots_in_disk(1.0, -2.0, 1.0, 10.0));
    CHECK(map_degree_on(MapSpec::per_one(1.0), d10, 3.0) == 2);

    // Far outside the image of the closed disk.
    CHECK(map_degree_on(MapSpec::h_two(), circle_region(0.0, 0.5, 360), 50.0) == 0);
}

TEST_CASE("degree is locally constant")
{
    const MapSpec f = MapSpec::cubic(kI);
    const Region D = circle_region(0.0, 3.0, 1440);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int first = -1;
    bool constant = true;
    for (int k = 0; k < 20; ++k) {
        const int deg = map_degree_on(f, D, {u(rng), u(rng)});
        if (first < 0)
            first = deg;
        constant = constant && deg == first;
    }
    CHECK(constant);
    CHECK(first == 3);
}

TEST_CASE("preimages and lifts")
{
    const MapSpec sq = MapSpec::quad_iter(0.0, 1);
    const Region R = preimage_component(sq, circle_region(0.0, 4.0, 720), 0.0);
    double worst = 0.0;
    for (Complex z : R.boundary)
        worst = std::max(worst, std::abs(std::abs(z) - 2.0));
    CHECK(worst < 1e-9);
    CHECK(map_degree_on(sq, R, 1.0) == 2);

    // Lifting z^2 along a half circle from 1 to -1 through i: the lift of
    // 1 is followed from 1 to i.
    Complex y = 1.0;
    const int n = 64;
    for (int k = 0; k < n; ++k)
        y = continue_preimage(sq, std::polar(1.0, kPi * k / n), std::polar(1.0, kPi * (k + 1) / n), y);
    CHECK(std::abs(y - kI) < 1e-12);
}

TEST_CASE("region files")
{
    const std::string path = "test_regions_tmp.txt";
    {
        std::ofstream f(path);
        f << "1 0\n0 1\n-1 0\n0 -1\n";
    }
    const Region r = read_region(path);
    std::remove(path.c_str());
    CHECK(r.boundary.size() == 4);
    CHECK(contains(r, 0.1) == Membership::Inside);
    CHECK(r.orientation == Orientation::Positive);
}

TEST_CASE("Green potential")
{
    const MapSpec z2 = MapSpec::quad_iter(0.0, 1);
    CHECK(std::abs(green_potential(z2, 4.0) - std::log(4.0)) < 1e-12);
    const PotentialValue inside = green_potential_ex(z2, 0.0);
    CHECK(inside.value == 0.0);
    CHECK_FALSE(inside.escaped);

    const MapSpec f = MapSpec::cubic(kI);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> r(2.0, 4.0), t(0.0, kTwoPi);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Complex z = std::polar(r(rng), t(rng));
        worst = std::max(worst, std::abs(green_potential(f, eval(f, z)) - 3.0 * green_potential(f, z)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("external rays")
{
    const MapSpec z2 = MapSpec::quad_iter(0.0, 1);
    const RayTrace ray = trace_external_ray(z2, 0.0, 1.0, 0.01);
    REQUIRE(ray.complete());
    for (std::size_t k = 0; k < ray.points.size(); ++k) {
        CHECK(std::abs(ray.points[k].imag()) < 1e-10);
        CHECK(std::abs(ray.points[k] - std::exp(ray.potentials[k])) < 1e-9);
    }
    CHECK(std::abs(ray.points.back() - 1.0) < 0.011);

    // Angle arithmetic.
    CHECK(multiply_angle(0.0, 3) == 0.0);
    CHECK(std::abs(multiply_angle(0.5, 3) - 0.5) < 1e-15);
    CHECK(std::abs(multiply_angle(1.0 / 7.0, 2) - 2.0 / 7.0) < 1e-15);
    CHECK(std::abs(multiply_angle(1.0 / 7.0, 2, 2) - 4.0 / 7.0) < 1e-15);
    CHECK(std::abs(multiply_angle(1.0 / 7.0, 2, 3) - 1.0 / 7.0) < 1e-15);
}

TEST_CASE("rays cross equipotentials orthogonally")
{
    const MapSpec f = MapSpec::cubic(kI);
    int bad = 0;
    for (int k = 0; k < 20; ++k) {
        const double angle = (k + 0.37) / 20.0, pot = 0.5 + 0.05 * k;
        const Complex z = ray_point_descend(f, angle, pot);
        const double h = 1e-5;
        const Complex along_ray = ray_point_descend(f, angle, pot * (1.0 + h)) - ray_point_descend(f, angle, pot * (1.0 - h));
        const auto eq = trace_equipotential(f, pot, angle - h, angle + h, 2);
        const Complex along_eq = eq.back() - eq.front();
        const double ang = std::abs(std::arg(along_ray / along_eq));
        bad += std::abs(ang - kPi / 2.0) > 1e-2;
        CHECK(std::abs(green_potential(f, z) - pot) < 1e-9);
    }
    CHECK(bad == 0);
}
