#include "doctest.h"

#include <random>

#include "parlike/dynamics.hpp"

using namespace parlike;

namespace {

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

const FixedPointRecord* find_fixed(const std::vector<FixedPointRecord>& fps, Complex z)
{
    for (const auto& r : fps) {
        if (is_infinity(z) ? r.at_infinity() : (!r.at_infinity() && near(r.location, z, 1e-8)))
            return &r;
    }
    return nullptr;
}

bool has_point(const std::vector<Complex>& pts, Complex z)
{
    for (Complex p : pts)
        if (is_infinity(z) ? is_infinity(p) : (is_finite(p) && near(p, z, 1e-10)))
            return true;
    return false;
}

std::vector<MapSpec> catalog()
{
    return {MapSpec::per_one(1.0), MapSpec::per_one(Complex(0.5, 0.5)), MapSpec::h_two(),
            MapSpec::cubic(kI), MapSpec::quad_iter(Complex(-0.125, 3.0 * std::sqrt(3.0) / 8.0), 3)};
}

}  // namespace

TEST_CASE("evaluation of the catalog")
{
    CHECK(near(eval(MapSpec::h_two(), 0.0), 1.0 / 3.0, 1e-15));
    CHECK(near(eval(MapSpec::per_one(1.0), -1.0), -1.0, 1e-15));
    CHECK(near(eval(MapSpec::per_one(0.0), kI), 0.0, 1e-15));
    CHECK(is_infinity(eval(MapSpec::per_one(1.0), 0.0)));
    CHECK(is_infinity(eval(MapSpec::per_one(1.0), kInfinity)));
    CHECK(near(eval(MapSpec::h_two(), kInfinity), 3.0, 1e-15));
    const Complex c(0.3, -0.2);
    const Complex z(0.1, 0.4);
    Complex ref = z;
    for (int k = 0; k < 3; ++k)
        ref = ref * ref + c;
    CHECK(near(eval(MapSpec::quad_iter(c, 3), z), ref, 1e-15));
}

TEST_CASE("derivatives")
{
    CHECK(near(deriv(MapSpec::per_one(0.3), 1.0), 0.0, 1e-15));
    CHECK(near(deriv(MapSpec::h_two(), kI), Complex(0.0, 4.0), 1e-14));
    CHECK(near(deriv(MapSpec::cubic(kI), -kI), 0.0, 1e-15));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const MapSpec& m : catalog()) {
        for (int i = 0; i < 100; ++i) {
            const Complex z(u(rng), u(rng));
            const double h = 1e-6;
            const Complex fd = (eval(m, z + h) - eval(m, z - h)) / (2.0 * h);
            const Complex d = deriv(m, z);
            CHECK(std::abs(fd - d) <= 1e-6 * std::max(1.0, std::abs(d)));
        }
    }
}

TEST_CASE("orbits")
{
    auto o = orbit(MapSpec::per_one(0.0), 1.0, 2);
    REQUIRE(o.size() == 3);
    CHECK(near(o[1], 2.0, 1e-15));
    CHECK(near(o[2], 2.5, 1e-15));
    o = orbit(MapSpec::per_one(0.0), -1.0, 2);
    CHECK(near(o[2], -2.5, 1e-15));
    o = orbit(MapSpec::h_two(), 1.0, 5);
    CHECK(o.size() == 6);
    for (Complex z : o)
        CHECK(near(z, 1.0, 1e-15));
    o = orbit(MapSpec::per_one(1.0), 0.0, 5);
    CHECK(o.size() == 2);
}

TEST_CASE("fixed points")
{
    auto fps = fixed_points(MapSpec::h_two());
    REQUIRE(fps.size() == 1);
    CHECK(near(fps[0].location, 1.0, 1e-10));
    CHECK(fps[0].algebraic_multiplicity == 3);
    CHECK(near(fps[0].multiplier, 1.0, 1e-10));

    fps = fixed_points(MapSpec::cubic(kI));
    const auto* zero = find_fixed(fps, 0.0);
    const auto* mi = find_fixed(fps, -kI);
    REQUIRE(zero);
    REQUIRE(mi);
    CHECK(zero->algebraic_multiplicity == 2);
    CHECK(near(zero->multiplier, 1.0, 1e-12));
    CHECK(near(mi->multiplier, 0.0, 1e-12));

    fps = fixed_points(MapSpec::per_one(1.0));
    const auto* inf = find_fixed(fps, kInfinity);
    const auto* m1 = find_fixed(fps, -1.0);
    REQUIRE(inf);
    REQUIRE(m1);
    CHECK(near(inf->multiplier, 1.0, 1e-15));
    CHECK(inf->algebraic_multiplicity == 2);
    CHECK(near(m1->multiplier, 0.0, 1e-12));

    fps = fixed_points(MapSpec::per_one(0.0));
    REQUIRE(fps.size() == 1);
    CHECK(fps[0].at_infinity());
    CHECK(fps[0].algebraic_multiplicity == 3);

    for (const MapSpec& m : catalog())
        for (const auto& r : fixed_points(m))
            if (!r.at_infinity())
                CHECK(std::abs(eval(m, r.location) - r.location) < 1e-10);
}

TEST_CASE("critical points")
{
    auto cps = critical_points(MapSpec::h_two());
    CHECK(cps.size() == 2);
    CHECK(has_point(cps, 0.0));
    CHECK(has_point(cps, kInfinity));

    cps = critical_points(MapSpec::per_one(Complex(0.3, 2.0)));
    CHECK(cps.size() == 2);
    CHECK(has_point(cps, 1.0));
    CHECK(has_point(cps, -1.0));

    cps = critical_points(MapSpec::cubic(kI));
    CHECK(has_point(cps, -kI));
    CHECK(has_point(cps, kI / 3.0));
    CHECK(has_point(cps, kInfinity));

    for (const MapSpec& m : catalog())
        for (Complex c : critical_points(m))
            if (is_finite(c))
                CHECK(std::abs(deriv(m, c)) < 1e-10);
}

TEST_CASE("local series")
{
    for (Complex A : {Complex(1.0), kI, Complex(2.0), Complex(0.0)}) {
        const CVector s = series_at(MapSpec::per_one(A), kInfinity, 3);
        CHECK(near(s(0), 0.0, 1e-15));
        CHECK(near(s(1), 1.0, 1e-12));
        CHECK(near(s(2), -A, 1e-12));
        CHECK(near(s(3), A * A - 1.0, 1e-12));
    }
    const CVector c = series_at(MapSpec::cubic(kI), 0.0, 3);
    CHECK(near(c(1), 1.0, 1e-15));
    CHECK(near(c(2), kI, 1e-15));
    CHECK(near(c(3), 1.0, 1e-15));
    CHECK_THROWS_AS(series_at(MapSpec::cubic(kI), 1.0, 3), std::invalid_argument);

    // h2 at 1: u -> u - u^3/4 + ...
    const CVector h = series_at(MapSpec::h_two(), 1.0, 4);
    CHECK(near(h(2), 0.0, 1e-14));
    CHECK(near(h(3), -0.25, 1e-14));

    // Composed series of the iterate agrees with direct evaluation.
    const Complex cr(-0.125, 3.0 * std::sqrt(3.0) / 8.0);
    const MapSpec rabbit = MapSpec::quad_iter(cr, 3);
    const Complex p(-0.25, std::sqrt(3.0) / 4.0);
    const CVector r = series_at(rabbit, p, 8);
    const Complex u(1e-3, 2e-3);
    CHECK(std::abs(poly_eval(r, u) - (eval(rabbit, p + u) - p)) < 1e-15);
}

TEST_CASE("symmetries")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Complex z(u(rng), u(rng));
        const Complex A(u(rng), u(rng));
        CHECK(std::abs(-eval(MapSpec::per_one(A), -z) - eval(MapSpec::per_one(-A), z)) < 1e-12 * (1 + std::abs(z) + 1 / std::abs(z)));
        const Complex lhs = eval(MapSpec::h_two(), 1.0 / z);
        const Complex rhs = 1.0 / eval(MapSpec::h_two(), z);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1 + std::abs(lhs)));
    }
}

TEST_CASE("preimages")
{
    const MapSpec f = MapSpec::cubic(kI);
    for (Complex y : preimages(f, Complex(0.3, 0.1)))
        CHECK(std::abs(eval(f, y) - Complex(0.3, 0.1)) < 1e-12);
    CHECK(preimages(f, 0.5).size() == 3);
    const MapSpec rabbit = MapSpec::quad_iter(Complex(-0.1, 0.6), 2);
    const auto pre = preimages(rabbit, 0.2);
    CHECK(pre.size() == 4);
    for (Complex y : pre)
        CHECK(std::abs(eval(rabbit, y) - 0.2) < 1e-12);
}

TEST_CASE("rational pair validation")
{
    CVector num(2), den(2);
    num << 1.0, 1.0;
    den << 1.0, 1.0;
    CHECK_THROWS_AS(MapSpec::rational(num, den), std::invalid_argument);
    CHECK_THROWS_AS(MapSpec::quad_iter(0.0, 0), std::invalid_argument);
}
