#include "doctest.h"

#include <random>

#include "parlike/instances.hpp"

using namespace parlike;

namespace {

const Assembly& ex1()
{
    static const Assembly a = assemble_instance(example1_instance());
    return a;
}

const Assembly& ex2()
{
    static const Assembly a = assemble_instance(example2_instance());
    return a;
}

}  // namespace

TEST_CASE("catalog instances assemble with degree 2")
{
    for (const Assembly* a : {&ex1(), &ex2()}) {
        INFO(a->report.to_text());
        REQUIRE(a->plm.has_value());
        CHECK_FALSE(a->report.any_fail());
        CHECK(a->plm->degree_d == 2);
    }
    CHECK(ex1().plm->parabolic_point == Complex(1.0));
    CHECK(ex2().plm->parabolic_point == Complex(0.0));
}

TEST_CASE("the pieces")
{
    const PLMap& P = *ex1().plm;
    // Omega' is the side holding the unit disk, Delta' the side holding
    // the real segment (1, 1.25).
    CHECK(inside(P.omega_prime, 0.0));
    CHECK(inside(P.delta_prime, 1.2));
    CHECK_FALSE(inside(P.omega_prime, 1.2));
    const double total = P.U_prime.signed_area();
    CHECK(std::abs(P.omega_prime.signed_area() + P.delta_prime.signed_area() - total) < 1e-9 * total);
    CHECK(std::abs(P.omega.signed_area() + P.delta.signed_area() - P.U.signed_area()) < 1e-9 * P.U.signed_area());
}

TEST_CASE("split and insertion")
{
    const Region square = Region::from_boundary({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
    const auto [left, right] = split_region(square, {{0, -1}, {0, 1}});
    CHECK(std::abs(left.signed_area() - 2.0) < 1e-12);
    CHECK(std::abs(right.signed_area() - 2.0) < 1e-12);
    CHECK(inside(left, {-0.5, 0.0}));
    CHECK(inside(right, {0.5, 0.0}));

    const Region more = insert_boundary_point(square, {1.0, 0.25});
    CHECK(more.boundary.size() == 5);
    CHECK(insert_boundary_point(more, {1.0, 0.25}).boundary.size() == 5);
}

TEST_CASE("filled Julia membership of the h2 restriction")
{
    const PLMap& P = *ex1().plm;
    CHECK(in_filled_julia(P, 0.0, 2000).kind == JuliaMembership::Inside);
    CHECK(in_filled_julia(P, 1.1, 2000).kind == JuliaMembership::Escaped);

    // K is the closed unit disk.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> r(0.0, 1.24), t(0.0, kTwoPi);
    int disagree = 0, undecided = 0, tested = 0;
    while (tested < 10000) {
        const Complex z = std::polar(std::sqrt(r(rng) * 1.24), t(rng));
        if (std::abs(std::abs(z) - 1.0) <= 1e-2)
            continue;
        ++tested;
        const JuliaMembership m = in_filled_julia(P, z, 2000);
        if (m.kind == JuliaMembership::Undecided)
            ++undecided;
        else
            disagree += (m.kind == JuliaMembership::Inside) != (std::abs(z) <= 1.0);
    }
    CHECK(disagree == 0);
    CHECK(undecided == 0);
}

TEST_CASE("membership is forward invariant and escape is stable")
{
    const PLMap& P = *ex2().plm;
    CHECK(in_filled_julia(P, -kI, 500).kind == JuliaMembership::Inside);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    int inside_count = 0, broken = 0, unstable = 0;
    while (inside_count < 1000) {
        const Complex z(u(rng), u(rng));
        if (!P.omega_prime_locator.inside(z))
            continue;
        const JuliaMembership m = in_filled_julia(P, z, 300);
        if (m.kind == JuliaMembership::Escaped) {
            const JuliaMembership longer = in_filled_julia(P, z, 3000);
            unstable += longer.kind != JuliaMembership::Escaped || longer.step != m.step;
            continue;
        }
        if (m.kind != JuliaMembership::Inside)
            continue;
        ++inside_count;
        broken += in_filled_julia(P, eval(P.map, z), 300).kind == JuliaMembership::Escaped;
    }
    CHECK(broken == 0);
    CHECK(unstable == 0);
}

TEST_CASE("h2 and P0 are conjugate")
{
    CHECK(h2_p0_conjugacy_residual(10000, 42) < 1e-12);
    auto phi = [](Complex z) { return (z + 1.0) / (z - 1.0); };
    auto p0 = [](Complex z) { return z + 1.0 / z; };
    const MapSpec h = MapSpec::h_two();
    // z = 0: phi(1/3) = -2 = P0(-1).
    CHECK(std::abs(phi(eval(h, 0.0)) - (-2.0)) < 1e-15);
    CHECK(std::abs(p0(phi(0.0)) - (-2.0)) < 1e-15);
    // z = i: h2(i) = -1, phi(-1) = 0, and P0(phi(i)) = P0(-i) = 0.
    CHECK(std::abs(eval(h, kI) + 1.0) < 1e-15);
    CHECK(std::abs(p0(phi(kI))) < 1e-15);
}

TEST_CASE("expansion of h2 on the circle")
{
    const ExpansionProfile p = circle_expansion_profile(10000);
    CHECK(std::abs(p.min_modulus - 1.0) < 1e-9);
    REQUIRE_FALSE(p.argmin_angles.empty());
    bool near0 = false, nearpi = false;
    for (double a : p.argmin_angles) {
        near0 = near0 || angle_distance(a, 0.0) < 1e-3;
        nearpi = nearpi || angle_distance(a, kPi) < 1e-3;
        CHECK((angle_distance(a, 0.0) < 1e-3 || angle_distance(a, kPi) < 1e-3));
    }
    CHECK(near0);
    CHECK(nearpi);
    CHECK(std::abs(h2_derivative_modulus(kI) - 4.0) < 1e-12);
    CHECK(std::abs(h2_derivative_modulus(std::polar(1.0, kPi / 4.0)) - 1.6) < 1e-12);
    // Oracle: |3 + e^{2i theta}|^2 = 10 + 6 cos 2 theta.
    for (double th : {0.1, 0.7, 2.0})
        CHECK(std::abs(h2_derivative_modulus(std::polar(1.0, th)) - 16.0 / (10.0 + 6.0 * std::cos(2.0 * th))) < 1e-12);
}

TEST_CASE("structural failures abort")
{
    const PLInstance I = example1_instance();
    DividingArc short_arc = I.gamma.restricted(-0.25, 0.25);
    CHECK_THROWS_AS(assemble(I.map, I.U_prime, I.U, short_arc), std::invalid_argument);
    Region open_region;
    open_region.boundary = {0.0, 1.0};
    CHECK_THROWS_AS(assemble(I.map, open_region, I.U, I.gamma), std::invalid_argument);
}

TEST_CASE("fat rabbit parameter")
{
    CHECK(std::abs(c_pq(1, 3) - fat_rabbit_c()) < 1e-12);
    CHECK(std::abs(c_pq(0, 1) - 0.25) < 1e-15);
}
