#include <doctest.h>

#include <cmath>
#include <numbers>

#include "periham/errors.hpp"
#include "periham/moments.hpp"
#include "periham/quadrature.hpp"

#include "oracles.hpp"

using namespace periham;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

MeasureSpec builtin_measure(BuiltinDensity::Kind kind,
                            std::vector<double> params = {}) {
    MeasureSpec m;
    m.builtin = BuiltinDensity::make(kind, std::move(params));
    return m;
}

} // namespace

TEST_SUITE("moments") {

TEST_CASE("quadrature examples") {
    auto f1 = [](double x) { return std::cos(x) * (1.0 + std::cos(x)); };
    CHECK(quad::integrate(f1, -kPi, kPi, 1) ==
          doctest::Approx(kPi).epsilon(1e-12));

    auto f2 = [](double x) { return std::cos(2.0 * x); };
    CHECK(std::abs(quad::integrate(f2, -kPi, kPi, 2)) < 1e-12);

    auto f3 = [](double x) { return x == 0.0 ? 2.0 : 1.0 + std::sin(x) / x; };
    const double oracle = oracles::riemann_integral(f3, -kPi, kPi);
    const double got = quad::integrate(f3, -kPi, kPi, 0);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(got == doctest::Approx(9.987059411144518).epsilon(1e-8));
}

TEST_CASE("quadrature handles an interior kink") {
    auto f = [](double x) { return std::sqrt(std::abs(x)); };
    // exact: 2 * (2/3) * 8^(3/2) / ... over [-8, 8]: 2*(2/3)*8^1.5
    const double exact = 2.0 * (2.0 / 3.0) * std::pow(8.0, 1.5);
    CHECK(quad::integrate(f, -8.0, 8.0, 0) ==
          doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("quadrature reports non-convergence on a jump") {
    auto f = [](double x) { return x < 1.0 / std::sqrt(2.0) ? 0.0 : 1.0; };
    CHECK_THROWS_AS(quad::integrate(f, -1.0, 1.0, 0), quadrature_error);
}

TEST_CASE("constant density has moments (c, 0, 0, ...)") {
    MomentSequence m =
        compute_moments(builtin_measure(BuiltinDensity::Kind::Constant), 1.7, 3);
    CHECK(m.values[0] == 1.0);
    for (int n = 1; n <= 3; ++n)
        CHECK(m.values[n] == 0.0);
    CHECK(m.provenance[0] == Provenance::ClosedForm);
}

TEST_CASE("one_plus_cos moments at T = pi and T = 2 pi") {
    MomentSequence m =
        compute_moments(builtin_measure(BuiltinDensity::Kind::OnePlusCos), kPi, 2);
    CHECK(m.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(m.values[2]) < 1e-12);

    MomentSequence m2 = compute_moments(
        builtin_measure(BuiltinDensity::Kind::OnePlusCos), 2.0 * kPi, 3);
    CHECK(m2.values[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(m2.values[1]) < 1e-10);
    CHECK(m2.values[2] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(m2.values[3]) < 1e-10);
}

TEST_CASE("atom plus flat density") {
    MeasureSpec spec;
    spec.atoms = {{0.0, kSqrt2Pi}};
    spec.builtin =
        BuiltinDensity::make(BuiltinDensity::Kind::Constant, {1.0 / kSqrt2Pi});
    MomentSequence m = compute_moments(spec, kPi, 4);
    const double expect = kSqrt2Pi / kPi; // ~0.79788 for every index
    for (int n = 0; n <= 4; ++n)
        CHECK(m.values[n] == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("closed form agrees with the quadrature route") {
    MeasureSpec as_expr;
    as_expr.expr = parse_density("1 + cos(x)");
    for (double T : {kPi, 2.0 * kPi, 5.0}) {
        MomentSequence closed = compute_moments(
            builtin_measure(BuiltinDensity::Kind::OnePlusCos), T, 8);
        MomentSequence quadr = compute_moments(as_expr, T, 8);
        for (int n = 0; n <= 8; ++n) {
            CHECK(std::abs(closed.values[n] - quadr.values[n]) < 1e-9);
            CHECK(quadr.provenance[n] == Provenance::Quadrature);
        }
    }
}

TEST_CASE("linearity in the density") {
    MeasureSpec one;
    one.expr = parse_density("1 + cos(x)");
    MeasureSpec scaled;
    scaled.expr = parse_density("2.5*(1 + cos(x))");
    MomentSequence a = compute_moments(one, kPi, 6);
    MomentSequence b = compute_moments(scaled, kPi, 6);
    for (int n = 0; n <= 6; ++n)
        CHECK(b.values[n] ==
              doctest::Approx(2.5 * a.values[n]).epsilon(1e-12));
}

TEST_CASE("moment bound |a_n| <= 2 a_0") {
    // a pure point mass at the origin saturates the bound
    MeasureSpec spike;
    spike.atoms = {{0.0, 3.0}};
    MomentSequence m = compute_moments(spike, kPi, 5);
    for (int n = 1; n <= 5; ++n)
        CHECK(std::abs(m.values[n]) <=
              2.0 * m.values[0] * (1.0 + 1e-12));

    MomentSequence c = compute_moments(
        builtin_measure(BuiltinDensity::Kind::OnePlusChirp), 2.0 * kPi, 10);
    for (int n = 1; n <= 10; ++n)
        CHECK(std::abs(c.values[n]) <= 2.0 * c.values[0]);
}

TEST_CASE("boundary atoms are rejected, outside atoms are dropped") {
    MeasureSpec on_edge;
    on_edge.atoms = {{kPi, 1.0}, {-kPi, 1.0}};
    on_edge.builtin = BuiltinDensity::make(BuiltinDensity::Kind::Constant);
    CHECK_THROWS_AS(compute_moments(on_edge, kPi, 2), validation_error);

    MeasureSpec outside;
    outside.atoms = {{5.0, 1.0}, {-5.0, 1.0}};
    outside.builtin = BuiltinDensity::make(BuiltinDensity::Kind::Constant);
    MomentSequence with = compute_moments(outside, kPi, 3);
    MomentSequence without = compute_moments(
        builtin_measure(BuiltinDensity::Kind::Constant), kPi, 3);
    for (int n = 0; n <= 3; ++n)
        CHECK(with.values[n] == without.values[n]);
}

TEST_CASE("validation failures propagate") {
    MeasureSpec empty;
    CHECK_THROWS_AS(compute_moments(empty, kPi, 2), validation_error);
    MeasureSpec odd;
    odd.expr = parse_density("1 + x");
    CHECK_THROWS_AS(compute_moments(odd, kPi, 2), validation_error);
    CHECK_THROWS_AS(
        compute_moments(builtin_measure(BuiltinDensity::Kind::Constant), -1.0, 2),
        validation_error);
}

TEST_CASE("random density: quadrature matches the exact coefficients") {
    std::mt19937 rng(31337u);
    oracles::TrigPoly p = oracles::random_trig_poly(rng, 6);
    MeasureSpec m;
    m.expr = parse_density(p.source());
    MomentSequence got = compute_moments(m, kPi, 10);
    MomentSequence exact = p.moments(10);
    for (int n = 0; n <= 10; ++n)
        CHECK(std::abs(got.values[n] - exact.values[n]) < 1e-10);
}

} // TEST_SUITE
