#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "periham/errors.hpp"
#include "periham/measure.hpp"

using namespace periham;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

MeasureSpec example_delta_measure() {
    MeasureSpec m;
    m.atoms = {{0.0, kSqrt2Pi}};
    m.builtin = BuiltinDensity::make(BuiltinDensity::Kind::Constant,
                                     {1.0 / kSqrt2Pi});
    return m;
}

} // namespace

TEST_SUITE("measure") {

TEST_CASE("builtin evaluators") {
    auto cosd = BuiltinDensity::make(BuiltinDensity::Kind::OnePlusCos);
    CHECK(cosd.eval(kPi) == doctest::Approx(0.0).epsilon(1e-15));
    auto sincd = BuiltinDensity::make(BuiltinDensity::Kind::OnePlusSinc);
    CHECK(sincd.eval(0.0) == 2.0);
    CHECK(sincd.eval(kPi) == doctest::Approx(1.0).epsilon(1e-15));
    auto chirp = BuiltinDensity::make(BuiltinDensity::Kind::OnePlusChirp);
    CHECK(chirp.eval(std::sqrt(kPi / 2.0)) == doctest::Approx(2.0).epsilon(1e-12));
    auto pow = BuiltinDensity::make(BuiltinDensity::Kind::OnePlusAbsPow, {0.5});
    CHECK(pow.eval(-4.0) == 3.0);
    auto poisson = BuiltinDensity::make(BuiltinDensity::Kind::PoissonLike);
    CHECK(poisson.eval(1.0) == 0.5);

    CHECK_THROWS_AS(BuiltinDensity::make(BuiltinDensity::Kind::OnePlusAbsPow),
                    validation_error);
    CHECK_THROWS_AS(BuiltinDensity::from_name("nope", {}), validation_error);
}

TEST_CASE("builtin matches the parsed expression") {
    MeasureSpec a;
    a.builtin = BuiltinDensity::make(BuiltinDensity::Kind::OnePlusCos);
    MeasureSpec b;
    b.expr = parse_density("1+cos(x)");
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> xs(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double x = xs(rng);
        CHECK(a.density_at(x) ==
              doctest::Approx(b.density_at(x)).epsilon(1e-15));
    }
}

TEST_CASE("validation passes the catalog measures") {
    MeasureSpec cosm;
    cosm.builtin = BuiltinDensity::make(BuiltinDensity::Kind::OnePlusCos);
    CHECK(validate_even_positive(cosm, kPi).pass);

    ValidationReport rep = validate_even_positive(example_delta_measure(), kPi);
    CHECK(rep.pass);
    CHECK(rep.evenness_residual <= 1e-12);
}

TEST_CASE("validation rejects broken measures") {
    MeasureSpec lonely;
    lonely.atoms = {{1.0, 1.0}};
    ValidationReport rep = validate_even_positive(lonely, 2.0);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.atoms_symmetric);

    MeasureSpec negmass;
    negmass.atoms = {{1.0, -1.0}, {-1.0, -1.0}};
    CHECK_FALSE(validate_even_positive(negmass, 2.0).pass);

    MeasureSpec dup;
    dup.atoms = {{0.0, 1.0}, {0.0, 1.0}};
    CHECK_FALSE(validate_even_positive(dup, 2.0).pass);

    MeasureSpec odd;
    odd.expr = parse_density("1 + x");
    CHECK_FALSE(validate_even_positive(odd, 2.0).pass);

    MeasureSpec neg;
    neg.expr = parse_density("cos(x)");
    CHECK_FALSE(validate_even_positive(neg, kPi).pass);

    MeasureSpec flagged = example_delta_measure();
    flagged.even_flag = false;
    CHECK_FALSE(validate_even_positive(flagged, 2.0).pass);

    MeasureSpec empty;
    CHECK_FALSE(validate_even_positive(empty, 2.0).pass);

    CHECK_THROWS_AS(validate_even_positive(empty, -1.0), validation_error);
}

TEST_CASE("evenness holds on validated specs") {
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> xs(-20.0, 20.0);
    for (const char* src : {"1 + cos(x)", "2 + sin(x)/x", "1 + abs(x)^1.5",
                            "exp(0 - x*x)"}) {
        MeasureSpec m;
        m.expr = parse_density(src);
        REQUIRE(validate_even_positive(m, 10.0).pass);
        for (int i = 0; i < 100; ++i) {
            const double x = xs(rng);
            const double l = m.density_at(x), r = m.density_at(-x);
            CHECK(std::abs(l - r) <= 1e-12 * (1.0 + std::abs(l)));
        }
    }
}

TEST_CASE("density negativity is a hard error") {
    MeasureSpec m;
    m.expr = parse_density("cos(x)");
    CHECK_THROWS_AS(m.density_at(kPi), eval_error);
    // tiny negative noise is clamped
    MeasureSpec tiny;
    tiny.expr = parse_density("0 - 0.0000000000000001");
    CHECK(tiny.density_at(1.0) == 0.0);
}

TEST_CASE("json round trip") {
    const char* text = R"({
      "even": true,
      "atoms": [{"x": 0.0, "mass": 2.5066282746310002}],
      "density": {"kind": "builtin", "name": "constant",
                  "params": [0.3989422804014327]}
    })";
    MeasureSpec m = MeasureSpec::from_json(json::parse(text));
    REQUIRE(m.atoms.size() == 1);
    CHECK(m.atoms[0].mass == doctest::Approx(kSqrt2Pi).epsilon(1e-15));
    REQUIRE(m.builtin.has_value());

    MeasureSpec again = MeasureSpec::from_json(m.to_json());
    CHECK(again.atoms.size() == m.atoms.size());
    CHECK(again.builtin->name() == "constant");
    CHECK(again.builtin->params[0] == m.builtin->params[0]);

    MeasureSpec e;
    e.expr = parse_density("1 + cos(x)");
    MeasureSpec e2 = MeasureSpec::from_json(e.to_json());
    CHECK(e2.expr->source == "1 + cos(x)");

    CHECK_THROWS_AS(MeasureSpec::from_json(json::parse(R"({"density": 5})")),
                    validation_error);
    CHECK_THROWS_AS(MeasureSpec::load("/nonexistent/measure.json"),
                    validation_error);
}

TEST_CASE("pw diagnostic: lebesgue") {
    MeasureSpec m;
    m.builtin = BuiltinDensity::make(BuiltinDensity::Kind::Constant);
    PwDiagnostic d = pw_diagnostic(m, 4.0, 0.5, 2.0);
    CHECK(d.sup_unit_window_mass == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(!d.windows.empty());
    for (const auto& w : d.windows)
        CHECK(w.count >= 1);
    CHECK(d.note.find("heuristic") != std::string::npos);
}

TEST_CASE("pw diagnostic: one_plus_cos") {
    MeasureSpec m;
    m.builtin = BuiltinDensity::make(BuiltinDensity::Kind::OnePlusCos);
    PwDiagnostic d = pw_diagnostic(m, 4.0, 0.1, 2.0);
    CHECK(d.sup_unit_window_mass <= 2.0 + 1e-9);
    for (const auto& w : d.windows)
        CHECK(w.count >= 1);
}

TEST_CASE("pw diagnostic: decaying measure has empty far windows") {
    MeasureSpec m;
    m.builtin = BuiltinDensity::make(BuiltinDensity::Kind::PoissonLike);
    PwDiagnostic d = pw_diagnostic(m, 100.0, 0.5, 5.0);
    bool central_found = false;
    for (const auto& w : d.windows) {
        if (w.a >= 50.0)
            CHECK(w.count == 0); // tail mass beyond 50 is below 0.02
        if (w.a <= 0.0 && 0.0 < w.b && w.count >= 1)
            central_found = true;
    }
    CHECK(central_found);
}

} // TEST_SUITE
