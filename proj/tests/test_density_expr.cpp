#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "periham/density_expr.hpp"
#include "periham/errors.hpp"

using namespace periham;

namespace {

constexpr double kPi = std::numbers::pi;

// depth-limited random AST for the round-trip property
ExprPtr random_ast(std::mt19937& rng, int depth) {
    auto leaf = [&]() -> ExprPtr {
        auto e = std::make_shared<Expr>();
        if (rng() % 2 == 0) {
            e->kind = Expr::Kind::Var;
        } else {
            e->kind = Expr::Kind::Number;
            std::uniform_real_distribution<double> val(0.0, 8.0);
            e->number = val(rng);
        }
        return e;
    };
    if (depth <= 0)
        return leaf();
    static const Expr::Kind kinds[] = {
        Expr::Kind::Add,  Expr::Kind::Sub, Expr::Kind::Mul, Expr::Kind::Div,
        Expr::Kind::Pow,  Expr::Kind::Neg, Expr::Kind::Sin, Expr::Kind::Cos,
        Expr::Kind::Abs,  Expr::Kind::Sqrt, Expr::Kind::Exp,
    };
    const Expr::Kind k = kinds[rng() % (sizeof(kinds) / sizeof(kinds[0]))];
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = random_ast(rng, depth - 1);
    if (k == Expr::Kind::Add || k == Expr::Kind::Sub || k == Expr::Kind::Mul ||
        k == Expr::Kind::Div || k == Expr::Kind::Pow)
        e->rhs = random_ast(rng, depth - 1);
    return e;
}

} // namespace

TEST_SUITE("density_expr") {

TEST_CASE("named examples") {
    DensityExpr d = parse_density("1 + cos(x)");
    REQUIRE(d.ast->kind == Expr::Kind::Add);
    CHECK(d.ast->lhs->kind == Expr::Kind::Number);
    CHECK(d.ast->lhs->number == 1.0);
    CHECK(d.ast->rhs->kind == Expr::Kind::Cos);
    CHECK(d.ast->rhs->lhs->kind == Expr::Kind::Var);
    CHECK(d.eval(0.0) == 2.0);

    CHECK(parse_density("1 + sin(x)/x").eval(kPi) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(parse_density("1 + abs(x)^0.5").eval(4.0) == 3.0);
}

TEST_CASE("precedence and associativity") {
    CHECK(parse_density("2^3^2").eval(0.0) == 512.0);
    CHECK(parse_density("2*3+4*5").eval(0.0) == 26.0);
    CHECK(parse_density("2+3*4^2").eval(0.0) == 50.0);
    CHECK(parse_density("1 - 2 - 3").eval(0.0) == -4.0);
    CHECK(parse_density("2^-1").eval(0.0) == 0.5);
    // per the grammar, unary minus binds below '^'
    CHECK(parse_density("-x^2").eval(3.0) == 9.0);
    CHECK(parse_density("6/2/3").eval(0.0) == 1.0);
    CHECK(parse_density("(1 + 2)*x").eval(5.0) == 15.0);
    CHECK(parse_density("1.5e2").eval(0.0) == 150.0);
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(parse_density(""), parse_error);
    CHECK_THROWS_AS(parse_density("   "), parse_error);

    try {
        parse_density("1 +");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.offset() == 3);
    }
    try {
        parse_density("foo(x)");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.offset() == 0);
        CHECK(std::string(e.what()).find("unknown identifier") !=
              std::string::npos);
    }
    CHECK_THROWS_AS(parse_density("1 + cos(x"), parse_error);
    CHECK_THROWS_AS(parse_density("1 2"), parse_error);
    CHECK_THROWS_AS(parse_density("sin x"), parse_error);
    CHECK_THROWS_AS(parse_density("X"), parse_error);
}

TEST_CASE("evaluation domain errors") {
    CHECK_THROWS_AS(parse_density("1/x").eval(0.0), eval_error);
    CHECK_THROWS_AS(parse_density("sqrt(0 - x)").eval(4.0), eval_error);
    CHECK_THROWS_AS(parse_density("x^0.5").eval(-2.0), eval_error);
    CHECK_THROWS_AS(parse_density("exp(x)").eval(1e9), eval_error);
    CHECK(parse_density("sqrt(x)").eval(9.0) == 3.0);
}

TEST_CASE("print/parse round trip") {
    std::mt19937 rng(424242u);
    std::uniform_real_distribution<double> xs(-3.0, 3.0);
    for (int rep = 0; rep < 200; ++rep) {
        ExprPtr ast = random_ast(rng, 1 + rep % 5);
        const std::string text = print_expr(*ast);
        DensityExpr re = parse_density(text);
        CHECK(structurally_equal(*ast, *re.ast));

        const double x = xs(rng);
        double expect = 0.0;
        bool ok = true;
        try {
            expect = eval_expr(*ast, x);
        } catch (const eval_error&) {
            ok = false;
        }
        if (ok && std::isfinite(expect))
            CHECK(eval_expr(*re.ast, x) == expect);
    }
}

} // TEST_SUITE
