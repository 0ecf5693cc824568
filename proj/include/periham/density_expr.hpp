#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace periham {

// Expression tree for density formulas in the variable x.
struct Expr {
    enum class Kind {
        Number, Var,
        Add, Sub, Mul, Div, Pow,
        Neg,
        Sin, Cos, Abs, Sqrt, Exp,
    };

    Kind kind;
    double number = 0.0;
    std::shared_ptr<const Expr> lhs; // only child for unary nodes
    std::shared_ptr<const Expr> rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

struct DensityExpr {
    std::string source;
    ExprPtr ast;

    double eval(double x) const;
};

// Recursive-descent parser for
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := unary ('^' factor)?            -- '^' right associative
//   unary   := '-' unary | primary
//   primary := number | 'x' | func '(' expr ')' | '(' expr ')'
// with func one of sin, cos, abs, sqrt, exp (case sensitive).
// Throws parse_error with the byte offset on malformed input.
DensityExpr parse_density(std::string_view source);

// Fully parenthesized rendering; parse_density(print_expr(e)) reproduces
// the tree structurally.
std::string print_expr(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// Throws eval_error on domain violations or non-finite intermediates.
double eval_expr(const Expr& e, double x);

} // namespace periham
