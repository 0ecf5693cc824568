#include "periham/density_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "periham/errors.hpp"

namespace periham {

namespace {

ExprPtr make_node(Expr::Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Number;
    e->number = v;
    return e;
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
public:
    explicit Parser(std::string_view s) : src_(s) {}

    ExprPtr run() {
        skip_ws();
        if (pos_ >= src_.size())
            throw parse_error("empty density expression", 0);
        ExprPtr e = expr();
        skip_ws();
        if (pos_ < src_.size())
            throw parse_error("unexpected trailing input", pos_);
        return e;
    }

private:
    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            skip_ws();
            if (match('+'))
                e = make_node(Expr::Kind::Add, e, term());
            else if (match('-'))
                e = make_node(Expr::Kind::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            skip_ws();
            if (match('*'))
                e = make_node(Expr::Kind::Mul, e, factor());
            else if (match('/'))
                e = make_node(Expr::Kind::Div, e, factor());
            else
                return e;
        }
    }

    ExprPtr factor() {
        ExprPtr base = unary();
        skip_ws();
        if (match('^'))
            return make_node(Expr::Kind::Pow, base, factor());
        return base;
    }

    ExprPtr unary() {
        skip_ws();
        if (match('-'))
            return make_node(Expr::Kind::Neg, unary());
        return primary();
    }

    ExprPtr primary() {
        skip_ws();
        if (pos_ >= src_.size())
            throw parse_error("unexpected end of expression", pos_);
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier();
        if (match('(')) {
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                ++pos_;
            if (pos_ < src_.size() &&
                std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark; // 'e' belonged to something else; not ours
            }
        }
        std::string text(src_.substr(start, pos_ - start));
        if (text == ".")
            throw parse_error("malformed number", start);
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size())
            throw parse_error("malformed number", start);
        return make_number(v);
    }

    ExprPtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_]))
            ++pos_;
        std::string name(src_.substr(start, pos_ - start));
        if (name == "x")
            return make_node(Expr::Kind::Var);

        Expr::Kind k;
        if (name == "sin")
            k = Expr::Kind::Sin;
        else if (name == "cos")
            k = Expr::Kind::Cos;
        else if (name == "abs")
            k = Expr::Kind::Abs;
        else if (name == "sqrt")
            k = Expr::Kind::Sqrt;
        else if (name == "exp")
            k = Expr::Kind::Exp;
        else
            throw parse_error("unknown identifier '" + name + "'", start);

        skip_ws();
        expect('(');
        ExprPtr arg = expr();
        expect(')');
        return make_node(k, arg);
    }

    void skip_ws() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool match(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!match(c))
            throw parse_error(std::string("expected '") + c + "'", pos_);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace

DensityExpr parse_density(std::string_view source) {
    DensityExpr d;
    d.source = std::string(source);
    d.ast = Parser(source).run();
    return d;
}

double eval_expr(const Expr& e, double x) {
    switch (e.kind) {
    case Expr::Kind::Number:
        return e.number;
    case Expr::Kind::Var:
        return x;
    case Expr::Kind::Add:
        return eval_expr(*e.lhs, x) + eval_expr(*e.rhs, x);
    case Expr::Kind::Sub:
        return eval_expr(*e.lhs, x) - eval_expr(*e.rhs, x);
    case Expr::Kind::Mul:
        return eval_expr(*e.lhs, x) * eval_expr(*e.rhs, x);
    case Expr::Kind::Div: {
        double den = eval_expr(*e.rhs, x);
        if (den == 0.0)
            throw eval_error("division by zero in density expression");
        return eval_expr(*e.lhs, x) / den;
    }
    case Expr::Kind::Pow: {
        double v = std::pow(eval_expr(*e.lhs, x), eval_expr(*e.rhs, x));
        if (!std::isfinite(v))
            throw eval_error("pow out of domain in density expression");
        return v;
    }
    case Expr::Kind::Neg:
        return -eval_expr(*e.lhs, x);
    case Expr::Kind::Sin:
        return std::sin(eval_expr(*e.lhs, x));
    case Expr::Kind::Cos:
        return std::cos(eval_expr(*e.lhs, x));
    case Expr::Kind::Abs:
        return std::abs(eval_expr(*e.lhs, x));
    case Expr::Kind::Sqrt: {
        double v = eval_expr(*e.lhs, x);
        if (v < 0.0)
            throw eval_error("sqrt of negative value in density expression");
        return std::sqrt(v);
    }
    case Expr::Kind::Exp: {
        double v = std::exp(eval_expr(*e.lhs, x));
        if (!std::isfinite(v))
            throw eval_error("exp overflow in density expression");
        return v;
    }
    }
    throw eval_error("corrupt expression node");
}

double DensityExpr::eval(double x) const {
    double v = eval_expr(*ast, x);
    if (!std::isfinite(v))
        throw eval_error("density evaluation is not finite");
    return v;
}

std::string print_expr(const Expr& e) {
    auto binary = [&](const char* op) {
        return "(" + print_expr(*e.lhs) + op + print_expr(*e.rhs) + ")";
    };
    auto call = [&](const char* fn) {
        return std::string(fn) + "(" + print_expr(*e.lhs) + ")";
    };
    switch (e.kind) {
    case Expr::Kind::Number: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", e.number);
        return buf;
    }
    case Expr::Kind::Var:
        return "x";
    case Expr::Kind::Add:
        return binary(" + ");
    case Expr::Kind::Sub:
        return binary(" - ");
    case Expr::Kind::Mul:
        return binary("*");
    case Expr::Kind::Div:
        return binary("/");
    case Expr::Kind::Pow:
        return binary("^");
    case Expr::Kind::Neg:
        return "(-" + print_expr(*e.lhs) + ")";
    case Expr::Kind::Sin:
        return call("sin");
    case Expr::Kind::Cos:
        return call("cos");
    case Expr::Kind::Abs:
        return call("abs");
    case Expr::Kind::Sqrt:
        return call("sqrt");
    case Expr::Kind::Exp:
        return call("exp");
    }
    return "?";
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind)
        return false;
    if (a.kind == Expr::Kind::Number)
        return a.number == b.number;
    if (a.lhs && (!b.lhs || !structurally_equal(*a.lhs, *b.lhs)))
        return false;
    if (!a.lhs && b.lhs)
        return false;
    if (a.rhs && (!b.rhs || !structurally_equal(*a.rhs, *b.rhs)))
        return false;
    if (!a.rhs && b.rhs)
        return false;
    return true;
}

} // namespace periham
