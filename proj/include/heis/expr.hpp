#pragma once

// Expression DSL for defining functions f(x,y,z): parsing, evaluation,
// symbolic first derivatives, and the horizontal derivatives Xf, Yf, Zf
// in the left-invariant frame.

#include <memory>
#include <string>
#include <string_view>

#include "heis/geometry.hpp"

namespace heis {

enum class Axis { x = 0, y = 1, z = 2 };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { constant, var, neg, add, sub, mul, div, pow, sin, cos, exp };

    Kind kind;
    double value = 0.0;  // constant
    Axis axis = Axis::x; // var
    int exponent = 0;    // pow (nonnegative integer)
    ExprPtr a, b;        // children
};

// Smart constructors; they fold constants and drop algebraic identities so
// derivative trees stay small.
ExprPtr make_const(double v);
ExprPtr make_var(Axis axis);
ExprPtr make_neg(ExprPtr e);
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_sub(ExprPtr a, ExprPtr b);
ExprPtr make_mul(ExprPtr a, ExprPtr b);
ExprPtr make_div(ExprPtr a, ExprPtr b);
ExprPtr make_pow(ExprPtr a, int n);
ExprPtr make_sin(ExprPtr e);
ExprPtr make_cos(ExprPtr e);
ExprPtr make_exp(ExprPtr e);

/// Parse DSL source. Throws ParseError with the byte offset of the problem.
ExprPtr parse(std::string_view src);

/// Canonical text form; parse(print(e)) is structurally equal to e.
std::string print(const ExprPtr& e);

/// Value of e at p. Division by zero throws DomainError.
double eval(const ExprPtr& e, const Point& p);

/// Symbolic partial derivative with respect to one coordinate.
ExprPtr diff(const ExprPtr& e, Axis axis);

bool struct_equal(const ExprPtr& a, const ExprPtr& b);

/// Replace the variables x, y, z by the given subexpressions.
ExprPtr substitute(const ExprPtr& e, const ExprPtr& sx, const ExprPtr& sy, const ExprPtr& sz);

struct HorizontalDerivs {
    double Xf = 0.0;
    double Yf = 0.0;
    double Zf = 0.0;
    struct {
        double fx = 0.0;
        double fy = 0.0;
        double fz = 0.0;
    } grad;
};

/// A defining function bundled with its symbolic partials, ready for
/// repeated evaluation along flows. Immutable after construction.
class Surface {
public:
    explicit Surface(ExprPtr f);
    explicit Surface(std::string_view src) : Surface(parse(src)) {}

    double value(const Point& p) const { return eval(f_, p); }
    HorizontalDerivs derivs(const Point& p) const;

    const ExprPtr& expr() const { return f_; }
    const ExprPtr& fx() const { return fx_; }
    const ExprPtr& fy() const { return fy_; }
    const ExprPtr& fz() const { return fz_; }

private:
    ExprPtr f_, fx_, fy_, fz_;
};

inline HorizontalDerivs horizontal_derivs(const Surface& s, const Point& p) {
    return s.derivs(p);
}

}  // namespace heis
