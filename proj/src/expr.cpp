#include "heis/expr.hpp"

#include <cctype>
#include <cmath>
#include <utility>

#include "heis/util.hpp"

namespace heis {
namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool is_const(const ExprPtr& e, double v) {
    return e->kind == Expr::Kind::constant && e->value == v;
}

}  // namespace

ExprPtr make_const(double v) {
    Expr e;
    e.kind = Expr::Kind::constant;
    e.value = v;
    return node(std::move(e));
}

ExprPtr make_var(Axis axis) {
    Expr e;
    e.kind = Expr::Kind::var;
    e.axis = axis;
    return node(std::move(e));
}

ExprPtr make_neg(ExprPtr a) {
    if (a->kind == Expr::Kind::constant) return make_const(-a->value);
    if (a->kind == Expr::Kind::neg) return a->a;
    Expr e;
    e.kind = Expr::Kind::neg;
    e.a = std::move(a);
    return node(std::move(e));
}

ExprPtr make_add(ExprPtr a, ExprPtr b) {
    if (a->kind == Expr::Kind::constant && b->kind == Expr::Kind::constant)
        return make_const(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    Expr e;
    e.kind = Expr::Kind::add;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

ExprPtr make_sub(ExprPtr a, ExprPtr b) {
    if (a->kind == Expr::Kind::constant && b->kind == Expr::Kind::constant)
        return make_const(a->value - b->value);
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return make_neg(std::move(b));
    Expr e;
    e.kind = Expr::Kind::sub;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

ExprPtr make_mul(ExprPtr a, ExprPtr b) {
    if (a->kind == Expr::Kind::constant && b->kind == Expr::Kind::constant)
        return make_const(a->value * b->value);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    Expr e;
    e.kind = Expr::Kind::mul;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

ExprPtr make_div(ExprPtr a, ExprPtr b) {
    if (a->kind == Expr::Kind::constant && b->kind == Expr::Kind::constant && b->value != 0.0)
        return make_const(a->value / b->value);
    if (is_const(b, 1.0)) return a;
    Expr e;
    e.kind = Expr::Kind::div;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

ExprPtr make_pow(ExprPtr a, int n) {
    if (n < 0) throw DomainError("pow: exponent must be nonnegative");
    if (n == 0) return make_const(1.0);
    if (n == 1) return a;
    if (a->kind == Expr::Kind::constant) return make_const(std::pow(a->value, n));
    Expr e;
    e.kind = Expr::Kind::pow;
    e.exponent = n;
    e.a = std::move(a);
    return node(std::move(e));
}

ExprPtr make_sin(ExprPtr a) {
    if (a->kind == Expr::Kind::constant) return make_const(std::sin(a->value));
    Expr e;
    e.kind = Expr::Kind::sin;
    e.a = std::move(a);
    return node(std::move(e));
}

ExprPtr make_cos(ExprPtr a) {
    if (a->kind == Expr::Kind::constant) return make_const(std::cos(a->value));
    Expr e;
    e.kind = Expr::Kind::cos;
    e.a = std::move(a);
    return node(std::move(e));
}

ExprPtr make_exp(ExprPtr a) {
    if (a->kind == Expr::Kind::constant) return make_const(std::exp(a->value));
    Expr e;
    e.kind = Expr::Kind::exp;
    e.a = std::move(a);
    return node(std::move(e));
}

// ---------------------------------------------------------------------------
// Recursive-descent parser for:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := ("-")? atom ("^" integer)?
//   atom   := number | "x" | "y" | "z" | func "(" expr ")" | "(" expr ")"
//   func   := "sin" | "cos" | "exp"
namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : s_(src) {}

    ExprPtr run() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ < s_.size())
            throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                e = make_add(e, parse_term());
            } else if (c == '-') {
                ++pos_;
                e = make_sub(e, parse_term());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                e = make_mul(e, parse_factor());
            } else if (c == '/') {
                ++pos_;
                e = make_div(e, parse_factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_factor() {
        bool negate = false;
        if (peek() == '-') {
            negate = true;
            ++pos_;
        }
        ExprPtr e = parse_atom();
        if (peek() == '^') {
            ++pos_;
            e = make_pow(e, parse_integer());
        }
        return negate ? make_neg(e) : e;
    }

    int parse_integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("expected nonnegative integer exponent", pos_);
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000) throw ParseError("exponent too large", start);
            ++pos_;
        }
        return static_cast<int>(v);
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        const std::size_t start = pos_;
        const char c = s_[pos_];

        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
                name += s_[pos_++];
            if (name == "x") return make_var(Axis::x);
            if (name == "y") return make_var(Axis::y);
            if (name == "z") return make_var(Axis::z);
            if (name == "sin" || name == "cos" || name == "exp") {
                if (peek() != '(') throw ParseError("expected '(' after function name", pos_);
                ++pos_;
                ExprPtr arg = parse_expr();
                if (peek() != ')') throw ParseError("expected ')'", pos_);
                ++pos_;
                if (name == "sin") return make_sin(arg);
                if (name == "cos") return make_cos(arg);
                return make_exp(arg);
            }
            throw ParseError("unknown identifier '" + name + "'", start);
        }
        throw ParseError(std::string("unexpected '") + c + "'", start);
    }

    ExprPtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // not an exponent suffix
            }
        }
        const std::string text(s_.substr(start, pos_ - start));
        if (text == ".") throw ParseError("malformed number", start);
        return make_const(std::strtod(text.c_str(), nullptr));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view src) { return Parser(src).run(); }

// ---------------------------------------------------------------------------

namespace {

// Precedence levels for printing: additive 1, multiplicative 2, unary 3, pow 4.
int prec(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::add:
        case Expr::Kind::sub: return 1;
        case Expr::Kind::mul:
        case Expr::Kind::div: return 2;
        case Expr::Kind::neg: return 3;
        case Expr::Kind::pow: return 4;
        default: return 5;
    }
}

void print_rec(const ExprPtr& e, std::string& out, int parent_prec) {
    const int p = prec(*e);
    const bool need_paren = p < parent_prec;
    if (need_paren) out += '(';
    switch (e->kind) {
        case Expr::Kind::constant: out += fmt_double(e->value); break;
        case Expr::Kind::var:
            out += e->axis == Axis::x ? 'x' : e->axis == Axis::y ? 'y' : 'z';
            break;
        case Expr::Kind::neg:
            out += '-';
            print_rec(e->a, out, p + 1);
            break;
        case Expr::Kind::add:
            print_rec(e->a, out, p);
            out += " + ";
            print_rec(e->b, out, p + 1);
            break;
        case Expr::Kind::sub:
            print_rec(e->a, out, p);
            out += " - ";
            print_rec(e->b, out, p + 1);
            break;
        case Expr::Kind::mul:
            print_rec(e->a, out, p);
            out += "*";
            print_rec(e->b, out, p + 1);
            break;
        case Expr::Kind::div:
            print_rec(e->a, out, p);
            out += "/";
            print_rec(e->b, out, p + 1);
            break;
        case Expr::Kind::pow:
            print_rec(e->a, out, p + 1);
            out += '^';
            out += std::to_string(e->exponent);
            break;
        case Expr::Kind::sin:
            out += "sin(";
            print_rec(e->a, out, 0);
            out += ')';
            break;
        case Expr::Kind::cos:
            out += "cos(";
            print_rec(e->a, out, 0);
            out += ')';
            break;
        case Expr::Kind::exp:
            out += "exp(";
            print_rec(e->a, out, 0);
            out += ')';
            break;
    }
    if (need_paren) out += ')';
}

}  // namespace

std::string print(const ExprPtr& e) {
    std::string out;
    print_rec(e, out, 0);
    return out;
}

double eval(const ExprPtr& e, const Point& p) {
    switch (e->kind) {
        case Expr::Kind::constant: return e->value;
        case Expr::Kind::var:
            return e->axis == Axis::x ? p.x : e->axis == Axis::y ? p.y : p.z;
        case Expr::Kind::neg: return -eval(e->a, p);
        case Expr::Kind::add: return eval(e->a, p) + eval(e->b, p);
        case Expr::Kind::sub: return eval(e->a, p) - eval(e->b, p);
        case Expr::Kind::mul: return eval(e->a, p) * eval(e->b, p);
        case Expr::Kind::div: {
            const double den = eval(e->b, p);
            if (den == 0.0) throw DomainError("division by zero in expression");
            return eval(e->a, p) / den;
        }
        case Expr::Kind::pow: {
            double base = eval(e->a, p), acc = 1.0;
            int n = e->exponent;
            while (n > 0) {
                if (n & 1) acc *= base;
                base *= base;
                n >>= 1;
            }
            return acc;
        }
        case Expr::Kind::sin: return std::sin(eval(e->a, p));
        case Expr::Kind::cos: return std::cos(eval(e->a, p));
        case Expr::Kind::exp: return std::exp(eval(e->a, p));
    }
    throw Error("eval: corrupt expression node");
}

ExprPtr diff(const ExprPtr& e, Axis axis) {
    switch (e->kind) {
        case Expr::Kind::constant: return make_const(0.0);
        case Expr::Kind::var: return make_const(e->axis == axis ? 1.0 : 0.0);
        case Expr::Kind::neg: return make_neg(diff(e->a, axis));
        case Expr::Kind::add: return make_add(diff(e->a, axis), diff(e->b, axis));
        case Expr::Kind::sub: return make_sub(diff(e->a, axis), diff(e->b, axis));
        case Expr::Kind::mul:
            return make_add(make_mul(diff(e->a, axis), e->b), make_mul(e->a, diff(e->b, axis)));
        case Expr::Kind::div:
            return make_div(
                make_sub(make_mul(diff(e->a, axis), e->b), make_mul(e->a, diff(e->b, axis))),
                make_pow(e->b, 2));
        case Expr::Kind::pow:
            return make_mul(make_mul(make_const(e->exponent), make_pow(e->a, e->exponent - 1)),
                            diff(e->a, axis));
        case Expr::Kind::sin: return make_mul(make_cos(e->a), diff(e->a, axis));
        case Expr::Kind::cos: return make_neg(make_mul(make_sin(e->a), diff(e->a, axis)));
        case Expr::Kind::exp: return make_mul(make_exp(e->a), diff(e->a, axis));
    }
    throw Error("diff: corrupt expression node");
}

bool struct_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::constant: return a->value == b->value;
        case Expr::Kind::var: return a->axis == b->axis;
        case Expr::Kind::pow:
            return a->exponent == b->exponent && struct_equal(a->a, b->a);
        case Expr::Kind::neg:
        case Expr::Kind::sin:
        case Expr::Kind::cos:
        case Expr::Kind::exp: return struct_equal(a->a, b->a);
        default: return struct_equal(a->a, b->a) && struct_equal(a->b, b->b);
    }
}

ExprPtr substitute(const ExprPtr& e, const ExprPtr& sx, const ExprPtr& sy, const ExprPtr& sz) {
    switch (e->kind) {
        case Expr::Kind::constant: return e;
        case Expr::Kind::var:
            return e->axis == Axis::x ? sx : e->axis == Axis::y ? sy : sz;
        case Expr::Kind::neg: return make_neg(substitute(e->a, sx, sy, sz));
        case Expr::Kind::add:
            return make_add(substitute(e->a, sx, sy, sz), substitute(e->b, sx, sy, sz));
        case Expr::Kind::sub:
            return make_sub(substitute(e->a, sx, sy, sz), substitute(e->b, sx, sy, sz));
        case Expr::Kind::mul:
            return make_mul(substitute(e->a, sx, sy, sz), substitute(e->b, sx, sy, sz));
        case Expr::Kind::div:
            return make_div(substitute(e->a, sx, sy, sz), substitute(e->b, sx, sy, sz));
        case Expr::Kind::pow: return make_pow(substitute(e->a, sx, sy, sz), e->exponent);
        case Expr::Kind::sin: return make_sin(substitute(e->a, sx, sy, sz));
        case Expr::Kind::cos: return make_cos(substitute(e->a, sx, sy, sz));
        case Expr::Kind::exp: return make_exp(substitute(e->a, sx, sy, sz));
    }
    throw Error("substitute: corrupt expression node");
}

// ---------------------------------------------------------------------------

Surface::Surface(ExprPtr f)
    : f_(std::move(f)),
      fx_(diff(f_, Axis::x)),
      fy_(diff(f_, Axis::y)),
      fz_(diff(f_, Axis::z)) {}

HorizontalDerivs Surface::derivs(const Point& p) const {
    HorizontalDerivs d;
    d.grad.fx = eval(fx_, p);
    d.grad.fy = eval(fy_, p);
    d.grad.fz = eval(fz_, p);
    d.Xf = d.grad.fx - 0.5 * p.y * d.grad.fz;
    d.Yf = d.grad.fy + 0.5 * p.x * d.grad.fz;
    d.Zf = d.grad.fz;
    return d;
}

}  // namespace heis
