#pragma once

/**
    \file
    \brief univariate expression language: parse, print, evaluate over reals and jets

    Grammar (ASCII, whitespace insignificant):

        expr     := term (('+' | '-') term)*
        term     := unary (('*' | '/') unary)*
        unary    := '-' unary | power
        power    := primary ('^' exponent)?
        exponent := ['-'] INT ('^' exponent)? | '(' ['-'] INT ['/' ['-'] INT] ')'
        primary  := NUMBER | 't' | FUNC '(' expr ')' | '(' expr ')'
        FUNC     := sin | cos | exp | sqrt

    Exponents are integer or rational literals. The only variable is `t`.
*/

#include <frontal/error.hpp>
#include <frontal/jet.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>

namespace frontal {

enum class Op { constant, variable, neg, sin, cos, exp, sqrt, add, sub, mul, div, pow };

class Expr
{
public:
    struct Node
    {
        Op op;
        double value = 0.0;   // constant
        Rational exponent{};  // pow
        std::shared_ptr<Node const> lhs;
        std::shared_ptr<Node const> rhs;
    };

    static Expr constant(double v) { return Expr(std::make_shared<Node const>(Node{Op::constant, v, {}, {}, {}})); }
    static Expr variable() { return Expr(std::make_shared<Node const>(Node{Op::variable, 0.0, {}, {}, {}})); }

    static Expr unary(Op op, Expr const& a)
    {
        return Expr(std::make_shared<Node const>(Node{op, 0.0, {}, a.node_, {}}));
    }

    static Expr binary(Op op, Expr const& a, Expr const& b)
    {
        return Expr(std::make_shared<Node const>(Node{op, 0.0, {}, a.node_, b.node_}));
    }

    static Expr power(Expr const& base, Rational e)
    {
        return Expr(std::make_shared<Node const>(Node{Op::pow, 0.0, e, base.node_, {}}));
    }

    Op op() const noexcept { return node_->op; }
    double value() const noexcept { return node_->value; }
    Rational exponent() const noexcept { return node_->exponent; }
    Expr lhs() const { return Expr(node_->lhs); }
    Expr rhs() const { return Expr(node_->rhs); }

    // structural equality
    friend bool operator==(Expr const& a, Expr const& b) { return same(a.node_.get(), b.node_.get()); }

private:
    explicit Expr(std::shared_ptr<Node const> node) : node_(std::move(node)) {}

    static bool same(Node const* a, Node const* b)
    {
        if (a == b) return true;
        if (!a || !b || a->op != b->op) return false;
        switch (a->op) {
        case Op::constant: return a->value == b->value;
        case Op::variable: return true;
        case Op::pow: return a->exponent == b->exponent && same(a->lhs.get(), b->lhs.get());
        default: return same(a->lhs.get(), b->lhs.get()) && same(a->rhs.get(), b->rhs.get());
        }
    }

    std::shared_ptr<Node const> node_;
};

namespace detail {

inline std::string format_number(double v)
{
    char buf[64];
    auto const res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline char const* op_name(Op op)
{
    switch (op) {
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::exp: return "exp";
    case Op::sqrt: return "sqrt";
    case Op::add: return "+";
    case Op::sub: return "-";
    case Op::mul: return "*";
    case Op::div: return "/";
    default: return "?";
    }
}

class Parser
{
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse()
    {
        Expr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("expected operator or end of input");
        return e;
    }

private:
    [[noreturn]] void fail(std::string const& msg) const { throw ParseError(msg, pos_); }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expr()
    {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) lhs = Expr::binary(Op::add, lhs, term());
            else if (accept('-')) lhs = Expr::binary(Op::sub, lhs, term());
            else return lhs;
        }
    }

    Expr term()
    {
        Expr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = Expr::binary(Op::mul, lhs, unary());
            else if (accept('/')) lhs = Expr::binary(Op::div, lhs, unary());
            else return lhs;
        }
    }

    Expr unary()
    {
        if (accept('-')) return Expr::unary(Op::neg, unary());
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (accept('^')) return Expr::power(base, exponent());
        return base;
    }

    long integer()
    {
        skip_ws();
        long v = 0;
        auto const* first = src_.data() + pos_;
        auto const* last = src_.data() + src_.size();
        auto const res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr == first) fail("expected integer exponent");
        pos_ += static_cast<std::size_t>(res.ptr - first);
        if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
            fail("exponent must be an integer or rational literal");
        return v;
    }

    long signed_integer() { return accept('-') ? -integer() : integer(); }

    Rational exponent()
    {
        if (accept('(')) {
            long const num = signed_integer();
            long den = 1;
            std::size_t den_pos = pos_;
            if (accept('/')) {
                skip_ws();
                den_pos = pos_;
                den = signed_integer();
            }
            if (den == 0) {
                pos_ = den_pos;
                fail("zero denominator in exponent");
            }
            expect(')');
            return Rational::make(num, den);
        }
        long const base = signed_integer();
        if (accept('^')) {
            Rational const up = exponent();
            if (!up.is_integer() || up.num < 0 || up.num > 62)
                fail("exponent must be an integer or rational literal");
            long v = 1;
            for (long i = 0; i < up.num; ++i) v *= base;
            return Rational::make(v, 1);
        }
        return Rational::make(base, 1);
    }

    Expr primary()
    {
        skip_ws();
        if (pos_ >= src_.size()) fail("expected number, 't', function or '('");
        char const c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t const start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string_view const id = src_.substr(start, pos_ - start);
            if (id == "t") return Expr::variable();
            Op op{};
            if (id == "sin") op = Op::sin;
            else if (id == "cos") op = Op::cos;
            else if (id == "exp") op = Op::exp;
            else if (id == "sqrt") op = Op::sqrt;
            else {
                pos_ = start;
                fail("unknown identifier '" + std::string(id) + "'");
            }
            expect('(');
            Expr arg = expr();
            expect(')');
            return Expr::unary(op, arg);
        }
        fail("expected number, 't', function or '('");
    }

    Expr number()
    {
        double v = 0.0;
        auto const* first = src_.data() + pos_;
        auto const* last = src_.data() + src_.size();
        auto const res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr == first) fail("malformed number");
        pos_ += static_cast<std::size_t>(res.ptr - first);
        return Expr::constant(v);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Expr parse(std::string_view source) { return detail::Parser(source).parse(); }

// Fully parenthesised rendering; parse(to_string(e)) == e for every tree the
// parser can produce (constants are non-negative).
inline std::string to_string(Expr const& e)
{
    switch (e.op()) {
    case Op::constant: return detail::format_number(e.value());
    case Op::variable: return "t";
    case Op::neg: return "(-" + to_string(e.lhs()) + ")";
    case Op::sin:
    case Op::cos:
    case Op::exp:
    case Op::sqrt: return std::string(detail::op_name(e.op())) + "(" + to_string(e.lhs()) + ")";
    case Op::pow: {
        auto const x = e.exponent();
        std::string exp_text = x.is_integer() && x.num >= 0
                                   ? std::to_string(x.num)
                                   : "(" + std::to_string(x.num) + (x.is_integer() ? "" : "/" + std::to_string(x.den)) + ")";
        return "(" + to_string(e.lhs()) + "^" + exp_text + ")";
    }
    default:
        return "(" + to_string(e.lhs()) + " " + detail::op_name(e.op()) + " " + to_string(e.rhs()) + ")";
    }
}

inline Jet eval_jet(Expr const& e, double t0, int order)
{
    switch (e.op()) {
    case Op::constant: return Jet::constant(t0, order, e.value());
    case Op::variable: return Jet::variable(t0, order);
    case Op::neg: return -eval_jet(e.lhs(), t0, order);
    case Op::add: return eval_jet(e.lhs(), t0, order) + eval_jet(e.rhs(), t0, order);
    case Op::sub: return eval_jet(e.lhs(), t0, order) - eval_jet(e.rhs(), t0, order);
    case Op::mul: return eval_jet(e.lhs(), t0, order) * eval_jet(e.rhs(), t0, order);
    default: break;
    }

    Jet const a = eval_jet(e.lhs(), t0, order);
    Jet const b = e.op() == Op::div ? eval_jet(e.rhs(), t0, order) : Jet();
    try {
        switch (e.op()) {
        case Op::sin: return sin(a);
        case Op::cos: return cos(a);
        case Op::exp: return exp(a);
        case Op::sqrt: return sqrt(a);
        case Op::pow: return pow(a, e.exponent());
        case Op::div: return a / b;
        default: throw DomainError("unhandled expression node");
        }
    } catch (DomainError const& err) {
        throw DomainError(std::string(err.what()) + " in '" + to_string(e) + "' at t = " +
                          detail::format_number(t0));
    }
}

inline double eval_real(Expr const& e, double t) { return eval_jet(e, t, 0)[0]; }

} // namespace frontal
