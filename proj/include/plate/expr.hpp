#pragma once

// Coefficient expression mini-grammar.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?            right associative
//   primary := number | name | func '(' expr ')' | '(' expr ')'
//
// Names: x1, x2, r, theta, pi. Functions: sin, cos, exp, sqrt, step, where
// step(v) = 1 for v > 0 and 0 otherwise. A step whose argument has the form
// r - c (c constant) declares a jump radius at c.

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "plate/coeff.hpp"
#include "plate/geometry.hpp"

namespace plate {

class Expression {
public:
    enum class Op { constant, x1, x2, r, theta, add, sub, mul, div, pow, neg, sin, cos, exp, sqrt, step };

    struct Node {
        Op op;
        double value = 0.0;
        std::shared_ptr<const Node> a;
        std::shared_ptr<const Node> b;
    };

    static Expression parse(std::string_view text) {
        Parser p{text, 0};
        auto root = p.expr();
        p.skip_ws();
        if (p.pos != text.size()) p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
        Expression e;
        e.root_ = std::move(root);
        e.text_ = std::string(text);
        collect_jumps(*e.root_, e.jumps_);
        return e;
    }

    double operator()(const Point& p) const { return eval(*root_, p); }

    const std::string& text() const { return text_; }
    const std::vector<double>& jump_radii() const { return jumps_; }
    bool is_constant() const { return constant_node(*root_); }

private:
    struct Parser {
        std::string_view s;
        std::size_t pos;

        [[noreturn]] void fail(const std::string& what) const {
            throw std::invalid_argument("expression '" + std::string(s) + "': " + what + " at column " +
                                        std::to_string(pos + 1));
        }

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }

        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        static std::shared_ptr<const Node> make(Op op, std::shared_ptr<const Node> a = nullptr,
                                                std::shared_ptr<const Node> b = nullptr, double v = 0.0) {
            return std::make_shared<const Node>(Node{op, v, std::move(a), std::move(b)});
        }

        std::shared_ptr<const Node> expr() {
            auto lhs = term();
            for (;;) {
                if (eat('+')) lhs = make(Op::add, lhs, term());
                else if (eat('-')) lhs = make(Op::sub, lhs, term());
                else return lhs;
            }
        }

        std::shared_ptr<const Node> term() {
            auto lhs = unary();
            for (;;) {
                if (eat('*')) lhs = make(Op::mul, lhs, unary());
                else if (eat('/')) lhs = make(Op::div, lhs, unary());
                else return lhs;
            }
        }

        std::shared_ptr<const Node> unary() {
            if (eat('-')) return make(Op::neg, unary());
            if (eat('+')) return unary();
            return power();
        }

        std::shared_ptr<const Node> power() {
            auto base = primary();
            if (eat('^')) return make(Op::pow, base, unary());
            return base;
        }

        std::shared_ptr<const Node> primary() {
            skip_ws();
            if (pos >= s.size()) fail("unexpected end of input");
            const char c = s[pos];
            if (c == '(') {
                ++pos;
                auto e = expr();
                if (!eat(')')) fail("expected ')'");
                return e;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
            if (std::isalpha(static_cast<unsigned char>(c))) return name();
            fail("unexpected '" + std::string(1, c) + "'");
        }

        std::shared_ptr<const Node> number() {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
            if (ec != std::errc()) fail("malformed number");
            pos = static_cast<std::size_t>(ptr - s.data());
            return make(Op::constant, nullptr, nullptr, v);
        }

        std::shared_ptr<const Node> name() {
            const std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            const auto id = s.substr(start, pos - start);
            if (id == "x1") return make(Op::x1);
            if (id == "x2") return make(Op::x2);
            if (id == "r") return make(Op::r);
            if (id == "theta") return make(Op::theta);
            if (id == "pi") return make(Op::constant, nullptr, nullptr, std::numbers::pi);
            Op op;
            if (id == "sin") op = Op::sin;
            else if (id == "cos") op = Op::cos;
            else if (id == "exp") op = Op::exp;
            else if (id == "sqrt") op = Op::sqrt;
            else if (id == "step") op = Op::step;
            else {
                pos = start;
                fail("unknown name '" + std::string(id) + "'");
            }
            if (!eat('(')) fail("expected '(' after " + std::string(id));
            auto arg = expr();
            if (!eat(')')) fail("expected ')'");
            return make(op, arg);
        }
    };

    static double eval(const Node& n, const Point& p) {
        switch (n.op) {
            case Op::constant: return n.value;
            case Op::x1: return p.x1;
            case Op::x2: return p.x2;
            case Op::r: return p.r;
            case Op::theta: return p.theta;
            case Op::add: return eval(*n.a, p) + eval(*n.b, p);
            case Op::sub: return eval(*n.a, p) - eval(*n.b, p);
            case Op::mul: return eval(*n.a, p) * eval(*n.b, p);
            case Op::div: return eval(*n.a, p) / eval(*n.b, p);
            case Op::pow: return std::pow(eval(*n.a, p), eval(*n.b, p));
            case Op::neg: return -eval(*n.a, p);
            case Op::sin: return std::sin(eval(*n.a, p));
            case Op::cos: return std::cos(eval(*n.a, p));
            case Op::exp: return std::exp(eval(*n.a, p));
            case Op::sqrt: return std::sqrt(eval(*n.a, p));
            case Op::step: return step(eval(*n.a, p));
        }
        return 0.0;
    }

    static bool constant_node(const Node& n) {
        switch (n.op) {
            case Op::constant: return true;
            case Op::x1:
            case Op::x2:
            case Op::r:
            case Op::theta: return false;
            default: return constant_node(*n.a) && (!n.b || constant_node(*n.b));
        }
    }

    static void collect_jumps(const Node& n, std::vector<double>& out) {
        if (n.op == Op::step && n.a->op == Op::sub && n.a->a->op == Op::r && constant_node(*n.a->b)) {
            const double c = eval(*n.a->b, Point{});
            if (c > 0.0 && c < 1.0) out.push_back(c);
        }
        if (n.a) collect_jumps(*n.a, out);
        if (n.b) collect_jumps(*n.b, out);
    }

    std::shared_ptr<const Node> root_;
    std::string text_;
    std::vector<double> jumps_;
};

/// Grid density used to establish declared bounds of expression fields.
inline constexpr int kExpressionBoundsDensity = 64;

/// Coefficient field from a catalog key or an expression. Expression bounds
/// are the extrema observed on the validation grid; a non-positive or
/// non-finite sample is rejected.
inline CoefficientField make_coefficient(std::string_view text, Domain domain) {
    if (is_catalog_key(text)) return catalog(text);
    const auto e = Expression::parse(text);
    if (e.is_constant()) {
        const double c = e(Point{});
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw std::invalid_argument("coefficient '" + std::string(text) + "' must be positive");
        }
        return CoefficientField([c](const Point&) { return c; }, c, c, e.text());
    }
    const auto rep = sample_bounds(e, domain, kExpressionBoundsDensity);
    if (!rep.ok) throw std::invalid_argument("coefficient '" + std::string(text) + "': " + rep.message);
    if (!(rep.observed_min > 0.0)) {
        throw std::invalid_argument("coefficient '" + std::string(text) + "' is not positive on the unit " +
                                    std::string(to_string(domain)) + " (min " + std::to_string(rep.observed_min) +
                                    ")");
    }
    auto jumps = e.jump_radii();
    return CoefficientField([e](const Point& p) { return e(p); }, rep.observed_min, rep.observed_max, e.text(),
                            domain == Domain::disk ? jumps : std::vector<double>{});
}

}  // namespace plate
