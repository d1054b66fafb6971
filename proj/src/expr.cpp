// SPDX-License-Identifier: MIT
#include "stieltjes/calculus.hpp"
#include "stieltjes/spec_io.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace stieltjes {

struct Expr::Node {
    ExprKind kind;
    double number = 0.0;
    std::vector<Expr> kids;
};

namespace {

std::string format_number(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

}  // namespace

ExprKind Expr::kind() const noexcept { return node_->kind; }
double Expr::number() const noexcept { return node_->number; }
const std::vector<Expr>& Expr::children() const noexcept { return node_->kids; }

bool Expr::is_constant(double c) const noexcept {
    return node_->kind == ExprKind::constant && node_->number == c;
}

Expr Expr::constant(double c) {
    return Expr(std::make_shared<const Node>(Node{ExprKind::constant, c, {}}));
}

Expr Expr::g() { return Expr(std::make_shared<const Node>(Node{ExprKind::g_val, 0.0, {}})); }
Expr Expr::delta() { return Expr(std::make_shared<const Node>(Node{ExprKind::delta_g, 0.0, {}})); }
Expr Expr::chi() { return Expr(std::make_shared<const Node>(Node{ExprKind::indicator_dg, 0.0, {}})); }
Expr Expr::q() { return Expr(std::make_shared<const Node>(Node{ExprKind::q_val, 0.0, {}})); }

Expr Expr::star(const Expr& e) {
    if (e.kind() == ExprKind::constant || e.kind() == ExprKind::star) return e;
    return Expr(std::make_shared<const Node>(Node{ExprKind::star, 0.0, {e}}));
}

Expr Expr::sum(const Expr& a, const Expr& b) {
    if (a.kind() == ExprKind::constant && b.kind() == ExprKind::constant) return constant(a.number() + b.number());
    if (a.is_constant(0.0)) return b;
    if (b.is_constant(0.0)) return a;
    return Expr(std::make_shared<const Node>(Node{ExprKind::sum, 0.0, {a, b}}));
}

Expr Expr::scale(double c, const Expr& e) {
    if (e.kind() == ExprKind::constant) return constant(c * e.number());
    if (c == 0.0) return constant(0.0);
    if (c == 1.0) return e;
    if (e.kind() == ExprKind::scale) return scale(c * e.number(), e.children()[0]);
    return Expr(std::make_shared<const Node>(Node{ExprKind::scale, c, {e}}));
}

namespace {

bool is_star_of(const Expr& e, ExprKind inner) {
    return e.kind() == ExprKind::star && e.children()[0].kind() == inner;
}

}  // namespace

Expr Expr::product(const Expr& a, const Expr& b) {
    if (a.kind() == ExprKind::constant && b.kind() == ExprKind::constant) return constant(a.number() * b.number());
    if (a.kind() == ExprKind::constant) return scale(a.number(), b);
    if (b.kind() == ExprKind::constant) return scale(b.number(), a);
    if ((is_star_of(a, ExprKind::q_val) && is_star_of(b, ExprKind::delta_g)) ||
        (is_star_of(a, ExprKind::delta_g) && is_star_of(b, ExprKind::q_val)))
        return star(chi());
    return Expr(std::make_shared<const Node>(Node{ExprKind::product, 0.0, {a, b}}));
}

Expr Expr::quotient(const Expr& a, const Expr& b) {
    if (a.kind() == ExprKind::constant && b.kind() == ExprKind::constant && b.number() != 0.0)
        return constant(a.number() / b.number());
    if (b.is_constant(1.0)) return a;
    if (a.is_constant(0.0) && !b.is_constant(0.0)) return a;
    return Expr(std::make_shared<const Node>(Node{ExprKind::quotient, 0.0, {a, b}}));
}

Expr Expr::nproduct(std::vector<Expr> factors) {
    if (factors.size() < 2) throw Error(ErrorKind::invalid_arity, "an n-ary product needs at least two factors");
    double c = 1.0;
    std::vector<Expr> rest;
    for (auto& f : factors) {
        if (f.kind() == ExprKind::constant) {
            c *= f.number();
        } else {
            rest.push_back(std::move(f));
        }
    }
    if (c == 0.0 || rest.empty()) return constant(c);
    if (rest.size() == 1) return scale(c, rest[0]);
    if (rest.size() == 2) return scale(c, product(rest[0], rest[1]));
    return scale(c, Expr(std::make_shared<const Node>(Node{ExprKind::nproduct, 0.0, std::move(rest)})));
}

std::string Expr::to_string() const {
    switch (kind()) {
        case ExprKind::constant: return "c:" + format_number(number());
        case ExprKind::g_val: return "g";
        case ExprKind::delta_g: return "dg";
        case ExprKind::indicator_dg: return "chi";
        case ExprKind::q_val: return "q";
        case ExprKind::star: return "star(" + children()[0].to_string() + ")";
        case ExprKind::sum: return "(+ " + children()[0].to_string() + " " + children()[1].to_string() + ")";
        case ExprKind::scale: return "(scale:" + format_number(number()) + " " + children()[0].to_string() + ")";
        case ExprKind::product: return "(* " + children()[0].to_string() + " " + children()[1].to_string() + ")";
        case ExprKind::quotient: return "(/ " + children()[0].to_string() + " " + children()[1].to_string() + ")";
        case ExprKind::nproduct: {
            std::string s = "(*";
            for (const auto& k : children()) s += " " + k.to_string();
            return s + ")";
        }
    }
    return "?";
}

template <Scalar T>
T Expr::eval(const Derivator& g, const T& t) const {
    switch (kind()) {
        case ExprKind::constant: return T(number());
        case ExprKind::g_val: return g.value(t);
        case ExprKind::delta_g: return g.jump(t);
        case ExprKind::indicator_dg: return g.jump(t) > T(0) ? T(1) : T(0);
        case ExprKind::q_val: {
            const T j = g.jump(t);
            return j > T(0) ? T(1) / j : T(0);
        }
        case ExprKind::star: return children()[0].eval(g, g.star(t));
        case ExprKind::sum: return children()[0].eval(g, t) + children()[1].eval(g, t);
        case ExprKind::scale: return T(number()) * children()[0].eval(g, t);
        case ExprKind::product: return children()[0].eval(g, t) * children()[1].eval(g, t);
        case ExprKind::quotient: {
            const T den = children()[1].eval(g, t);
            if (den == T(0)) {
                std::ostringstream os;
                os << "zero denominator in " << to_string() << " at t = " << to_double(t);
                throw Error(ErrorKind::evaluation, os.str());
            }
            return children()[0].eval(g, t) / den;
        }
        case ExprKind::nproduct: {
            T p = T(1);
            for (const auto& k : children()) p *= k.eval(g, t);
            return p;
        }
    }
    return T(0);
}

template double Expr::eval<double>(const Derivator&, const double&) const;
template wide Expr::eval<wide>(const Derivator&, const wide&) const;

double eval_expr(const Expr& e, const Derivator& g, double t, const Interval& dom) {
    if (!dom.contains(t)) {
        std::ostringstream os;
        os << t << " not in [" << dom.a << ", " << dom.b << "]";
        throw Error(ErrorKind::out_of_domain, os.str());
    }
    return to_double(e.eval(g, wide(t)));
}

PointFn as_function(const Expr& e, const Derivator& g) {
    return [e, &g](const wide& t) { return e.eval(g, t); };
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    Expr parse_all() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) error("trailing input");
        return e;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        std::ostringstream os;
        os << what << " at offset " << pos_ << " in \"" << s_ << "\"";
        throw Error(ErrorKind::parse, os.str());
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string word() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
               s_[pos_] != ')')
            ++pos_;
        if (start == pos_) error("expected a token");
        return s_.substr(start, pos_ - start);
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) error(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    double num(const std::string& text) {
        try {
            return parse_number(text);
        } catch (const Error&) {
            error("bad number '" + text + "'");
        }
    }

    Expr expr() {
        if (peek('(')) {
            ++pos_;
            const std::string op = word();
            std::vector<Expr> args;
            while (!peek(')')) {
                if (pos_ >= s_.size()) error("unbalanced '('");
                args.push_back(expr());
            }
            ++pos_;
            return apply(op, std::move(args));
        }
        const std::string w = word();
        if (w == "g") return Expr::g();
        if (w == "dg") return Expr::delta();
        if (w == "chi") return Expr::chi();
        if (w == "q") return Expr::q();
        if (w == "star") {
            expect('(');
            Expr inner = expr();
            expect(')');
            return Expr::star(inner);
        }
        if (w.rfind("c:", 0) == 0) return Expr::constant(num(w.substr(2)));
        if (!w.empty() && (std::isdigit(static_cast<unsigned char>(w[0])) || w[0] == '-' || w[0] == '.'))
            return Expr::constant(num(w));
        error("unknown token '" + w + "'");
    }

    Expr apply(const std::string& op, std::vector<Expr> args) {
        const auto arity = [&](std::size_t lo, std::size_t hi) {
            if (args.size() < lo || args.size() > hi) {
                std::ostringstream os;
                os << "'" << op << "' takes " << lo;
                if (hi != lo) os << (hi == SIZE_MAX ? " or more" : " to " + std::to_string(hi));
                os << " operand(s), got " << args.size();
                throw Error(ErrorKind::invalid_arity, os.str());
            }
        };
        if (op == "+") {
            arity(2, SIZE_MAX);
            Expr acc = args[0];
            for (std::size_t i = 1; i < args.size(); ++i) acc = Expr::sum(acc, args[i]);
            return acc;
        }
        if (op == "*") {
            arity(2, SIZE_MAX);
            if (args.size() == 2) return Expr::product(args[0], args[1]);
            return Expr::nproduct(std::move(args));
        }
        if (op == "/") {
            arity(2, 2);
            return Expr::quotient(args[0], args[1]);
        }
        if (op == "star") {
            arity(1, 1);
            return Expr::star(args[0]);
        }
        if (op.rfind("scale:", 0) == 0) {
            arity(1, 1);
            return Expr::scale(num(op.substr(6)), args[0]);
        }
        error("unknown operator '" + op + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).parse_all(); }

}  // namespace stieltjes
