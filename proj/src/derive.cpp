// SPDX-License-Identifier: MIT
#include "stieltjes/calculus.hpp"
#include "stieltjes/pointclass.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace stieltjes {

const char* to_string(Truth t) noexcept {
    switch (t) {
        case Truth::holds: return "holds";
        case Truth::fails: return "fails";
        case Truth::unknown: return "unknown";
    }
    return "?";
}

struct Validity::Node {
    ValidityKind kind;
    bool strict = false;
    std::vector<Expr> exprs;
    std::vector<Validity> parts;
};

namespace {

// |limit| below this counts as zero for the delta-diff test
constexpr double zero_limit = 1e-6;

Truth delta_diff_truth(const LimitResult& r) {
    switch (r.verdict) {
        case Verdict::converged: return std::abs(r.value) <= zero_limit ? Truth::holds : Truth::fails;
        case Verdict::diverges:
        case Verdict::no_limit: return Truth::fails;
        case Verdict::not_applicable: return Truth::unknown;
    }
    return Truth::unknown;
}

PointClassification class_of_star(const Derivator& g, double t, const Interval& dom) {
    const auto c = classify(g, t, dom);
    return classify_unchecked(g, c.star, dom);
}

}  // namespace

Validity Validity::always() { return Validity(std::make_shared<const Node>(Node{ValidityKind::always, false, {}, {}})); }

Validity Validity::delta_product(const Expr& h) {
    return Validity(std::make_shared<const Node>(Node{ValidityKind::delta_product, false, {h}, {}}));
}

Validity Validity::tilde_d(bool strict) {
    return Validity(std::make_shared<const Node>(
        Node{strict ? ValidityKind::tilde_d : ValidityKind::tilde_d_only, strict, {}, {}}));
}

Validity Validity::lift(const Validity& v) {
    if (v.kind() == ValidityKind::always) return v;
    return Validity(std::make_shared<const Node>(Node{ValidityKind::lift, false, {}, {v}}));
}

Validity Validity::star_lift(const Expr& f, const Validity& v) {
    return Validity(std::make_shared<const Node>(Node{ValidityKind::star_lift, false, {f}, {v}}));
}

Validity Validity::sum_and(const Validity& a, const Validity& b) {
    if (a.kind() == ValidityKind::always && b.kind() == ValidityKind::always) return a;
    return Validity(std::make_shared<const Node>(Node{ValidityKind::sum_and, false, {}, {a, b}}));
}

Validity Validity::product_and(std::vector<Validity> parts) {
    std::vector<Validity> kept;
    for (auto& p : parts)
        if (p.kind() != ValidityKind::always) kept.push_back(std::move(p));
    if (kept.empty()) return always();
    return Validity(std::make_shared<const Node>(Node{ValidityKind::product_and, false, {}, std::move(kept)}));
}

Validity Validity::quotient_defined(const Expr& den, const Expr& den_derivative) {
    return Validity(
        std::make_shared<const Node>(Node{ValidityKind::quotient_defined, false, {den, den_derivative}, {}}));
}

Validity Validity::order_chain(std::vector<Validity> orders) {
    bool trivial = true;
    for (const auto& o : orders) trivial = trivial && o.kind() == ValidityKind::always;
    if (trivial) return always();
    if (orders.size() == 1) return orders[0];
    return Validity(std::make_shared<const Node>(Node{ValidityKind::order_chain, false, {}, std::move(orders)}));
}

ValidityKind Validity::kind() const noexcept { return node_->kind; }

std::string Validity::describe() const {
    const auto& n = *node_;
    const auto join = [&](const char* head) {
        std::string s = std::string(head) + "(";
        for (std::size_t i = 0; i < n.parts.size(); ++i) s += (i ? ", " : "") + n.parts[i].describe();
        return s + ")";
    };
    switch (n.kind) {
        case ValidityKind::always: return "always";
        case ValidityKind::delta_product:
            return "delta-product[" + n.exprs[0].to_string() + "]";
        case ValidityKind::tilde_d: return "t* in tD1/tD2/tD3";
        case ValidityKind::tilde_d_only: return "t* in tD1/tD2/tD3 (sufficient)";
        case ValidityKind::lift: return "lift(" + n.parts[0].describe() + ")";
        case ValidityKind::star_lift:
            return "star-lift[" + n.exprs[0].to_string() + "](" + n.parts[0].describe() + ")";
        case ValidityKind::sum_and: return join("sum");
        case ValidityKind::product_and: return join("all");
        case ValidityKind::quotient_defined:
            return "nonzero[" + n.exprs[0].to_string() + " at t*, with derivative " + n.exprs[1].to_string() + "]";
        case ValidityKind::order_chain: return join("orders");
    }
    return "?";
}

Truth Validity::evaluate(const Derivator& g, double t, const Interval& dom) const {
    const auto& n = *node_;
    switch (n.kind) {
        case ValidityKind::always: return Truth::holds;

        case ValidityKind::delta_product: {
            const auto cs = class_of_star(g, t, dom);
            if (cs.in_D123()) {
                const PointFn h = as_function(n.exprs[0], g);
                return delta_diff_truth(check_condition(g, t, dom, Condition::delta_diff, &h));
            }
            // right D_g-accumulation at a jump point: cannot occur with finitely many
            // families, each accumulating at a point outside its own positions
            if (cs.in_Dg && cs.acc_Dg_right) return Truth::unknown;
            return Truth::holds;
        }

        case ValidityKind::tilde_d:
        case ValidityKind::tilde_d_only: {
            const auto cs = class_of_star(g, t, dom);
            if (cs.in_tD123()) return Truth::holds;
            return n.strict ? Truth::fails : Truth::unknown;
        }

        case ValidityKind::lift: {
            const Truth v = n.parts[0].evaluate(g, t, dom);
            return v == Truth::fails ? Truth::unknown : v;
        }

        case ValidityKind::star_lift: {
            Truth v = n.parts[0].evaluate(g, t, dom);
            if (v == Truth::fails) v = Truth::unknown;
            if (!class_of_star(g, t, dom).in_C123()) return v;
            // the C_g quotients of f and of f* must have the same limit
            const PointFn f = as_function(n.exprs[0], g);
            const PointFn fs = as_function(Expr::star(n.exprs[0]), g);
            const auto plain = check_condition(g, t, dom, Condition::star_lift, &f);
            if (!plain.converged()) return Truth::unknown;
            const auto lifted = check_condition(g, t, dom, Condition::star_lift, &fs);
            if (!lifted.converged() ||
                std::abs(lifted.value - plain.value) > zero_limit * std::max(1.0, std::abs(plain.value)))
                return v == Truth::holds ? Truth::fails : Truth::unknown;
            return v;
        }

        case ValidityKind::sum_and: {
            const Truth a = n.parts[0].evaluate(g, t, dom);
            const Truth b = n.parts[1].evaluate(g, t, dom);
            if (a == Truth::holds && b == Truth::holds) return Truth::holds;
            if ((a == Truth::fails && b == Truth::holds) || (a == Truth::holds && b == Truth::fails))
                return Truth::fails;
            return Truth::unknown;
        }

        case ValidityKind::product_and: {
            for (const auto& p : n.parts)
                if (p.evaluate(g, t, dom) != Truth::holds) return Truth::unknown;
            return Truth::holds;
        }

        case ValidityKind::quotient_defined: {
            const auto c = classify(g, t, dom);
            try {
                const wide ts(c.star);
                const wide f2 = n.exprs[0].eval(g, ts);
                const wide d = n.exprs[1].eval(g, wide(t));
                return f2 * (f2 + d * g.jump(ts)) != 0 ? Truth::holds : Truth::fails;
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::evaluation) return Truth::unknown;
                throw;
            }
        }

        case ValidityKind::order_chain: {
            bool all = true;
            for (const auto& p : n.parts) {
                const Truth v = p.evaluate(g, t, dom);
                if (v == Truth::fails) return Truth::fails;
                all = all && v == Truth::holds;
            }
            return all ? Truth::holds : Truth::unknown;
        }
    }
    return Truth::unknown;
}

// ---------------------------------------------------------------------------
// Derivation rules
// ---------------------------------------------------------------------------

namespace {

Expr neg(const Expr& e) { return Expr::scale(-1.0, e); }

DerivResult derive(const Expr& e);

DerivResult derive_nproduct(const std::vector<Expr>& f) {
    const int n = static_cast<int>(f.size());
    std::vector<DerivResult> d;
    std::vector<Validity> parts;
    for (const auto& fj : f) {
        d.push_back(derive(fj));
        parts.push_back(d.back().validity);
    }
    const Expr sdelta = Expr::star(Expr::delta());
    Expr total = Expr::constant(0.0);
    Expr power = Expr::constant(1.0);
    for (int k = 0; k < n; ++k) {
        Expr inner = Expr::constant(0.0);
        for (const auto& sigma : enumerate_signatures(n, k + 1)) {
            std::vector<Expr> terms;
            for (int j = 0; j < n; ++j) terms.push_back(sigma[j] ? d[j].derivative : Expr::star(f[j]));
            inner = Expr::sum(inner, Expr::nproduct(std::move(terms)));
        }
        total = Expr::sum(total, Expr::product(power, inner));
        power = Expr::product(power, sdelta);
    }
    return {total, Validity::product_and(std::move(parts)), {"n-ary product rule"}};
}

DerivResult derive(const Expr& e) {
    const auto& k = e.children();
    switch (e.kind()) {
        case ExprKind::constant: return {Expr::constant(0.0), Validity::always(), {"constant"}};
        case ExprKind::g_val: return {Expr::constant(1.0), Validity::always(), {"g"}};
        case ExprKind::delta_g:
            return {neg(Expr::star(Expr::chi())), Validity::delta_product(Expr::constant(1.0)), {"jump"}};
        case ExprKind::indicator_dg:
            return {neg(Expr::star(Expr::q())), Validity::tilde_d(true), {"jump indicator"}};
        case ExprKind::q_val:
            return {neg(Expr::product(Expr::star(Expr::q()), Expr::star(Expr::q()))), Validity::tilde_d(false),
                    {"reciprocal jump"}};
        case ExprKind::star: {
            auto r = derive(k[0]);
            r.validity = Validity::star_lift(k[0], r.validity);
            r.notes.insert(r.notes.begin(), "star");
            return r;
        }
        case ExprKind::sum: {
            auto a = derive(k[0]);
            auto b = derive(k[1]);
            DerivResult r{Expr::sum(a.derivative, b.derivative), Validity::sum_and(a.validity, b.validity), {"sum"}};
            r.notes.insert(r.notes.end(), a.notes.begin(), a.notes.end());
            r.notes.insert(r.notes.end(), b.notes.begin(), b.notes.end());
            return r;
        }
        case ExprKind::scale: {
            auto r = derive(k[0]);
            r.derivative = Expr::scale(e.number(), r.derivative);
            r.notes.insert(r.notes.begin(), "scale");
            return r;
        }
        case ExprKind::product: {
            for (int i = 0; i < 2; ++i) {
                const Expr& h = k[1 - i];
                if (k[i].kind() == ExprKind::delta_g)
                    return {neg(Expr::product(Expr::star(h), Expr::star(Expr::chi()))), Validity::delta_product(h),
                            {"product with jump"}};
                if (k[i].kind() == ExprKind::indicator_dg)
                    return {neg(Expr::product(Expr::star(h), Expr::star(Expr::q()))), Validity::tilde_d(false),
                            {"product with jump indicator"}};
            }
            auto a = derive(k[0]);
            auto b = derive(k[1]);
            const Expr sd = Expr::star(Expr::delta());
            Expr d = Expr::sum(Expr::product(a.derivative, Expr::star(k[1])),
                               Expr::product(b.derivative, Expr::star(k[0])));
            d = Expr::sum(d, Expr::product(Expr::product(a.derivative, b.derivative), sd));
            DerivResult r{d, Validity::product_and({a.validity, b.validity}), {"product"}};
            r.notes.insert(r.notes.end(), a.notes.begin(), a.notes.end());
            r.notes.insert(r.notes.end(), b.notes.begin(), b.notes.end());
            return r;
        }
        case ExprKind::quotient: {
            auto a = derive(k[0]);
            auto b = derive(k[1]);
            const Expr sa = Expr::star(k[0]);
            const Expr sb = Expr::star(k[1]);
            const Expr num = Expr::sum(Expr::product(a.derivative, sb), neg(Expr::product(b.derivative, sa)));
            const Expr den =
                Expr::product(sb, Expr::sum(sb, Expr::product(b.derivative, Expr::star(Expr::delta()))));
            DerivResult r{Expr::quotient(num, den),
                          Validity::product_and(
                              {a.validity, b.validity, Validity::quotient_defined(k[1], b.derivative)}),
                          {"quotient"}};
            r.notes.insert(r.notes.end(), a.notes.begin(), a.notes.end());
            r.notes.insert(r.notes.end(), b.notes.begin(), b.notes.end());
            return r;
        }
        case ExprKind::nproduct: return derive_nproduct(k);
    }
    throw Error(ErrorKind::unsupported, "no rule for " + e.to_string());
}

}  // namespace

DerivResult g_derive(const Expr& e) { return derive(e); }

DerivResult g_derive(const Expr& e, int order) {
    if (order < 1) throw Error(ErrorKind::invalid_argument, "derivative order must be at least 1");
    DerivResult r = derive(e);
    std::vector<Validity> chain{r.validity};
    for (int i = 2; i <= order; ++i) {
        auto next = derive(r.derivative);
        chain.push_back(next.validity);
        r.derivative = next.derivative;
        r.notes.push_back("order " + std::to_string(i) + ":");
        r.notes.insert(r.notes.end(), next.notes.begin(), next.notes.end());
    }
    r.validity = Validity::order_chain(std::move(chain));
    return r;
}

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

std::vector<Signature> enumerate_signatures(int n, int k) {
    if (n < 0 || n > 30 || k < 0 || k > n) {
        std::ostringstream os;
        os << "no signatures for n = " << n << ", k = " << k;
        throw Error(ErrorKind::invalid_argument, os.str());
    }
    std::vector<Signature> out;
    // sigma[0] is the most significant bit, so counting up is lexicographic
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        if (std::popcount(m) != k) continue;
        Signature s(n);
        for (int j = 0; j < n; ++j) s[j] = (m >> (n - 1 - j)) & 1u;
        out.push_back(std::move(s));
    }
    return out;
}

double product_rule_n(const std::vector<FactorD1>& factors, double delta_star) {
    const int n = static_cast<int>(factors.size());
    if (n < 2) throw Error(ErrorKind::invalid_arity, "the product rule needs at least two factors");
    double total = 0.0;
    double power = 1.0;
    for (int k = 0; k < n; ++k) {
        double inner = 0.0;
        for (const auto& sigma : enumerate_signatures(n, k + 1)) {
            double p = 1.0;
            for (int j = 0; j < n; ++j) p *= sigma[j] ? factors[j].d1 : factors[j].value;
            inner += p;
        }
        total += power * inner;
        power *= delta_star;
    }
    return total;
}

double product_rule_1(const FactorD1& f1, const FactorD1& f2, double delta_star) {
    // same operation order as product_rule_n with n = 2
    return f1.d1 * f2.value + f2.d1 * f1.value + delta_star * (f1.d1 * f2.d1);
}

double product_rule_2(const FactorD2& f1, const FactorD2& f2, double delta_star, int chi_star) {
    return f1.d2 * f2.value + f1.value * f2.d2 + (2 - chi_star) * f1.d1 * f2.d1 +
           delta_star * (f1.d1 * f2.d2 + f2.d1 * f1.d2);
}

double product_rule_3(const FactorD3& f1, const FactorD3& f2, double delta_star, int chi_star, double q_star) {
    return f1.d3 * f2.value + f1.value * f2.d3 + (3 - chi_star) * (f1.d1 * f2.d2 + f2.d1 * f1.d2) +
           delta_star * (f1.d3 * f2.d1 + 2.0 * f1.d2 * f2.d2 + f1.d1 * f2.d3) + q_star * f1.d1 * f2.d1;
}

double quotient_rule(const FactorD1& f1, const FactorD1& f2, double delta_star) {
    const double den = f2.value * (f2.value + f2.d1 * delta_star);
    if (den == 0.0) throw Error(ErrorKind::quotient_undefined, "f2(t*) (f2(t*) + f2'(t) Delta g(t*)) = 0");
    return (f1.d1 * f2.value - f2.d1 * f1.value) / den;
}

Truth second_order_guard(const Derivator& g, double t, const Interval& dom) {
    if (!class_of_star(g, t, dom).in_D123()) return Truth::holds;
    return delta_diff_truth(check_condition(g, t, dom, Condition::delta_diff));
}

Truth third_order_guard(const Derivator& g, double t, const Interval& dom) {
    return class_of_star(g, t, dom).in_tD123() ? Truth::holds : Truth::fails;
}

}  // namespace stieltjes
