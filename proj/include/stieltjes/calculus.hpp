// SPDX-License-Identifier: MIT
/**
 * @file calculus.hpp
 * @brief Expression trees over g and symbolic Stieltjes derivatives.
 *
 * Expressions are immutable and shared. Smart constructors fold constants,
 * collapse nested stars and rewrite Star(Q) * Star(Delta g) to Star(chi).
 * No other simplification is attempted; expressions are compared by value.
 *
 * Prefix syntax:
 *   g  dg  chi  q  c:<num>  star(e)
 *   (+ e e ...)  (* e e ...)  (/ e e)  (scale:<num> e)
 */
#pragma once

#include "stieltjes/derivator.hpp"
#include "stieltjes/oracle.hpp"

#include <memory>
#include <string>
#include <vector>

namespace stieltjes {

enum class ExprKind { constant, g_val, delta_g, indicator_dg, q_val, star, sum, scale, product, quotient, nproduct };

class Expr {
public:
    static Expr constant(double c);
    static Expr g();
    static Expr delta();
    static Expr chi();
    static Expr q();
    static Expr star(const Expr& e);
    static Expr sum(const Expr& a, const Expr& b);
    static Expr scale(double c, const Expr& e);
    static Expr product(const Expr& a, const Expr& b);
    static Expr quotient(const Expr& a, const Expr& b);
    static Expr nproduct(std::vector<Expr> factors);

    [[nodiscard]] ExprKind kind() const noexcept;
    /// Constant value or scale factor.
    [[nodiscard]] double number() const noexcept;
    [[nodiscard]] const std::vector<Expr>& children() const noexcept;

    [[nodiscard]] bool is_constant(double c) const noexcept;

    /// Canonical prefix rendering; parse(to_string()) rebuilds an equal tree.
    [[nodiscard]] std::string to_string() const;

    template <Scalar T>
    [[nodiscard]] T eval(const Derivator& g, const T& t) const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

[[nodiscard]] Expr parse_expr(const std::string& text);

/// Evaluation at t in dom, rounded once from the wide evaluation.
/// Throws evaluation-error on a zero denominator.
[[nodiscard]] double eval_expr(const Expr& e, const Derivator& g, double t, const Interval& dom);

/// The expression as an oracle function.
[[nodiscard]] PointFn as_function(const Expr& e, const Derivator& g);

// ---------------------------------------------------------------------------
// Validity predicates
// ---------------------------------------------------------------------------

enum class Truth { holds, fails, unknown };

[[nodiscard]] const char* to_string(Truth t) noexcept;

enum class ValidityKind {
    always,
    delta_product,    ///< h * Delta g differentiable (three cases by the class of t*)
    tilde_d,          ///< t* in tilde D1 u D2 u D3, otherwise proven not differentiable
    tilde_d_only,     ///< t* in tilde D1 u D2 u D3, otherwise unknown
    lift,             ///< child, with "fails" weakened to "unknown"
    star_lift,        ///< lift, plus f* and f agreeing on C_g near t* when t* is in C1 u C2 u C3
    sum_and,          ///< linearity: one side failing against a holding side fails
    product_and,      ///< sufficient conditions only
    quotient_defined, ///< f2(t*) (f2(t*) + f2' Delta g(t*)) != 0
    order_chain,      ///< conditions of successive orders
};

class Validity {
public:
    static Validity always();
    static Validity delta_product(const Expr& h);
    static Validity tilde_d(bool strict);
    static Validity lift(const Validity& v);
    static Validity star_lift(const Expr& f, const Validity& v);
    static Validity sum_and(const Validity& a, const Validity& b);
    static Validity product_and(std::vector<Validity> parts);
    static Validity quotient_defined(const Expr& den, const Expr& den_derivative);
    static Validity order_chain(std::vector<Validity> orders);

    [[nodiscard]] ValidityKind kind() const noexcept;
    [[nodiscard]] std::string describe() const;

    /// Decides the predicate at t using the classification and, for limit
    /// conditions, the numeric oracle.
    [[nodiscard]] Truth evaluate(const Derivator& g, double t, const Interval& dom) const;

private:
    struct Node;
    explicit Validity(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct DerivResult {
    Expr derivative;
    Validity validity;
    std::vector<std::string> notes;  ///< rules applied, outermost first
};

/// First derivative of e.
[[nodiscard]] DerivResult g_derive(const Expr& e);

/// Derivative of order n >= 1 by repeated application; validity chains the
/// conditions of every order.
[[nodiscard]] DerivResult g_derive(const Expr& e, int order);

// ---------------------------------------------------------------------------
// Closed-form kernels on plain numbers
// ---------------------------------------------------------------------------

struct FactorD1 {
    double value;  ///< f(t*)
    double d1;     ///< f'(t)
};

struct FactorD2 {
    double value;
    double d1;
    double d2;
};

struct FactorD3 {
    double value;
    double d1;
    double d2;
    double d3;
};

using Signature = std::vector<int>;

/// All sigma in {0,1}^n with k ones, lexicographic.
[[nodiscard]] std::vector<Signature> enumerate_signatures(int n, int k);

[[nodiscard]] double product_rule_n(const std::vector<FactorD1>& factors, double delta_star);
[[nodiscard]] double product_rule_1(const FactorD1& f1, const FactorD1& f2, double delta_star);
[[nodiscard]] double product_rule_2(const FactorD2& f1, const FactorD2& f2, double delta_star, int chi_star);
[[nodiscard]] double product_rule_3(const FactorD3& f1, const FactorD3& f2, double delta_star, int chi_star,
                                    double q_star);
[[nodiscard]] double quotient_rule(const FactorD1& f1, const FactorD1& f2, double delta_star);

/// Guard for product_rule_2: t* outside D1 u D2 u D3, or the delta-diff limit vanishes.
[[nodiscard]] Truth second_order_guard(const Derivator& g, double t, const Interval& dom);
/// Guard for product_rule_3: t* in tilde D1 u D2 u D3.
[[nodiscard]] Truth third_order_guard(const Derivator& g, double t, const Interval& dom);

}  // namespace stieltjes
