// SPDX-License-Identifier: MIT
/**
 * @file oracle.hpp
 * @brief Numeric g-derivatives, g-continuity and side conditions computed
 *        from the limit definitions.
 *
 * Functions under test are evaluated in the wide scalar. Limits are taken
 * along geometric sequences t +- h0 2^-k (generic) and along exact family
 * positions n0 2^k (jump sequences); a limit converges when the last
 * `window` samples lie within the tolerance of each other.
 */
#pragma once

#include "stieltjes/derivator.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stieltjes {

using PointFn = std::function<wide(const wide&)>;

struct LimitConfig {
    int window = 5;
    int max_samples = 48;
    double rel = 1e-6;
    double abs = 1e-9;
    double diverge_at = 1e12;
};

/// Tolerances for nested limits. levels[0] decides every reported verdict;
/// deeper levels serve the inner limits of higher-order derivatives and the
/// right limits f(t+) taken at jump points.
struct OracleConfig {
    std::array<LimitConfig, 4> levels{{
        {5, 48, 1e-6, 1e-9, 1e12},
        {5, 110, 1e-10, 1e-13, 1e12},
        {5, 110, 1e-13, 1e-16, 1e12},
        {5, 110, 1e-15, 1e-20, 1e12},
    }};
    int max_order = 3;
};

enum class Verdict { converged, diverges, no_limit, not_applicable };

[[nodiscard]] const char* to_string(Verdict v) noexcept;

struct Evidence {
    std::string sequence;  ///< "generic-left", "jumps-right", ...
    double offset;         ///< s - t
    double value;          ///< quotient (or function value) at s
};

struct LimitResult {
    Verdict verdict = Verdict::not_applicable;
    double value = 0.0;  ///< limit when converged
    int sign = 0;        ///< +1 / -1 when diverging
    std::vector<Evidence> evidence;
    std::string note;
    /// no-limit only because every failing sequence used up its samples
    /// while still moving (slow algebraic convergence), not from a conflict.
    bool inconclusive = false;

    [[nodiscard]] bool converged() const { return verdict == Verdict::converged; }
};

enum class LimitSide { left, right, both };
enum class Approach { generic, in_Dg, in_Cg, not_in_Dg };

/// lim F(s) as s -> t along the requested approach set.
[[nodiscard]] LimitResult g_limit(const PointFn& F, const Derivator& g, double t, const Interval& dom,
                                  LimitSide side, Approach approach, const LimitConfig& cfg = {});

/// Order-k Stieltjes derivative of f at t (1 <= k <= max_order).
[[nodiscard]] LimitResult numeric_g_derivative(const PointFn& f, const Derivator& g, double t,
                                               const Interval& dom, int order,
                                               const OracleConfig& cfg = {});

enum class SideVerdict { continuous, discontinuous, vacuous };

[[nodiscard]] const char* to_string(SideVerdict v) noexcept;

struct ContinuityVerdict {
    SideVerdict left = SideVerdict::vacuous;
    SideVerdict right = SideVerdict::vacuous;
    double left_sup = 0.0;   ///< sup |f(s) - f(t)| at the finest delta
    double right_sup = 0.0;

    [[nodiscard]] bool continuous() const {
        return left != SideVerdict::discontinuous && right != SideVerdict::discontinuous;
    }
};

struct ContinuityConfig {
    int levels = 10;        ///< delta_k = 2^-(4k), k = 1..levels
    int grid = 32;          ///< uniform samples per side and level
    int geometric = 40;     ///< samples t +- r 2^-j
    std::size_t jump_cap = 64;
    double tol = 1e-8;      ///< relative to max(1, |f(t)|)
    double level_tol = 1e-25;  ///< same, for samples with g(s) = g(t) exactly
};

[[nodiscard]] ContinuityVerdict numeric_g_continuity(const PointFn& f, const Derivator& g, double t,
                                                     const Interval& dom, const ContinuityConfig& cfg = {});

enum class Condition { delta_diff, star_lift };

[[nodiscard]] const char* to_string(Condition c) noexcept;

/// delta-diff: lim_{s -> t*, s in D_g} f(s) Delta g|[a,b](s) / (g(s) - g(t)),
///   with f = 1 when omitted.
/// star-lift: lim_{s -> t*, s in C_g} (f(s) - f(t*)) / (g(s) - g(t*)); needs f.
/// Side rules at t* follow the one-sided derivative convention.
[[nodiscard]] LimitResult check_condition(const Derivator& g, double t, const Interval& dom, Condition which,
                                          const PointFn* f = nullptr, const LimitConfig& cfg = {});

/// Renders an evidence trail as a plain-text table.
[[nodiscard]] std::string format_trace(const LimitResult& r);

}  // namespace stieltjes
