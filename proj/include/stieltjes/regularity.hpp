// SPDX-License-Identifier: MIT
/**
 * @file regularity.hpp
 * @brief g-continuity of the jump function and its star, constancy of
 *        functions on level sets of g, and the product condition in BC^1_g.
 */
#pragma once

#include "stieltjes/derivator.hpp"
#include "stieltjes/oracle.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace stieltjes {

enum class ContinuityClass { continuous, discontinuous };

[[nodiscard]] const char* to_string(ContinuityClass c) noexcept;

/// Symbolic g-continuity of Delta g|[a,b] (starred = false) or of
/// Delta g|[a,b] composed with the star map (starred = true).
/// Unstarred: discontinuous exactly on A_g. Starred: continuous on
/// [a, a*], on (a*, b] minus A_g and on H_g; needs a bc1-valid domain.
[[nodiscard]] ContinuityClass delta_continuity_class(const Derivator& g, double t, const Interval& dom,
                                                     bool starred);

struct LevelConstancyResult {
    bool pass = true;
    /// (t, s) with g(t) = g(s) and f(t) != f(s).
    std::optional<std::pair<double, double>> witness;
    std::size_t level_sets_checked = 0;
};

/// Compares f across every sampled level set of g. Without explicit samples
/// the level sets come from a grid, atoms, family positions and the gaps
/// between consecutive positions.
[[nodiscard]] LevelConstancyResult level_constancy_check(const PointFn& f, const Derivator& g,
                                                         const Interval& dom,
                                                         const std::vector<double>& samples = {},
                                                         double tol = 1e-12);

struct BC1Result {
    bool holds = true;
    /// Points of ((a*, b) cap A_g) \ H_g where f1' f2' != 0, ascending.
    std::vector<double> witnesses;
    /// The enumerated exceptional set, ascending.
    std::vector<double> exceptional;
    bool truncated = false;  ///< family positions were capped
};

/// Checks f1'(t) f2'(t) = 0 on ((a*, b) cap A_g) \ H_g. Family positions are
/// taken up to `family_cap` per family; beyond that the jumps are below any
/// resolvable product for bounded derivatives.
[[nodiscard]] BC1Result bc1_product_check(const PointFn& f1_derivative, const PointFn& f2_derivative,
                                          const Derivator& g, const Interval& dom, std::size_t family_cap = 64,
                                          double tol = 1e-12);

enum class Subject { delta_g, delta_g_star, user_function };

[[nodiscard]] const char* to_string(Subject s) noexcept;

struct PointVerdict {
    double t;
    ContinuityClass verdict;
};

struct RegularityReport {
    Subject subject = Subject::delta_g;
    std::vector<PointVerdict> points;
    std::optional<bool> theorem;   ///< outcome of a theorem-level check, when one was run
    std::vector<double> witnesses; ///< points where the checked condition fails
};

/// Per-point continuity classes of Delta g or Delta g* over `samples`;
/// witnesses are the discontinuity points.
[[nodiscard]] RegularityReport delta_regularity_report(const Derivator& g, const Interval& dom, bool starred,
                                                       const std::vector<double>& samples);

/// Per-point numeric g-continuity of a user function.
[[nodiscard]] RegularityReport continuity_report(const PointFn& f, const Derivator& g, const Interval& dom,
                                                 const std::vector<double>& samples,
                                                 const ContinuityConfig& cfg = {});

}  // namespace stieltjes
