// SPDX-License-Identifier: MIT
/**
 * @file pointclass.hpp
 * @brief Exact structural classification of a point of [a, b].
 *
 * Every flag is decided from the derivator record. Accumulation flags refer
 * to derived sets restricted to the domain side, so at t = a the left flags
 * and at t = b the right flags are false.
 */
#pragma once

#include "stieltjes/derivator.hpp"

#include <optional>
#include <utility>

namespace stieltjes {

struct PointClassification {
    bool in_Cg = false;
    bool in_Dg = false;
    bool in_Ng_minus = false;
    bool in_Ng_plus = false;
    std::optional<std::pair<double, double>> component;

    bool acc_Dg_left = false;   ///< t in (D_g cap [a, t))'
    bool acc_Dg_right = false;  ///< t in (D_g cap (t, b])'
    bool acc_Cg_left = false;   ///< t in (C_g cap [a, t))'
    bool acc_Cg_right = false;  ///< t in (C_g cap (t, b])'

    bool in_D1 = false, in_D2 = false, in_D3 = false;
    bool in_tD1 = false, in_tD2 = false, in_tD3 = false;
    bool in_C1 = false, in_C2 = false, in_C3 = false;

    bool in_Ag = false;
    bool in_Hg = false;

    double star = 0.0;
    double level_inf = 0.0;
    double level_sup = 0.0;

    [[nodiscard]] bool in_N() const { return in_Ng_minus || in_Ng_plus; }
    [[nodiscard]] bool in_D123() const { return in_D1 || in_D2 || in_D3; }
    [[nodiscard]] bool in_tD123() const { return in_tD1 || in_tD2 || in_tD3; }
    [[nodiscard]] bool in_C123() const { return in_C1 || in_C2 || in_C3; }
};

/// Full classification. Throws out-of-domain if t is outside dom and
/// invalid-domain if dom fails the derivative-mode endpoint conditions.
[[nodiscard]] PointClassification classify(const Derivator& g, double t, const Interval& dom);

/// Same as classify without the endpoint validation; used where the caller
/// has already validated dom or deliberately probes an invalid one.
[[nodiscard]] PointClassification classify_unchecked(const Derivator& g, double t, const Interval& dom);

/// Throws invalid-domain listing the violations, if any.
void require_valid_domain(const Derivator& g, const Interval& dom, DomainMode mode);

}  // namespace stieltjes
