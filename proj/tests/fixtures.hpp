// SPDX-License-Identifier: MIT
#pragma once

#include "stieltjes/oracle.hpp"
#include "stieltjes/spec_io.hpp"

#include <string>

namespace testing {

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline stieltjes::Derivator fixture(const std::string& name) {
    return stieltjes::load_derivator(fixture_path(name)).derivator;
}

/// Plain partial-sum model of the fixtures, used as an independent oracle.
/// Sums terms to n = 200, far past double resolution for q = 1/2.
inline double paper_g_ref(double t) {
    double v = t > 0 ? t : 0.0;
    if (t < 0) v = t;
    for (int n = 1; n <= 200; ++n)
        if (1.0 / n < t) v += std::ldexp(1.0, -n);
    return v;
}

inline double gtilde_ref(double t) {
    double v = t > 1 ? t - 1 : 0.0;
    if (t > 1) v += 1.5;
    for (int n = 2; n <= 200; ++n)
        if (1.0 / n < t) v += std::ldexp(1.0, -n);
    return v;
}

/// 1 on C_g inside (0, 1), 0 elsewhere. Not expressible in the Expr language.
inline stieltjes::PointFn flat_indicator(const stieltjes::Derivator& g) {
    return [&g](const stieltjes::wide& t) {
        return stieltjes::wide(t > 0 && t < 1 && g.local(t).in_Cg ? 1 : 0);
    };
}

}  // namespace testing
