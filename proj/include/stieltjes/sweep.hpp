// SPDX-License-Identifier: MIT
/**
 * @file sweep.hpp
 * @brief Point sweeps over a domain: grid classification, continuity
 *        sweeps and the randomized symbolic-versus-oracle campaign.
 *
 * Each sweep has a serial reference and an OpenMP version producing
 * identical output (results are written by index; no reductions on doubles).
 */
#pragma once

#include "stieltjes/calculus.hpp"
#include "stieltjes/oracle.hpp"
#include "stieltjes/pointclass.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace stieltjes {

enum class Exec { serial, parallel };

/// n + 1 equally spaced points of dom.
[[nodiscard]] std::vector<double> uniform_grid(const Interval& dom, int n);

[[nodiscard]] std::vector<PointClassification> classify_grid(const Derivator& g, const Interval& dom,
                                                             const std::vector<double>& points, Exec exec);

[[nodiscard]] std::vector<ContinuityVerdict> continuity_sweep(const PointFn& f, const Derivator& g,
                                                              const Interval& dom, const std::vector<double>& points,
                                                              Exec exec, const ContinuityConfig& cfg = {});

/// Random expression over g, dg, chi, q, constants, sums, scales, products,
/// quotients by (1 + e e) and stars.
[[nodiscard]] Expr random_expression(std::mt19937_64& rng, int depth);

/// Random valid derivator: one to four segments, up to three atoms, and up
/// to two families (one accumulating at 0 from the right, one at 1.5 from
/// the left).
[[nodiscard]] Derivator random_derivator(std::mt19937_64& rng);

/// `count` random derivators valid on dom in derivative mode, drawn from one
/// generator seeded with `seed`; invalid draws are discarded.
[[nodiscard]] std::vector<Derivator> random_valid_derivators(std::uint64_t seed, int count, const Interval& dom);

/// Points where derivators are interesting: breakpoints, atoms,
/// accumulation points, leading family positions, plus uniform draws.
[[nodiscard]] std::vector<double> probe_points(const Derivator& g, const Interval& dom, std::size_t count,
                                               std::uint64_t seed);

enum class Outcome { agree, disagree, oracle_no_limit, inconclusive, skipped };

[[nodiscard]] const char* to_string(Outcome o) noexcept;

struct VerifyCase {
    std::string expression;
    double t = 0.0;
    int order = 1;
    Truth validity = Truth::unknown;
    double symbolic = 0.0;
    LimitResult numeric;
    Outcome outcome = Outcome::skipped;
};

struct VerifyReport {
    std::vector<VerifyCase> cases;
    int agree = 0;
    int disagree = 0;
    int oracle_no_limit = 0;  ///< validity held but the oracle found no limit
    int inconclusive = 0;     ///< the oracle ran out of samples before settling
    int skipped = 0;          ///< validity not "holds", or evaluation error

    [[nodiscard]] bool ok() const { return disagree == 0 && oracle_no_limit == 0; }
};

/// `samples` random (expression, point) pairs; case i draws from seed + i, so
/// the report does not depend on the execution mode. Cases where validity
/// holds compare the symbolic value with the oracle at relative 1e-5.
[[nodiscard]] VerifyReport verify_campaign(const Derivator& g, const Interval& dom, std::size_t samples,
                                           std::uint64_t seed, Exec exec, int max_order = 1);

}  // namespace stieltjes
