// SPDX-License-Identifier: MIT
/**
 * @file derivator.hpp
 * @brief Exact piecewise representation of a derivator g.
 *
 * A derivator is nondecreasing and left-continuous. It is stored as
 *   - a continuous piecewise-linear base (breakpoint, slope >= 0), anchored so
 *     that base(segments[0].from) == 0 and extended by the end slopes,
 *   - finitely many jump atoms  mass * 1_{(position, inf)},
 *   - jump families accumulating at a point, with positions acc +- c/n^p and
 *     masses s*q^n or s/n^p.
 *
 * All structural questions (jump set, constancy components, level sets) are
 * answered from this record without sampling.
 */
#pragma once

#include "stieltjes/error.hpp"
#include "stieltjes/real.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stieltjes {

/// Closed domain [a, b] with a < b.
struct Interval {
    double a;
    double b;

    Interval(double lo, double hi);

    template <Scalar T>
    [[nodiscard]] bool contains(const T& t) const {
        return t >= T(a) && t <= T(b);
    }
};

struct Segment {
    double from;
    double slope;
};

struct Atom {
    double at;
    double mass;
};

/// Which side of the accumulation point the family positions lie on.
enum class Side { left_of, right_of };

/// Positions accumulation +- c / n^p  (c > 0, p >= 1).
struct PositionRule {
    double c = 1.0;
    double p = 1.0;
};

/// Masses s * q^n (0 < q < 1) or s / n^p (p > 1).
struct MassRule {
    enum class Form { geometric, power };
    Form form = Form::geometric;
    double s = 1.0;
    double q = 0.5;  ///< ratio for the geometric form
    double p = 2.0;  ///< exponent for the power form
};

class JumpFamily {
public:
    JumpFamily(double accumulation, Side side, PositionRule position, MassRule mass,
               std::int64_t n_start);

    [[nodiscard]] double accumulation() const noexcept { return acc_; }
    [[nodiscard]] Side side() const noexcept { return side_; }
    [[nodiscard]] const PositionRule& position_rule() const noexcept { return pos_; }
    [[nodiscard]] const MassRule& mass_rule() const noexcept { return mass_; }
    [[nodiscard]] std::int64_t n_start() const noexcept { return n_start_; }

    /// Canonical position of the n-th jump. Up to a precision-dependent index the
    /// value is the correctly rounded double, so double and wide queries agree.
    template <Scalar T>
    [[nodiscard]] T position(std::int64_t n) const;

    template <Scalar T>
    [[nodiscard]] T mass(std::int64_t n) const;

    /// Sum of masses with index >= n. Geometric tails are closed form; power
    /// tails use Euler-Maclaurin with absolute error below 1e-15.
    template <Scalar T>
    [[nodiscard]] T tail(std::int64_t n) const;

    /// Smallest index whose position lies strictly on the far side of t, i.e.
    /// the number of positions "between" t and the accumulation point starts there.
    /// Right-of: min{n : pos_n <= t}; left-of: min{n : pos_n >= t}.
    /// Requires t on the family's side of the accumulation point.
    template <Scalar T>
    [[nodiscard]] std::int64_t first_index_past(const T& t) const;

    /// Index n with position(n) == t, if any.
    template <Scalar T>
    [[nodiscard]] std::optional<std::int64_t> index_of(const T& t) const;

    /// Indices are capped here; masses beyond are below any representable
    /// contribution for the admissible rule forms.
    static constexpr std::int64_t max_index = std::int64_t{1} << 60;

private:
    [[nodiscard]] double offset(std::int64_t n) const;

    double acc_;
    Side side_;
    PositionRule pos_;
    MassRule mass_;
    std::int64_t n_start_;
    std::int64_t n_double_ = 0;  ///< last index with comfortably separated double positions
};

struct GValue {
    double value;
    double right_value;
    double jump;
};

struct Jump {
    double position;
    double mass;
};

struct JumpList {
    std::vector<Jump> jumps;
    bool truncated = false;
};

enum class DomainMode { derivative, bc1 };

enum class DomainViolation {
    a_in_Ng_minus,
    a_in_Dg,
    b_in_Dg,
    b_in_Cg,
    b_in_Ng_plus,
};

[[nodiscard]] const char* to_string(DomainViolation v) noexcept;

/// Local structure of g around a point, computed exactly from the record.
template <Scalar T>
struct LocalStructure {
    bool in_Dg = false;
    bool in_Cg = false;
    bool left_constant = false;   ///< g constant on (t - e, t) for some e > 0
    bool right_constant = false;  ///< g constant on (t, t + e) for some e > 0
    bool acc_D_left = false;      ///< jump positions accumulate at t from the left
    bool acc_D_right = false;     ///< jump positions accumulate at t from the right
    bool chain_left = false;      ///< constancy components accumulate at t from the left
    bool chain_right = false;     ///< constancy components accumulate at t from the right
    /// Left end of the constancy run (run_left, t]; set iff left_constant.
    T run_left = T(0);
    /// Right end of the constancy run [t, run_right); set iff right_constant.
    T run_right = T(0);

    [[nodiscard]] bool in_Ng_minus() const { return !in_Dg && !in_Cg && right_constant; }
    [[nodiscard]] bool in_Ng_plus() const { return !in_Dg && !in_Cg && left_constant; }
};

class Derivator {
public:
    Derivator(std::string name, std::vector<Segment> segments, std::vector<Atom> atoms,
              std::vector<JumpFamily> families);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const std::vector<Segment>& segments() const noexcept { return segments_; }
    [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    [[nodiscard]] const std::vector<JumpFamily>& families() const noexcept { return families_; }

    /// g(t), g(t+) and the jump, accumulated in the wide scalar and rounded once.
    [[nodiscard]] GValue evaluate(double t) const;

    /// mu_g([c, d)) = g(d) - g(c).
    [[nodiscard]] double measure(double c, double d) const;

    [[nodiscard]] double star(double t, const Interval& dom) const;

    /// (inf, sup) of {s in dom : g(s) = g(t)}.
    [[nodiscard]] std::pair<double, double> level_set(double t, const Interval& dom) const;

    /// Atoms plus the `cap` largest family jumps with positions in (c, d).
    [[nodiscard]] JumpList jumps_in(double c, double d, std::size_t cap) const;

    [[nodiscard]] std::vector<DomainViolation> validate_domain(const Interval& dom,
                                                               DomainMode mode) const;

    // Scalar-generic kernels shared by the classifier and the oracle.

    template <Scalar T>
    [[nodiscard]] T value(const T& t) const;

    template <Scalar T>
    [[nodiscard]] T jump(const T& t) const;

    /// t itself off C_g, otherwise the right end of the containing component
    /// (+inf if that component is unbounded).
    template <Scalar T>
    [[nodiscard]] T star(const T& t) const;

    template <Scalar T>
    [[nodiscard]] LocalStructure<T> local(const T& t) const;

    /// Nearest point of the closed jump set (jumps and accumulation points)
    /// strictly above / below t; +-inf if none. Returns t itself when jumps
    /// accumulate at t from that side.
    template <Scalar T>
    [[nodiscard]] T next_jump_point_above(const T& t) const;
    template <Scalar T>
    [[nodiscard]] T next_jump_point_below(const T& t) const;

    /// Distance from t to the nearest structural feature other than t itself
    /// (breakpoints, atoms, accumulation points, nearest family positions).
    /// Family positions accumulating at t are skipped.
    [[nodiscard]] double feature_distance(double t, Side side) const;
    [[nodiscard]] wide feature_distance(const wide& t, Side side) const;

    [[nodiscard]] double slope_left(double t) const;
    [[nodiscard]] double slope_right(double t) const;

private:
    template <Scalar T>
    [[nodiscard]] T base(const T& t) const;

    template <Scalar T>
    [[nodiscard]] T family_mass_below(const JumpFamily& f, const T& t) const;

    template <Scalar T>
    [[nodiscard]] double slope_left_at(const T& t) const;
    template <Scalar T>
    [[nodiscard]] double slope_right_at(const T& t) const;

    /// Boundary of the slope-0 stretch reaching t from the left/right side.
    template <Scalar T>
    [[nodiscard]] double flat_stretch_left_end(const T& t) const;
    template <Scalar T>
    [[nodiscard]] double flat_stretch_right_end(const T& t) const;

    void check_invariants() const;

    std::string name_;
    std::vector<Segment> segments_;
    std::vector<double> base_at_break_;
    std::vector<Atom> atoms_;
    std::vector<JumpFamily> families_;
};

}  // namespace stieltjes
