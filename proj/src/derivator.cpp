// SPDX-License-Identifier: MIT
#include "stieltjes/derivator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace stieltjes {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

long double to_ld(double x) { return x; }
long double to_ld(const wide& x) { return x.convert_to<long double>(); }

template <Scalar T>
T pow_t(const T& x, const T& y) {
    using std::pow;
    return pow(x, y);
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_interval: return "invalid-interval";
        case ErrorKind::out_of_domain: return "out-of-domain";
        case ErrorKind::invalid_domain: return "invalid-domain";
        case ErrorKind::invalid_derivator: return "invalid-derivator";
        case ErrorKind::parse: return "parse-error";
        case ErrorKind::evaluation: return "evaluation-error";
        case ErrorKind::invalid_arity: return "invalid-arity";
        case ErrorKind::invalid_argument: return "invalid";
        case ErrorKind::quotient_undefined: return "quotient-undefined";
        case ErrorKind::unsupported: return "unsupported";
    }
    return "error";
}

const char* to_string(DomainViolation v) noexcept {
    switch (v) {
        case DomainViolation::a_in_Ng_minus: return "a in N_g^-";
        case DomainViolation::a_in_Dg: return "a in D_g";
        case DomainViolation::b_in_Dg: return "b in D_g";
        case DomainViolation::b_in_Cg: return "b in C_g";
        case DomainViolation::b_in_Ng_plus: return "b in N_g^+";
    }
    return "?";
}

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
        std::ostringstream os;
        os << "[" << lo << ", " << hi << "] requires finite a < b";
        throw Error(ErrorKind::invalid_interval, os.str());
    }
}

// ---------------------------------------------------------------------------
// JumpFamily
// ---------------------------------------------------------------------------

JumpFamily::JumpFamily(double accumulation, Side side, PositionRule position, MassRule mass,
                       std::int64_t n_start)
    : acc_(accumulation), side_(side), pos_(position), mass_(mass), n_start_(n_start) {
    if (!std::isfinite(acc_)) throw Error(ErrorKind::invalid_derivator, "family accumulation must be finite");
    if (!(pos_.c > 0.0 && std::isfinite(pos_.c))) throw Error(ErrorKind::invalid_derivator, "position rule needs c > 0");
    if (!(pos_.p >= 1.0 && std::isfinite(pos_.p))) throw Error(ErrorKind::invalid_derivator, "position rule needs p >= 1");
    if (!(mass_.s > 0.0 && std::isfinite(mass_.s))) throw Error(ErrorKind::invalid_derivator, "mass rule needs s > 0");
    if (mass_.form == MassRule::Form::geometric && !(mass_.q > 0.0 && mass_.q < 1.0))
        throw Error(ErrorKind::invalid_derivator, "geometric mass rule needs 0 < q < 1");
    if (mass_.form == MassRule::Form::power && !(mass_.p > 1.0 && std::isfinite(mass_.p)))
        throw Error(ErrorKind::invalid_derivator, "power mass rule needs p > 1");
    if (n_start_ < 1) throw Error(ErrorKind::invalid_derivator, "n_start must be positive");

    // Largest index whose double positions stay strictly monotone with a wide
    // margin: spacing c p / (n+1)^(p+1) against 2^-30 of the magnitude.
    const auto separated = [&](double n) {
        const double spacing = pos_.c * pos_.p / std::pow(n + 1.0, pos_.p + 1.0);
        const double scale = std::abs(acc_) + pos_.c / std::pow(n, pos_.p);
        return spacing >= std::ldexp(scale, -30);
    };
    double lo = static_cast<double>(n_start_);
    if (!separated(lo)) {
        n_double_ = n_start_ - 1;
        return;
    }
    double hi = lo;
    while (hi < 0x1p40 && separated(hi * 2.0)) hi *= 2.0;
    if (hi >= 0x1p40) {
        n_double_ = std::int64_t{1} << 40;
        return;
    }
    double top = hi * 2.0;
    while (top - hi > 1.0) {
        const double mid = std::floor((hi + top) / 2.0);
        (separated(mid) ? hi : top) = mid;
    }
    n_double_ = static_cast<std::int64_t>(hi);
}

double JumpFamily::offset(std::int64_t n) const {
    return pos_.c / std::pow(static_cast<double>(n), pos_.p);
}

template <Scalar T>
T JumpFamily::position(std::int64_t n) const {
    if constexpr (std::same_as<T, double>) {
        return side_ == Side::right_of ? acc_ + offset(n) : acc_ - offset(n);
    } else {
        if (n <= n_double_) return T(position<double>(n));
        const T off = T(pos_.c) / pow_t(T(static_cast<double>(n)), T(pos_.p));
        return side_ == Side::right_of ? T(acc_) + off : T(acc_) - off;
    }
}

template <Scalar T>
T JumpFamily::mass(std::int64_t n) const {
    const T nn = T(static_cast<double>(n));
    if (mass_.form == MassRule::Form::geometric) return T(mass_.s) * pow_t(T(mass_.q), nn);
    return T(mass_.s) / pow_t(nn, T(mass_.p));
}

template <Scalar T>
T JumpFamily::tail(std::int64_t n) const {
    n = std::max(n, n_start_);
    if (mass_.form == MassRule::Form::geometric) {
        return mass<T>(n) / (T(1) - T(mass_.q));
    }
    // s * sum_{k>=n} k^-p: explicit head, Euler-Maclaurin remainder at m >= 32.
    const std::int64_t m = std::max<std::int64_t>(n, 32);
    T head = T(0);
    for (std::int64_t k = m - 1; k >= n; --k) head += mass<T>(k);
    const T p = T(mass_.p);
    const T M = T(static_cast<double>(m));
    const T f = pow_t(M, -p);
    const T r = T(1) / M;
    const T d1 = p * f * r;                                   // -f'(M)
    const T d3 = d1 * (p + 1) * (p + 2) * r * r;              // -f'''(M)
    const T d5 = d3 * (p + 3) * (p + 4) * r * r;              // -f^(5)(M)
    const T d7 = d5 * (p + 5) * (p + 6) * r * r;              // -f^(7)(M)
    const T em = f * M / (p - 1) + f / 2 + d1 / 12 - d3 / 720 + d5 / 30240 - d7 / 1209600;
    return head + T(mass_.s) * em;
}

template <Scalar T>
std::int64_t JumpFamily::first_index_past(const T& t) const {
    const bool right = side_ == Side::right_of;
    if (right ? !(t > T(acc_)) : !(t < T(acc_))) return max_index;
    // right-of: pos_n <= t  <=>  offset(n) <= t - acc; left-of: pos_n >= t.
    const auto past = [&](std::int64_t n) {
        const T pn = position<T>(n);
        return right ? pn <= t : pn >= t;
    };
    const long double d = right ? to_ld(t) - to_ld(acc_) : to_ld(acc_) - to_ld(t);
    long double x = d > 0 ? std::pow(static_cast<long double>(pos_.c) / d, 1.0L / pos_.p) : 0.0L;
    if (!(x < static_cast<long double>(max_index))) x = static_cast<long double>(max_index);
    std::int64_t n = std::max<std::int64_t>(n_start_, static_cast<std::int64_t>(std::floor(x)));
    if (n >= max_index) return max_index;
    while (n > n_start_ && past(n - 1)) --n;
    while (!past(n)) {
        if (++n >= max_index) return max_index;
    }
    return n;
}

template <Scalar T>
std::optional<std::int64_t> JumpFamily::index_of(const T& t) const {
    const std::int64_t n = first_index_past(t);
    if (n >= max_index) return std::nullopt;
    if (position<T>(n) == t) return n;
    return std::nullopt;
}

template double JumpFamily::position<double>(std::int64_t) const;
template wide JumpFamily::position<wide>(std::int64_t) const;
template double JumpFamily::mass<double>(std::int64_t) const;
template wide JumpFamily::mass<wide>(std::int64_t) const;
template double JumpFamily::tail<double>(std::int64_t) const;
template wide JumpFamily::tail<wide>(std::int64_t) const;
template std::int64_t JumpFamily::first_index_past<double>(const double&) const;
template std::int64_t JumpFamily::first_index_past<wide>(const wide&) const;
template std::optional<std::int64_t> JumpFamily::index_of<double>(const double&) const;
template std::optional<std::int64_t> JumpFamily::index_of<wide>(const wide&) const;

// ---------------------------------------------------------------------------
// Derivator
// ---------------------------------------------------------------------------

namespace {

/// Closed hull of a family's positions, including the accumulation point.
std::pair<double, double> hull(const JumpFamily& f) {
    const double far = f.position<double>(f.n_start());
    return f.side() == Side::right_of ? std::pair{f.accumulation(), far}
                                      : std::pair{far, f.accumulation()};
}

}  // namespace

Derivator::Derivator(std::string name, std::vector<Segment> segments, std::vector<Atom> atoms,
                     std::vector<JumpFamily> families)
    : name_(std::move(name)),
      segments_(std::move(segments)),
      atoms_(std::move(atoms)),
      families_(std::move(families)) {
    std::sort(segments_.begin(), segments_.end(),
              [](const Segment& x, const Segment& y) { return x.from < y.from; });
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return x.at < y.at; });
    base_at_break_.resize(segments_.size(), 0.0);
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        base_at_break_[i] = base_at_break_[i - 1] +
                            segments_[i - 1].slope * (segments_[i].from - segments_[i - 1].from);
    }
    check_invariants();
}

void Derivator::check_invariants() const {
    const auto fail = [](const std::string& what) { throw Error(ErrorKind::invalid_derivator, what); };
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        if (!std::isfinite(s.from) || !std::isfinite(s.slope)) fail("segment values must be finite");
        if (s.slope < 0.0) fail("segment slopes must be nonnegative");
        if (i > 0 && segments_[i - 1].from == s.from) fail("duplicate segment breakpoint");
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const auto& a = atoms_[i];
        if (!std::isfinite(a.at) || !std::isfinite(a.mass)) fail("atom values must be finite");
        if (!(a.mass > 0.0)) fail("atom masses must be positive");
        if (i > 0 && atoms_[i - 1].at == a.at) fail("duplicate atom position");
    }
    for (std::size_t i = 0; i < families_.size(); ++i) {
        const auto& f = families_[i];
        for (const auto& a : atoms_) {
            if (a.at == f.accumulation()) fail("atom placed on a family accumulation point");
            if (f.index_of(a.at)) fail("atom placed on a family position");
        }
        for (std::size_t j = 0; j < families_.size(); ++j) {
            if (i == j) continue;
            const auto& h = families_[j];
            if (f.accumulation() == h.accumulation()) {
                if (f.side() == h.side()) fail("two families accumulate at the same point from the same side");
                continue;
            }
            const auto [lo, hi] = hull(h);
            if (f.accumulation() >= lo && f.accumulation() <= hi)
                fail("family accumulation point lies inside another family's range");
            // Positions of f inside h's hull are finitely many; compare them.
            const auto [flo, fhi] = hull(f);
            if (fhi < lo || flo > hi) continue;
            std::int64_t n = f.n_start();
            for (std::int64_t steps = 0;; ++n, ++steps) {
                if (steps > 1'000'000) fail("overlapping family ranges too dense to validate");
                const double pn = f.position<double>(n);
                const bool toward_acc_done =
                    f.side() == Side::right_of ? pn < lo : pn > hi;
                if (toward_acc_done) break;
                if (pn >= lo && pn <= hi && h.index_of(pn)) fail("two families share a jump position");
            }
        }
    }
}

template <Scalar T>
T Derivator::base(const T& t) const {
    if (segments_.empty()) return T(0);
    const auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                                     [](const T& x, const Segment& s) { return x < T(s.from); });
    if (it == segments_.begin()) return T(segments_.front().slope) * (t - T(segments_.front().from));
    const auto i = static_cast<std::size_t>(it - segments_.begin()) - 1;
    return T(base_at_break_[i]) + T(segments_[i].slope) * (t - T(segments_[i].from));
}

template <Scalar T>
T Derivator::family_mass_below(const JumpFamily& f, const T& t) const {
    if (f.side() == Side::right_of) {
        if (!(t > T(f.accumulation()))) return T(0);
        std::int64_t n = f.first_index_past(t);
        if (n < JumpFamily::max_index && f.position<T>(n) == t) ++n;
        return f.tail<T>(n);
    }
    if (t >= T(f.accumulation())) return f.tail<T>(f.n_start());
    const std::int64_t m = f.first_index_past(t);
    return f.tail<T>(f.n_start()) - f.tail<T>(m);
}

template <Scalar T>
T Derivator::value(const T& t) const {
    T v = base(t);
    for (const auto& a : atoms_) {
        if (T(a.at) < t) v += T(a.mass);
    }
    for (const auto& f : families_) v += family_mass_below(f, t);
    return v;
}

template <Scalar T>
T Derivator::jump(const T& t) const {
    T j = T(0);
    for (const auto& a : atoms_) {
        if (T(a.at) == t) j += T(a.mass);
    }
    for (const auto& f : families_) {
        if (auto n = f.index_of(t)) j += f.mass<T>(*n);
    }
    return j;
}

namespace {

template <Scalar T>
std::size_t segment_right_of(const std::vector<Segment>& segs, const T& t) {
    // Index of the segment covering [t, t + e); segs.size() means the left extension.
    const auto it = std::upper_bound(segs.begin(), segs.end(), t,
                                     [](const T& x, const Segment& s) { return x < T(s.from); });
    return it == segs.begin() ? segs.size() : static_cast<std::size_t>(it - segs.begin()) - 1;
}

template <Scalar T>
std::size_t segment_left_of(const std::vector<Segment>& segs, const T& t) {
    // Index of the segment covering (t - e, t].
    const auto it = std::lower_bound(segs.begin(), segs.end(), t,
                                     [](const Segment& s, const T& x) { return T(s.from) < x; });
    return it == segs.begin() ? segs.size() : static_cast<std::size_t>(it - segs.begin()) - 1;
}

}  // namespace

template <Scalar T>
double Derivator::slope_right_at(const T& t) const {
    if (segments_.empty()) return 0.0;
    const auto i = segment_right_of(segments_, t);
    return i == segments_.size() ? segments_.front().slope : segments_[i].slope;
}

template <Scalar T>
double Derivator::slope_left_at(const T& t) const {
    if (segments_.empty()) return 0.0;
    const auto i = segment_left_of(segments_, t);
    return i == segments_.size() ? segments_.front().slope : segments_[i].slope;
}

double Derivator::slope_right(double t) const { return slope_right_at(t); }
double Derivator::slope_left(double t) const { return slope_left_at(t); }

template <Scalar T>
double Derivator::flat_stretch_right_end(const T& t) const {
    if (segments_.empty()) return inf;
    auto i = segment_right_of(segments_, t);
    std::size_t j = (i == segments_.size() ? 0 : i) + 1;
    while (j < segments_.size() && segments_[j].slope == 0.0) ++j;
    return j == segments_.size() ? inf : segments_[j].from;
}

template <Scalar T>
double Derivator::flat_stretch_left_end(const T& t) const {
    if (segments_.empty()) return -inf;
    auto i = segment_left_of(segments_, t);
    if (i == segments_.size()) return -inf;
    std::size_t j = i;
    while (j > 0 && segments_[j - 1].slope == 0.0) --j;
    return j == 0 ? -inf : segments_[j].from;
}

template <Scalar T>
T Derivator::next_jump_point_above(const T& t) const {
    T best = T(inf);
    for (const auto& a : atoms_) {
        if (T(a.at) > t) {
            best = std::min(best, T(a.at));
            break;
        }
    }
    for (const auto& f : families_) {
        const T acc = T(f.accumulation());
        if (f.side() == Side::right_of) {
            if (t < acc) {
                best = std::min(best, acc);
            } else if (t == acc) {
                return t;
            } else {
                const std::int64_t n = f.first_index_past(t);
                if (n - 1 >= f.n_start()) best = std::min(best, f.position<T>(n - 1));
            }
        } else if (t < acc) {
            std::int64_t m = f.first_index_past(t);
            if (m < JumpFamily::max_index && f.position<T>(m) == t) ++m;
            best = std::min(best, m < JumpFamily::max_index ? f.position<T>(m) : acc);
        }
    }
    return best;
}

template <Scalar T>
T Derivator::next_jump_point_below(const T& t) const {
    T best = T(-inf);
    for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) {
        if (T(it->at) < t) {
            best = std::max(best, T(it->at));
            break;
        }
    }
    for (const auto& f : families_) {
        const T acc = T(f.accumulation());
        if (f.side() == Side::left_of) {
            if (t > acc) {
                best = std::max(best, acc);
            } else if (t == acc) {
                return t;
            } else {
                const std::int64_t m = f.first_index_past(t);
                if (m - 1 >= f.n_start()) best = std::max(best, f.position<T>(m - 1));
            }
        } else if (t > acc) {
            std::int64_t n = f.first_index_past(t);
            if (n < JumpFamily::max_index && f.position<T>(n) == t) ++n;
            best = std::max(best, n < JumpFamily::max_index ? f.position<T>(n) : acc);
        }
    }
    return best;
}

template <Scalar T>
LocalStructure<T> Derivator::local(const T& t) const {
    LocalStructure<T> s;
    s.in_Dg = jump(t) > T(0);
    for (const auto& f : families_) {
        if (T(f.accumulation()) != t) continue;
        (f.side() == Side::left_of ? s.acc_D_left : s.acc_D_right) = true;
    }
    const double sl = slope_left_at(t);
    const double sr = slope_right_at(t);
    s.left_constant = sl == 0.0 && !s.acc_D_left;
    s.right_constant = sr == 0.0 && !s.acc_D_right;
    s.chain_left = s.acc_D_left && sl == 0.0;
    s.chain_right = s.acc_D_right && sr == 0.0;
    s.in_Cg = s.left_constant && s.right_constant && !s.in_Dg;
    if (s.right_constant) s.run_right = std::min(T(flat_stretch_right_end(t)), next_jump_point_above(t));
    if (s.left_constant) s.run_left = std::max(T(flat_stretch_left_end(t)), next_jump_point_below(t));
    return s;
}

template <Scalar T>
T Derivator::star(const T& t) const {
    const auto s = local(t);
    return s.in_Cg ? s.run_right : t;
}

namespace {

template <Scalar T>
T feature_distance_impl(const Derivator& g, const T& t, Side side) {
    const bool right = side == Side::right_of;
    T best = T(inf);
    const auto consider = [&](const T& x) {
        const T d = right ? x - t : t - x;
        if (d > T(0)) best = std::min(best, d);
    };
    for (const auto& s : g.segments()) consider(T(s.from));
    for (const auto& a : g.atoms()) consider(T(a.at));
    for (const auto& f : g.families()) {
        const T acc = T(f.accumulation());
        consider(acc);
        const bool accumulates_here = acc == t && (f.side() == Side::right_of) == right;
        if (accumulates_here) continue;
        const bool on_family_side = f.side() == Side::right_of ? t > acc : t < acc;
        if (on_family_side) {
            std::int64_t n = f.first_index_past(t);
            if (n < JumpFamily::max_index && f.position<T>(n) == t) {
                if (n + 1 < JumpFamily::max_index) consider(f.position<T>(n + 1));
                if (n - 1 >= f.n_start()) consider(f.position<T>(n - 1));
            } else {
                if (n < JumpFamily::max_index) consider(f.position<T>(n));
                if (n - 1 >= f.n_start()) consider(f.position<T>(n - 1));
            }
        }
    }
    return best;
}

}  // namespace

double Derivator::feature_distance(double t, Side side) const {
    return feature_distance_impl(*this, t, side);
}

wide Derivator::feature_distance(const wide& t, Side side) const {
    return feature_distance_impl(*this, t, side);
}

GValue Derivator::evaluate(double t) const {
    const wide v = value<wide>(wide(t));
    const wide j = jump<wide>(wide(t));
    GValue out{};
    out.value = to_double(v);
    out.right_value = to_double(v + j);
    out.jump = out.right_value - out.value;
    return out;
}

double Derivator::measure(double c, double d) const {
    if (!(c < d)) {
        std::ostringstream os;
        os << "[" << c << ", " << d << ") is empty";
        throw Error(ErrorKind::invalid_interval, os.str());
    }
    return evaluate(d).value - evaluate(c).value;
}

namespace {

void require_in(const Interval& dom, double t) {
    if (!dom.contains(t)) {
        std::ostringstream os;
        os << t << " not in [" << dom.a << ", " << dom.b << "]";
        throw Error(ErrorKind::out_of_domain, os.str());
    }
}

}  // namespace

double Derivator::star(double t, const Interval& dom) const {
    require_in(dom, t);
    const double s = star<double>(t);
    if (!std::isfinite(s)) throw Error(ErrorKind::invalid_domain, "constancy component unbounded to the right");
    return s;
}

std::pair<double, double> Derivator::level_set(double t, const Interval& dom) const {
    require_in(dom, t);
    const auto s = local<double>(t);
    double sup = t;
    if (!s.in_Dg && s.right_constant) sup = std::min(s.run_right, dom.b);
    double lo = t;
    if (s.left_constant) lo = std::max(s.run_left, dom.a);
    return {lo, sup};
}

JumpList Derivator::jumps_in(double c, double d, std::size_t cap) const {
    JumpList out;
    for (const auto& a : atoms_) {
        if (a.at > c && a.at < d) out.jumps.push_back({a.at, a.mass});
    }
    std::vector<Jump> fam;
    for (const auto& f : families_) {
        // Index range [lo, hi] of positions strictly inside (c, d).
        std::int64_t lo = f.n_start();
        std::int64_t hi = JumpFamily::max_index;
        if (f.side() == Side::right_of) {
            std::int64_t n = f.first_index_past(d);
            if (n < JumpFamily::max_index && f.position<double>(n) == d) ++n;
            lo = std::max(lo, n);
            if (c > f.accumulation()) hi = f.first_index_past(c) - 1;
        } else {
            std::int64_t n = f.first_index_past(c);
            if (n < JumpFamily::max_index && f.position<double>(n) == c) ++n;
            lo = std::max(lo, n);
            if (d < f.accumulation()) hi = f.first_index_past(d) - 1;
        }
        if (lo > hi || lo >= JumpFamily::max_index) continue;
        const auto count = static_cast<unsigned long long>(hi - lo) + 1ULL;
        const std::int64_t take = static_cast<std::int64_t>(std::min<unsigned long long>(count, cap));
        if (count > cap) out.truncated = true;
        for (std::int64_t n = lo; n < lo + take; ++n) fam.push_back({f.position<double>(n), f.mass<double>(n)});
    }
    std::stable_sort(fam.begin(), fam.end(), [](const Jump& x, const Jump& y) { return x.mass > y.mass; });
    if (fam.size() > cap) {
        fam.resize(cap);
        out.truncated = true;
    }
    out.jumps.insert(out.jumps.end(), fam.begin(), fam.end());
    std::sort(out.jumps.begin(), out.jumps.end(),
              [](const Jump& x, const Jump& y) { return x.position < y.position; });
    return out;
}

std::vector<DomainViolation> Derivator::validate_domain(const Interval& dom, DomainMode mode) const {
    std::vector<DomainViolation> v;
    const auto la = local<double>(dom.a);
    const auto lb = local<double>(dom.b);
    if (la.in_Ng_minus()) v.push_back(DomainViolation::a_in_Ng_minus);
    if (mode == DomainMode::bc1 && la.in_Dg) v.push_back(DomainViolation::a_in_Dg);
    if (lb.in_Dg) v.push_back(DomainViolation::b_in_Dg);
    if (lb.in_Cg) v.push_back(DomainViolation::b_in_Cg);
    if (lb.in_Ng_plus()) v.push_back(DomainViolation::b_in_Ng_plus);
    return v;
}

template double Derivator::value<double>(const double&) const;
template wide Derivator::value<wide>(const wide&) const;
template double Derivator::jump<double>(const double&) const;
template wide Derivator::jump<wide>(const wide&) const;
template double Derivator::star<double>(const double&) const;
template wide Derivator::star<wide>(const wide&) const;
template LocalStructure<double> Derivator::local<double>(const double&) const;
template LocalStructure<wide> Derivator::local<wide>(const wide&) const;
template double Derivator::next_jump_point_above<double>(const double&) const;
template wide Derivator::next_jump_point_above<wide>(const wide&) const;
template double Derivator::next_jump_point_below<double>(const double&) const;
template wide Derivator::next_jump_point_below<wide>(const wide&) const;

}  // namespace stieltjes
