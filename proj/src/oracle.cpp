// SPDX-License-Identifier: MIT
#include "stieltjes/oracle.hpp"

#include "stieltjes/pointclass.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace stieltjes {

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::converged: return "converged";
        case Verdict::diverges: return "diverges";
        case Verdict::no_limit: return "no-limit";
        case Verdict::not_applicable: return "not-applicable";
    }
    return "?";
}

const char* to_string(SideVerdict v) noexcept {
    switch (v) {
        case SideVerdict::continuous: return "continuous";
        case SideVerdict::discontinuous: return "discontinuous";
        case SideVerdict::vacuous: return "vacuous";
    }
    return "?";
}

const char* to_string(Condition c) noexcept {
    return c == Condition::delta_diff ? "delta-diff" : "star-lift";
}

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::isfinite;

const wide phi{"0.61803398874989484820458683436563811772"};

/// Outcome of one limit in full precision.
struct Lim {
    Verdict verdict = Verdict::not_applicable;
    wide value = 0;
    int sign = 0;
    std::string note;
    bool exhausted = false;  // ran out of samples while still moving
};

struct Step {
    enum Kind { value, skip, end } kind;
    wide s;
    wide v;
};

using Sampler = std::function<Step(int)>;

Lim fail(Verdict v, std::string note) {
    Lim l;
    l.verdict = v;
    l.note = std::move(note);
    return l;
}

Lim run_limit(const Sampler& next, const wide& t, const LimitConfig& cfg, const std::string& label,
              std::vector<Evidence>* trail) {
    std::vector<wide> vals;
    const int budget = 4 * cfg.max_samples;
    for (int k = 0; k < budget && static_cast<int>(vals.size()) < cfg.max_samples; ++k) {
        const Step st = next(k);
        if (st.kind == Step::end) break;
        if (st.kind == Step::skip) continue;
        if (!isfinite(st.v)) return fail(Verdict::no_limit, label + ": inner limit undefined at a sample");
        vals.push_back(st.v);
        if (trail) trail->push_back({label, to_double(st.s - t), to_double(st.v)});
        const auto n = static_cast<int>(vals.size());
        if (n < cfg.window) continue;
        const auto first = vals.end() - cfg.window;
        const auto [lo, hi] = std::minmax_element(first, vals.end());
        const wide& v = vals.back();
        if (*hi - *lo <= std::max(wide(cfg.rel) * abs(v), wide(cfg.abs))) {
            Lim l;
            l.verdict = Verdict::converged;
            l.value = v;
            return l;
        }
        if (abs(v) > wide(cfg.diverge_at)) {
            bool escape = true;
            for (auto it = first + 1; it != vals.end(); ++it) {
                if ((*it > 0) != (v > 0) || abs(*it) <= abs(*(it - 1))) escape = false;
            }
            if (escape) {
                Lim l;
                l.verdict = Verdict::diverges;
                l.sign = v > 0 ? 1 : -1;
                return l;
            }
        }
    }
    if (static_cast<int>(vals.size()) < cfg.window) return fail(Verdict::not_applicable, label + ": too few usable samples");
    Lim l = fail(Verdict::no_limit, label + ": no stabilization");
    l.exhausted = true;
    return l;
}

/// Merges the limits of several sequences approaching the same point.
Lim combine(const std::vector<Lim>& parts, const LimitConfig& cfg) {
    int div_sign = 0;
    bool conflict = false;
    bool no_limit = false;
    bool exhausted = true;
    std::vector<wide> values;
    std::string notes;
    for (const auto& p : parts) {
        if (!p.note.empty()) notes += (notes.empty() ? "" : "; ") + p.note;
        switch (p.verdict) {
            case Verdict::diverges:
                if (div_sign != 0 && div_sign != p.sign) conflict = true;
                div_sign = p.sign;
                break;
            case Verdict::no_limit:
                no_limit = true;
                exhausted = exhausted && p.exhausted;
                break;
            case Verdict::converged: values.push_back(p.value); break;
            case Verdict::not_applicable: break;
        }
    }
    if (conflict) return fail(Verdict::no_limit, notes.empty() ? "sequences diverge with opposite signs" : notes);
    if (div_sign != 0) {
        Lim l;
        l.verdict = Verdict::diverges;
        l.sign = div_sign;
        l.note = notes;
        return l;
    }
    if (no_limit) {
        Lim l = fail(Verdict::no_limit, notes);
        l.exhausted = exhausted;
        return l;
    }
    if (values.empty()) return fail(Verdict::not_applicable, notes);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const wide tol = 4 * std::max(wide(cfg.rel) * abs(*hi), wide(cfg.abs));
    if (*hi - *lo > tol) {
        std::ostringstream os;
        os << "sequences stabilize to different values " << to_double(*lo) << " and " << to_double(*hi);
        return fail(Verdict::no_limit, os.str());
    }
    wide sum = 0;
    for (const auto& v : values) sum += v;
    Lim l;
    l.verdict = Verdict::converged;
    l.value = sum / wide(static_cast<double>(values.size()));
    l.note = notes;
    return l;
}

LimitResult publish(const Lim& l, std::vector<Evidence> trail) {
    LimitResult r;
    r.verdict = l.verdict;
    r.value = l.verdict == Verdict::converged ? to_double(l.value) : 0.0;
    r.sign = l.sign;
    r.note = l.note;
    r.inconclusive = l.verdict == Verdict::no_limit && l.exhausted;
    r.evidence = std::move(trail);
    return r;
}

const char* side_name(int sigma) { return sigma > 0 ? "right" : "left"; }

/// Shared sequence construction for one derivator and domain.
class Sequences {
public:
    Sequences(const Derivator& g, const Interval& dom) : g_(g), dom_(dom) {}

    /// Starting step for samples on side sigma; zero if the side is unavailable.
    [[nodiscard]] wide h0(const wide& t, int sigma) const {
        const wide room = sigma > 0 ? wide(dom_.b) - t : t - wide(dom_.a);
        if (room <= 0) return wide(0);
        const wide feat = g_.feature_distance(t, sigma > 0 ? Side::right_of : Side::left_of);
        return std::min({wide(1), feat, room}) / 4;
    }

    [[nodiscard]] wide generic_point(const wide& t, int sigma, const wide& h, int k) const {
        wide off = h * phi * pow(wide(2), -k);
        wide s = t + sigma * off;
        for (int tries = 0; tries < 4 && g_.jump(s) > 0; ++tries) {
            off *= wide(1) + pow(wide(2), -30 - tries);
            s = t + sigma * off;
        }
        return s;
    }

    [[nodiscard]] const JumpFamily* family_at(const wide& t, int sigma) const {
        const Side want = sigma > 0 ? Side::right_of : Side::left_of;
        for (const auto& f : g_.families()) {
            if (f.side() == want && wide(f.accumulation()) == t) return &f;
        }
        return nullptr;
    }

    /// Index of the first family position within h of the accumulation point.
    [[nodiscard]] static std::int64_t first_index(const JumpFamily& f, const wide& t, int sigma, const wide& h) {
        return f.first_index_past(t + sigma * h);
    }

    [[nodiscard]] static std::optional<std::int64_t> geometric_index(std::int64_t n0, int k) {
        if (k >= 62) return std::nullopt;
        const std::int64_t n = n0 << k;
        if (n0 > (JumpFamily::max_index >> k) || n >= JumpFamily::max_index - 1) return std::nullopt;
        return n;
    }

    const Derivator& g_;
    const Interval& dom_;
};

enum class Seq { generic, jumps, constancy };

/// Sample generator for one sequence kind; F maps a sample point to the
/// quantity whose limit is taken (nullopt skips the point).
Sampler make_sampler(const Sequences& sq, const wide& t, int sigma, Seq kind,
                     std::function<std::optional<wide>(const wide&)> F, bool* available) {
    const wide h = sq.h0(t, sigma);
    *available = h > 0;
    if (!*available) return {};
    switch (kind) {
        case Seq::generic:
            return [=, &sq](int k) {
                const wide s = sq.generic_point(t, sigma, h, k);
                if (s == t) return Step{Step::end, s, 0};
                auto v = F(s);
                return v ? Step{Step::value, s, *v} : Step{Step::skip, s, 0};
            };
        case Seq::jumps: {
            const JumpFamily* f = sq.family_at(t, sigma);
            if (!f) {
                *available = false;
                return {};
            }
            const std::int64_t n0 = Sequences::first_index(*f, t, sigma, h);
            return [=](int k) {
                const auto n = Sequences::geometric_index(n0, k);
                if (!n) return Step{Step::end, t, 0};
                const wide s = f->position<wide>(*n);
                auto v = F(s);
                return v ? Step{Step::value, s, *v} : Step{Step::skip, s, 0};
            };
        }
        case Seq::constancy: {
            const auto loc = sq.g_.local(t);
            const bool flat = sigma > 0 ? loc.right_constant : loc.left_constant;
            const bool chain = sigma > 0 ? loc.chain_right : loc.chain_left;
            if (flat) {
                return [=, &sq](int k) {
                    const wide s = sq.generic_point(t, sigma, h, k);
                    if (s == t) return Step{Step::end, s, 0};
                    auto v = F(s);
                    return v ? Step{Step::value, s, *v} : Step{Step::skip, s, 0};
                };
            }
            if (!chain) {
                *available = false;
                return {};
            }
            const JumpFamily* f = sq.family_at(t, sigma);
            const std::int64_t n0 = Sequences::first_index(*f, t, sigma, h);
            return [=, &sq](int k) {
                const auto n = Sequences::geometric_index(n0, k);
                if (!n) return Step{Step::end, t, 0};
                const wide s = (f->position<wide>(*n) + f->position<wide>(*n + 1)) / 2;
                if (!sq.g_.local(s).in_Cg) return Step{Step::skip, s, 0};
                auto v = F(s);
                return v ? Step{Step::value, s, *v} : Step{Step::skip, s, 0};
            };
        }
    }
    return {};
}

const char* seq_name(Seq k) {
    switch (k) {
        case Seq::generic: return "generic";
        case Seq::jumps: return "jumps";
        case Seq::constancy: return "constancy";
    }
    return "?";
}

/// Recursive numeric derivative engine.
class Engine {
public:
    Engine(const PointFn& f, const Derivator& g, const Interval& dom, const OracleConfig& cfg)
        : f_(f), g_(g), dom_(dom), cfg_(cfg), seq_(g, dom) {}

    [[nodiscard]] const LimitConfig& level(int l) const {
        return cfg_.levels[static_cast<std::size_t>(std::min(l, static_cast<int>(cfg_.levels.size()) - 1))];
    }

    /// k-th derivative at t, limits decided at tolerance level l.
    Lim derive(const wide& t_in, int k, int l, std::vector<Evidence>* trail) const {
        if (k == 0) {
            Lim r;
            r.verdict = Verdict::converged;
            r.value = f_(t_in);
            return r;
        }
        wide t = t_in;
        auto loc = g_.local(t);
        if (loc.in_Cg) {
            t = loc.run_right;
            if (!isfinite(t) || t > wide(dom_.b)) return fail(Verdict::not_applicable, "constancy component leaves the domain");
            loc = g_.local(t);
        }
        const Lim base = derive(t, k - 1, l + 1, nullptr);
        if (base.verdict != Verdict::converged) {
            Lim r = fail(Verdict::no_limit, "lower-order derivative undefined at t");
            r.exhausted = base.exhausted;
            return r;
        }
        const auto lower = [this, k, l](const wide& s) -> std::optional<wide> {
            const Lim r = derive(s, k - 1, l + 1, nullptr);
            if (r.verdict != Verdict::converged) return wide(std::numeric_limits<double>::quiet_NaN());
            return r.value;
        };

        if (loc.in_Dg) {
            bool ok = false;
            const Sampler s = make_sampler(seq_, t, +1, Seq::generic, lower, &ok);
            if (!ok) return fail(Verdict::not_applicable, "no room to the right of a jump point");
            const Lim right = run_limit(s, t, level(l + 1), "right-limit", trail);
            if (right.verdict == Verdict::diverges) return right;
            if (right.verdict != Verdict::converged) {
                Lim r = fail(Verdict::no_limit, "right limit at the jump: " + right.note);
                r.exhausted = right.exhausted;
                return r;
            }
            Lim r;
            r.verdict = Verdict::converged;
            r.value = (right.value - base.value) / g_.jump(t);
            return r;
        }

        const wide a(dom_.a), b(dom_.b);
        std::vector<int> sides;
        if (loc.in_Ng_plus() || t == a) {
            sides = {+1};
        } else if (loc.in_Ng_minus() || t == b) {
            sides = {-1};
        } else {
            sides = {-1, +1};
        }
        const wide gt = g_.value(t);
        const auto quotient = [&](const wide& s) -> std::optional<wide> {
            const wide dg = g_.value(s) - gt;
            if (dg == 0) return std::nullopt;
            const auto fs = lower(s);
            return (*fs - base.value) / dg;
        };
        std::vector<Lim> parts;
        for (int sigma : sides) {
            const bool acc = sigma > 0 ? loc.acc_D_right : loc.acc_D_left;
            for (Seq kind : {Seq::generic, Seq::jumps}) {
                if (kind == Seq::jumps && !acc) continue;
                bool ok = false;
                const Sampler s = make_sampler(seq_, t, sigma, kind, quotient, &ok);
                if (!ok) continue;
                parts.push_back(run_limit(s, t, level(l), std::string(seq_name(kind)) + "-" + side_name(sigma), trail));
            }
        }
        return combine(parts, level(l));
    }

private:
    const PointFn& f_;
    const Derivator& g_;
    const Interval& dom_;
    const OracleConfig& cfg_;
    Sequences seq_;
};

void require_point(const Interval& dom, double t) {
    if (!dom.contains(t)) {
        std::ostringstream os;
        os << t << " not in [" << dom.a << ", " << dom.b << "]";
        throw Error(ErrorKind::out_of_domain, os.str());
    }
}

std::vector<int> sides_of(LimitSide side) {
    switch (side) {
        case LimitSide::left: return {-1};
        case LimitSide::right: return {+1};
        case LimitSide::both: return {-1, +1};
    }
    return {};
}

}  // namespace

LimitResult g_limit(const PointFn& F, const Derivator& g, double t, const Interval& dom, LimitSide side,
                    Approach approach, const LimitConfig& cfg) {
    require_point(dom, t);
    const Sequences sq(g, dom);
    const wide tw(t);
    const Seq kind = approach == Approach::in_Dg   ? Seq::jumps
                     : approach == Approach::in_Cg ? Seq::constancy
                                                   : Seq::generic;
    std::vector<Evidence> trail;
    std::vector<Lim> parts;
    for (int sigma : sides_of(side)) {
        bool ok = false;
        const Sampler s = make_sampler(sq, tw, sigma, kind, [&](const wide& x) -> std::optional<wide> { return F(x); }, &ok);
        if (!ok) {
            parts.push_back(fail(Verdict::not_applicable, std::string("approach set does not accumulate ") +
                                                              (sigma > 0 ? "from the right" : "from the left")));
            continue;
        }
        parts.push_back(run_limit(s, tw, cfg, std::string(seq_name(kind)) + "-" + side_name(sigma), &trail));
    }
    for (const auto& p : parts) {
        if (p.verdict == Verdict::not_applicable) return publish(p, std::move(trail));
    }
    return publish(combine(parts, cfg), std::move(trail));
}

LimitResult numeric_g_derivative(const PointFn& f, const Derivator& g, double t, const Interval& dom, int order,
                                 const OracleConfig& cfg) {
    require_point(dom, t);
    if (order < 1) throw Error(ErrorKind::invalid_argument, "derivative order must be positive");
    if (order > cfg.max_order) throw Error(ErrorKind::unsupported, "numeric derivatives stop at order 3");
    require_valid_domain(g, dom, DomainMode::derivative);
    const Engine e(f, g, dom, cfg);
    std::vector<Evidence> trail;
    const Lim l = e.derive(wide(t), order, 0, &trail);
    return publish(l, std::move(trail));
}

LimitResult check_condition(const Derivator& g, double t, const Interval& dom, Condition which, const PointFn* f,
                            const LimitConfig& cfg) {
    require_point(dom, t);
    require_valid_domain(g, dom, DomainMode::derivative);
    const double ts = g.star(t, dom);
    const auto c = classify_unchecked(g, ts, dom);
    std::vector<int> sides;
    Seq kind;
    if (which == Condition::delta_diff) {
        if (!c.in_D123()) return publish(fail(Verdict::not_applicable, "t* is not in D1 u D2 u D3"), {});
        kind = Seq::jumps;
        if (c.in_D1) sides = {-1};
        else if (c.in_D2) sides = {+1};
        else {
            if (c.acc_Dg_left) sides.push_back(-1);
            if (c.acc_Dg_right) sides.push_back(+1);
        }
    } else {
        if (!f) throw Error(ErrorKind::invalid_argument, "star-lift needs a function");
        if (!c.in_C123()) return publish(fail(Verdict::not_applicable, "t* is not in C1 u C2 u C3"), {});
        kind = Seq::constancy;
        if (c.in_C1) sides = {-1};
        else if (c.in_C2) sides = {+1};
        else {
            if (c.acc_Cg_left) sides.push_back(-1);
            if (c.acc_Cg_right) sides.push_back(+1);
        }
    }
    const Sequences sq(g, dom);
    const wide tw(ts);
    const wide gt = g.value(tw);
    const wide b(dom.b);
    const wide ft = (which == Condition::star_lift) ? (*f)(tw) : wide(0);
    const auto quotient = [&](const wide& s) -> std::optional<wide> {
        const wide dg = g.value(s) - gt;
        if (dg == 0) return std::nullopt;
        if (which == Condition::delta_diff) {
            const wide jump = s < b ? g.jump(s) : wide(0);
            return (f ? (*f)(s) * jump : jump) / dg;
        }
        return ((*f)(s) - ft) / dg;
    };
    std::vector<Evidence> trail;
    std::vector<Lim> parts;
    for (int sigma : sides) {
        bool ok = false;
        const Sampler s = make_sampler(sq, tw, sigma, kind, quotient, &ok);
        if (!ok) continue;
        parts.push_back(run_limit(s, tw, cfg, std::string(seq_name(kind)) + "-" + side_name(sigma), &trail));
    }
    return publish(combine(parts, cfg), std::move(trail));
}

ContinuityVerdict numeric_g_continuity(const PointFn& f, const Derivator& g, double t, const Interval& dom,
                                       const ContinuityConfig& cfg) {
    require_point(dom, t);
    const wide tw(t);
    const wide ft = f(tw);
    const wide gt = g.value(tw);
    const wide jt = g.jump(tw);
    const wide a(dom.a), b(dom.b);
    const auto [lvl_inf, lvl_sup] = g.level_set(t, dom);
    const wide scale = std::max(wide(1), abs(ft));

    ContinuityVerdict out;
    for (int sigma : {-1, +1}) {
        const wide end = sigma > 0 ? b : a;
        SideVerdict verdict = SideVerdict::vacuous;
        wide sup = 0;
        if (end != tw) {
            for (int level = 1; level <= cfg.levels; ++level) {
                const wide delta = pow(wide(2), -4 * level);
                const auto inside = [&](const wide& s) {
                    return sigma > 0 ? g.value(s) - gt < delta : gt - g.value(s) < delta;
                };
                std::vector<wide> samples;
                if (sigma > 0 && jt >= delta) {
                    // Only the level set beyond t survives, and g(t+) > g(t) leaves none.
                } else {
                    wide r;
                    if (inside(end)) {
                        r = end;
                        samples.push_back(end);
                    } else {
                        wide in = tw, out_pt = end;
                        for (int it = 0; it < 160; ++it) {
                            const wide mid = (in + out_pt) / 2;
                            if (mid == in || mid == out_pt) break;
                            (inside(mid) ? in : out_pt) = mid;
                        }
                        r = in;
                        if (r != tw) samples.push_back(r);
                    }
                    const wide span = r - tw;
                    if (span != 0) {
                        for (int i = 1; i < cfg.grid; ++i) samples.push_back(tw + span * i / cfg.grid);
                        for (int j = 1; j <= cfg.geometric; ++j) samples.push_back(tw + span * pow(wide(2), -j));
                        const double lo = to_double(std::min(tw, r)), hi = to_double(std::max(tw, r));
                        if (lo < hi) {
                            const auto jl = g.jumps_in(lo, hi, cfg.jump_cap);
                            for (std::size_t i = 0; i < jl.jumps.size(); ++i) {
                                samples.push_back(wide(jl.jumps[i].position));
                                if (i + 1 < jl.jumps.size())
                                    samples.push_back((wide(jl.jumps[i].position) + wide(jl.jumps[i + 1].position)) / 2);
                            }
                        }
                    }
                }
                // Level set of g(t) on this side.
                const wide lv = sigma > 0 ? wide(lvl_sup) : wide(lvl_inf);
                if (lv != tw) {
                    if (sigma > 0) samples.push_back(lv);
                    for (int j = 1; j <= 8; ++j) samples.push_back(tw + (lv - tw) * (1 - pow(wide(2), -j)));
                    samples.push_back((tw + lv) / 2);
                }
                sup = 0;
                bool any = false;
                bool mate_differs = false;
                for (const auto& s : samples) {
                    if (s == tw || (sigma > 0 ? s < tw : s > tw) || s < a || s > b) continue;
                    if (!inside(s)) continue;
                    any = true;
                    const wide d = abs(f(s) - ft);
                    sup = std::max(sup, d);
                    // g(s) = g(t) puts s in every neighbourhood: any gap is a discontinuity
                    if (d > wide(cfg.level_tol) * scale && g.value(s) == gt) mate_differs = true;
                }
                if (!any) {
                    verdict = SideVerdict::vacuous;
                    sup = 0;
                    break;
                }
                verdict = (sup <= wide(cfg.tol) * scale && !mate_differs) ? SideVerdict::continuous
                                                                          : SideVerdict::discontinuous;
            }
        }
        if (sigma > 0) {
            out.right = verdict;
            out.right_sup = to_double(sup);
        } else {
            out.left = verdict;
            out.left_sup = to_double(sup);
        }
    }
    return out;
}

std::string format_trace(const LimitResult& r) {
    std::ostringstream os;
    os << std::left << std::setw(18) << "sequence" << std::setw(26) << "s - t" << "value\n";
    os << std::setprecision(17);
    for (const auto& e : r.evidence) os << std::setw(18) << e.sequence << std::setw(26) << e.offset << e.value << "\n";
    return os.str();
}

}  // namespace stieltjes
