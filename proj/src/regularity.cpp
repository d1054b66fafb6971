// SPDX-License-Identifier: MIT
#include "stieltjes/regularity.hpp"
#include "stieltjes/pointclass.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace stieltjes {

const char* to_string(ContinuityClass c) noexcept {
    return c == ContinuityClass::continuous ? "continuous" : "discontinuous";
}

const char* to_string(Subject s) noexcept {
    switch (s) {
        case Subject::delta_g: return "delta_g";
        case Subject::delta_g_star: return "delta_g_star";
        case Subject::user_function: return "user-function";
    }
    return "?";
}

namespace {

void require_point(const Interval& dom, double t) {
    if (!dom.contains(t)) {
        std::ostringstream os;
        os << t << " not in [" << dom.a << ", " << dom.b << "]";
        throw Error(ErrorKind::out_of_domain, os.str());
    }
}

// Structural points of g inside dom: breakpoints, atoms, accumulation points,
// the first `cap` positions of each family and the gaps between them.
std::vector<double> structural_points(const Derivator& g, const Interval& dom, std::size_t cap, bool* truncated) {
    std::set<double> pts{dom.a, dom.b};
    const auto add = [&](double x) {
        if (dom.contains(x)) pts.insert(x);
    };
    for (const auto& s : g.segments()) add(s.from);
    for (const auto& a : g.atoms()) add(a.at);
    for (const auto& f : g.families()) {
        add(f.accumulation());
        double prev = std::nan("");
        for (std::size_t i = 0; i < cap; ++i) {
            const double p = f.position<double>(f.n_start() + static_cast<std::int64_t>(i));
            add(p);
            if (!std::isnan(prev)) add(0.5 * (prev + p));
            prev = p;
        }
        if (truncated) *truncated = true;
    }
    return {pts.begin(), pts.end()};
}

bool same_level(const Derivator& g, double t, double s) { return g.value(wide(t)) == g.value(wide(s)); }

}  // namespace

ContinuityClass delta_continuity_class(const Derivator& g, double t, const Interval& dom, bool starred) {
    require_point(dom, t);
    if (!starred) {
        return classify_unchecked(g, t, dom).in_Ag ? ContinuityClass::discontinuous : ContinuityClass::continuous;
    }
    require_valid_domain(g, dom, DomainMode::bc1);
    if (t <= g.star(dom.a, dom)) return ContinuityClass::continuous;
    const auto c = classify_unchecked(g, t, dom);
    return (!c.in_Ag || c.in_Hg) ? ContinuityClass::continuous : ContinuityClass::discontinuous;
}

LevelConstancyResult level_constancy_check(const PointFn& f, const Derivator& g, const Interval& dom,
                                           const std::vector<double>& samples, double tol) {
    std::vector<double> pts = samples;
    if (pts.empty()) {
        pts = structural_points(g, dom, 64, nullptr);
        const int grid = 512;
        for (int i = 0; i <= grid; ++i) pts.push_back(dom.a + (dom.b - dom.a) * i / grid);
    }
    LevelConstancyResult out;
    std::set<std::pair<double, double>> seen;
    for (double t : pts) {
        require_point(dom, t);
        const auto [lo, hi] = g.level_set(t, dom);
        if (lo == hi) continue;
        if (seen.insert({lo, hi}).second) ++out.level_sets_checked;
        const wide ft = f(wide(t));
        const wide scale = std::max(wide(1), abs(ft));
        std::vector<double> mates;
        if (same_level(g, t, hi)) mates.push_back(hi);
        if (same_level(g, t, lo)) mates.push_back(lo);
        for (double w : {0.5, 0.25, 0.75}) mates.push_back(lo + w * (hi - lo));
        for (double s : mates) {
            if (s == t || !same_level(g, t, s)) continue;
            if (abs(f(wide(s)) - ft) > wide(tol) * scale) {
                out.pass = false;
                out.witness = {t, s};
                return out;
            }
        }
    }
    return out;
}

BC1Result bc1_product_check(const PointFn& f1_derivative, const PointFn& f2_derivative, const Derivator& g,
                            const Interval& dom, std::size_t family_cap, double tol) {
    require_valid_domain(g, dom, DomainMode::bc1);
    const double as = g.star(dom.a, dom);
    BC1Result out;
    std::set<double> cand;
    for (double p : structural_points(g, dom, family_cap, &out.truncated)) {
        cand.insert(p);
        // stretches ending at p belong to A_g as a whole; probe their closure
        const auto [lo, hi] = g.level_set(p, dom);
        if (lo < hi) {
            cand.insert(lo);
            cand.insert(0.5 * (lo + hi));
        }
    }
    for (double t : cand) {
        if (!(t > as && t < dom.b)) continue;
        const auto c = classify_unchecked(g, t, dom);
        if (!c.in_Ag || c.in_Hg) continue;
        out.exceptional.push_back(t);
        const wide p = f1_derivative(wide(t)) * f2_derivative(wide(t));
        if (abs(p) > wide(tol)) out.witnesses.push_back(t);
    }
    out.holds = out.witnesses.empty();
    return out;
}

RegularityReport delta_regularity_report(const Derivator& g, const Interval& dom, bool starred,
                                         const std::vector<double>& samples) {
    RegularityReport r;
    r.subject = starred ? Subject::delta_g_star : Subject::delta_g;
    for (double t : samples) {
        const auto v = delta_continuity_class(g, t, dom, starred);
        r.points.push_back({t, v});
        if (v == ContinuityClass::discontinuous) r.witnesses.push_back(t);
    }
    return r;
}

RegularityReport continuity_report(const PointFn& f, const Derivator& g, const Interval& dom,
                                   const std::vector<double>& samples, const ContinuityConfig& cfg) {
    RegularityReport r;
    r.subject = Subject::user_function;
    for (double t : samples) {
        const bool ok = numeric_g_continuity(f, g, t, dom, cfg).continuous();
        r.points.push_back({t, ok ? ContinuityClass::continuous : ContinuityClass::discontinuous});
        if (!ok) r.witnesses.push_back(t);
    }
    return r;
}

}  // namespace stieltjes
