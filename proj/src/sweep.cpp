// SPDX-License-Identifier: MIT
#include "stieltjes/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace stieltjes {

std::vector<double> uniform_grid(const Interval& dom, int n) {
    if (n < 1) throw Error(ErrorKind::invalid_argument, "grid needs at least one step");
    std::vector<double> pts(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) pts[i] = i == n ? dom.b : dom.a + (dom.b - dom.a) * i / n;
    return pts;
}

namespace {

// Runs body(i) for i < n; exceptions inside the parallel region are
// rethrown after it, lowest index first.
template <typename Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<PointClassification> classify_grid(const Derivator& g, const Interval& dom,
                                               const std::vector<double>& points, Exec exec) {
    require_valid_domain(g, dom, DomainMode::derivative);
    std::vector<PointClassification> out(points.size());
    for_each_index(points.size(), exec, [&](std::size_t i) { out[i] = classify_unchecked(g, points[i], dom); });
    return out;
}

std::vector<ContinuityVerdict> continuity_sweep(const PointFn& f, const Derivator& g, const Interval& dom,
                                                const std::vector<double>& points, Exec exec,
                                                const ContinuityConfig& cfg) {
    std::vector<ContinuityVerdict> out(points.size());
    for_each_index(points.size(), exec,
                   [&](std::size_t i) { out[i] = numeric_g_continuity(f, g, points[i], dom, cfg); });
    return out;
}

Expr random_expression(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 4);
    std::uniform_int_distribution<int> quarter(-8, 8);
    switch (pick(rng)) {
        case 0: return Expr::g();
        case 1: return Expr::delta();
        case 2: return Expr::chi();
        case 3: return Expr::q();
        case 4: return Expr::constant(quarter(rng) / 4.0);
        case 5: return Expr::sum(random_expression(rng, depth - 1), random_expression(rng, depth - 1));
        case 6: return Expr::scale(quarter(rng) / 4.0, random_expression(rng, depth - 1));
        case 7: return Expr::product(random_expression(rng, depth - 1), random_expression(rng, depth - 1));
        case 8: {
            const Expr d = random_expression(rng, depth - 1);
            return Expr::quotient(random_expression(rng, depth - 1),
                                  Expr::sum(Expr::constant(1), Expr::product(d, d)));
        }
        default: return Expr::star(random_expression(rng, depth - 1));
    }
}

Derivator random_derivator(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nseg(1, 4);
    std::uniform_int_distribution<int> slope_pick(0, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    const double slopes[] = {0.0, 0.5, 1.0, 2.0};
    // breakpoints and atoms stay off the family ranges (0, 1] and [1.3, 1.5)
    const double breaks[] = {-0.75, 1.25, 1.5, 1.875};
    const double atom_at[] = {-0.5, 1.125, 1.75};

    std::vector<Segment> segs{{0.0, slopes[slope_pick(rng)]}};
    std::vector<double> bp(std::begin(breaks), std::end(breaks));
    std::shuffle(bp.begin(), bp.end(), rng);
    bp.resize(static_cast<std::size_t>(nseg(rng) - 1));
    for (double b : bp) segs.push_back({b, slopes[slope_pick(rng)]});
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.from < b.from; });

    std::vector<Atom> atoms;
    for (double a : atom_at)
        if (coin(rng)) atoms.push_back({a, 0.25 * (1 + coin(rng))});

    const auto mass = [&] {
        MassRule m;
        m.s = 1.0;
        if (coin(rng)) {
            m.form = MassRule::Form::geometric;
            m.q = 0.5;
        } else {
            m.form = MassRule::Form::power;
            m.p = 2.0;
        }
        return m;
    };
    std::vector<JumpFamily> fams;
    if (coin(rng)) fams.emplace_back(0.0, Side::right_of, PositionRule{1.0, coin(rng) ? 1.0 : 2.0}, mass(), 1 + coin(rng));
    if (coin(rng)) fams.emplace_back(1.5, Side::left_of, PositionRule{0.2, 1.0}, mass(), 1);
    return Derivator("random", std::move(segs), std::move(atoms), std::move(fams));
}

std::vector<Derivator> random_valid_derivators(std::uint64_t seed, int count, const Interval& dom) {
    std::mt19937_64 rng(seed);
    std::vector<Derivator> out;
    while (static_cast<int>(out.size()) < count) {
        Derivator g = random_derivator(rng);
        if (g.validate_domain(dom, DomainMode::derivative).empty()) out.push_back(std::move(g));
    }
    return out;
}

std::vector<double> probe_points(const Derivator& g, const Interval& dom, std::size_t count, std::uint64_t seed) {
    std::set<double> pts;
    const auto add = [&](double x) {
        if (dom.contains(x)) pts.insert(x);
    };
    for (const auto& s : g.segments()) add(s.from);
    for (const auto& a : g.atoms()) add(a.at);
    for (const auto& f : g.families()) {
        add(f.accumulation());
        for (std::int64_t k = f.n_start(); k < f.n_start() + 5; ++k) {
            add(f.position<double>(k));
            add(0.5 * (f.position<double>(k) + f.position<double>(k + 1)));
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(dom.a, dom.b);
    std::vector<double> out(pts.begin(), pts.end());
    while (out.size() < count) out.push_back(u(rng));
    out.resize(std::min(out.size(), std::max(count, pts.size())));
    return out;
}

const char* to_string(Outcome o) noexcept {
    switch (o) {
        case Outcome::agree: return "agree";
        case Outcome::disagree: return "disagree";
        case Outcome::oracle_no_limit: return "oracle-no-limit";
        case Outcome::inconclusive: return "inconclusive";
        case Outcome::skipped: return "skipped";
    }
    return "?";
}

VerifyReport verify_campaign(const Derivator& g, const Interval& dom, std::size_t samples, std::uint64_t seed,
                             Exec exec, int max_order) {
    require_valid_domain(g, dom, DomainMode::derivative);
    const auto pool = probe_points(g, dom, 64, seed);
    VerifyReport rep;
    rep.cases.resize(samples);
    for_each_index(samples, exec, [&](std::size_t i) {
        std::mt19937_64 rng(seed + i);
        VerifyCase& c = rep.cases[i];
        const Expr e = random_expression(rng, 2);
        c.expression = e.to_string();
        c.t = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        c.order = std::uniform_int_distribution<int>(1, std::max(1, max_order))(rng);
        const auto d = g_derive(e, c.order);
        c.validity = d.validity.evaluate(g, c.t, dom);
        if (c.validity != Truth::holds) return;
        try {
            c.symbolic = eval_expr(d.derivative, g, c.t, dom);
            c.numeric = numeric_g_derivative(as_function(e, g), g, c.t, dom, c.order);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::evaluation) throw;
            return;
        }
        if (c.numeric.inconclusive) {
            c.outcome = Outcome::inconclusive;
        } else if (!c.numeric.converged()) {
            c.outcome = Outcome::oracle_no_limit;
        } else {
            const double tol = 1e-5 * std::max(1.0, std::abs(c.symbolic));
            c.outcome = std::abs(c.numeric.value - c.symbolic) <= tol ? Outcome::agree : Outcome::disagree;
        }
    });
    for (const auto& c : rep.cases) {
        switch (c.outcome) {
            case Outcome::agree: ++rep.agree; break;
            case Outcome::disagree: ++rep.disagree; break;
            case Outcome::oracle_no_limit: ++rep.oracle_no_limit; break;
            case Outcome::inconclusive: ++rep.inconclusive; break;
            case Outcome::skipped: ++rep.skipped; break;
        }
    }
    return rep;
}

}  // namespace stieltjes
