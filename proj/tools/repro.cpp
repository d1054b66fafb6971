// SPDX-License-Identifier: MIT
#include "repro.hpp"

#include "embedded_fixtures.hpp"

#include "stieltjes/oracle.hpp"
#include "stieltjes/pointclass.hpp"
#include "stieltjes/spec_io.hpp"

#include <cmath>

namespace cli {

using namespace stieltjes;

namespace {

constexpr double limit_tol = 1e-6;

ojson runs(const std::vector<double>& grid, const std::vector<bool>& member) {
    ojson out = ojson::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!member[i]) continue;
        std::size_t j = i;
        while (j + 1 < grid.size() && member[j + 1]) ++j;
        out.push_back({grid[i], grid[j]});
        i = j;
    }
    return out;
}

ReproResult displayed_limit(const std::string& fixture, double expected) {
    const Derivator g = embedded_derivator(fixture);
    const Interval dom(-1, 2);
    const auto r = check_condition(g, 0.0, dom, Condition::delta_diff);
    ReproResult out;
    out.match = r.converged() && std::abs(r.value - expected) <= limit_tol;
    out.body = {{"repro", "delta-diff limit"},
                {"derivator", fixture},
                {"domain", {dom.a, dom.b}},
                {"t", 0.0},
                {"limit", limit_json(r, true)},
                {"expected", expected},
                {"tolerance", limit_tol},
                {"match", out.match}};
    return out;
}

ReproResult example_ag() {
    const Derivator g = embedded_derivator("g_A");
    const Interval dom(-2, 2.5);
    std::vector<double> grid;
    for (int i = 0; i <= 4500; ++i) grid.push_back((i - 2000) / 1000.0);
    std::vector<bool> ag(grid.size()), hg(grid.size());
    int mismatches = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const auto c = classify(g, t, dom);
        ag[i] = c.in_Ag;
        hg[i] = c.in_Hg;
        const bool want_ag = t == -1.0 || (t >= 0.0 && t <= 2.0);
        const bool want_hg = t > 0.0 && t <= 2.0;
        mismatches += (ag[i] != want_ag) + (hg[i] != want_hg);
    }
    ReproResult out;
    out.match = mismatches == 0;
    out.body = {{"repro", "A_g and H_g on a grid"},
                {"derivator", "g_A"},
                {"domain", {dom.a, dom.b}},
                {"grid_step", 1e-3},
                {"points", grid.size()},
                {"A_g_runs", runs(grid, ag)},
                {"H_g_runs", runs(grid, hg)},
                {"expected_A_g", "{-1} u [0, 2]"},
                {"expected_H_g", "(0, 2]"},
                {"mismatches", mismatches},
                {"match", out.match}};
    return out;
}

ReproResult star_counterexample() {
    const Derivator g = embedded_derivator("gtilde");
    const Interval dom(-1, 2);
    const PointFn f = flat_indicator(g);
    const PointFn fs = [&](const wide& t) { return f(g.star(t)); };
    const auto plain = numeric_g_derivative(f, g, 0.0, dom, 1);
    const auto lifted = numeric_g_derivative(fs, g, 0.0, dom, 1);
    ReproResult out;
    out.match = !plain.converged() && plain.verdict != Verdict::not_applicable && lifted.converged() &&
                std::abs(lifted.value) <= limit_tol;
    out.body = {{"repro", "indicator of C_g on (0, 1)"},
                {"derivator", "gtilde"},
                {"domain", {dom.a, dom.b}},
                {"t", 0.0},
                {"f_derivative", limit_json(plain, false)},
                {"f_star_derivative", limit_json(lifted, false)},
                {"expected", "f: no limit or divergence; f*: 0"},
                {"match", out.match}};
    return out;
}

}  // namespace

const std::vector<std::string>& repro_names() {
    static const std::vector<std::string> names{"remark-g", "remark-gtilde", "example-ag", "remark-star"};
    return names;
}

Derivator embedded_derivator(const std::string& name) {
    const auto& table = embedded_fixtures();
    const auto it = table.find(name);
    if (it == table.end()) throw Error(ErrorKind::invalid_argument, "no embedded fixture " + name);
    return parse_derivator(it->second).derivator;
}

PointFn flat_indicator(const Derivator& g) {
    return [&g](const wide& t) { return wide(t > 0 && t < 1 && g.local(t).in_Cg ? 1 : 0); };
}

ReproResult run_repro(const std::string& name) {
    if (name == "remark-g") return displayed_limit("paper_g", 0.0);
    if (name == "remark-gtilde") return displayed_limit("gtilde", 1.0);
    if (name == "example-ag") return example_ag();
    if (name == "remark-star") return star_counterexample();
    throw Error(ErrorKind::invalid_argument, "unknown repro " + name);
}

}  // namespace cli
