// SPDX-License-Identifier: MIT
// stieltjes: command-line front end over the library.
#include "report.hpp"
#include "repro.hpp"

#include "stieltjes/calculus.hpp"
#include "stieltjes/oracle.hpp"
#include "stieltjes/pointclass.hpp"
#include "stieltjes/regularity.hpp"
#include "stieltjes/spec_io.hpp"
#include "stieltjes/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>

using namespace stieltjes;
using cli::ojson;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_domain = 2;
constexpr int exit_verify = 3;

constexpr const char* syntax_help =
    "Expressions use a prefix syntax: g, dg, chi, q, star(e), c:<num> (or a bare number),\n"
    "(+ e1 e2 ...), (* e1 e2 ...), (/ e1 e2), (scale:<num> e), (star e).\n"
    "A name from the derivator file's \"expressions\" table may be given instead.";

struct Input {
    std::string file;
    std::optional<double> a, b;
};

void add_input(CLI::App* sub, Input& in, bool need_file = true) {
    auto* opt = sub->add_option("-g,--derivator", in.file, "derivator JSON file (the .json suffix may be omitted)");
    if (need_file) opt->required();
    sub->add_option("-a", in.a, "left end of the domain (default: the file's domain)");
    sub->add_option("-b", in.b, "right end of the domain (default: the file's domain)");
}

Interval resolve_domain(const DerivatorFile& f, const Input& in) {
    const double a = in.a ? *in.a : f.domain ? f.domain->a : NAN;
    const double b = in.b ? *in.b : f.domain ? f.domain->b : NAN;
    if (std::isnan(a) || std::isnan(b))
        throw Error(ErrorKind::invalid_interval, "no domain: pass -a and -b or add \"domain\" to the file");
    return Interval(a, b);
}

Expr resolve_expr(const DerivatorFile& f, const std::string& text) {
    const auto it = f.expressions.find(text);
    return parse_expr(it == f.expressions.end() ? text : it->second);
}

ojson describe_derivator(const Derivator& g) {
    ojson segs = ojson::array();
    for (const auto& s : g.segments()) segs.push_back({{"from", s.from}, {"slope", s.slope}});
    ojson atoms = ojson::array();
    for (const auto& a : g.atoms()) atoms.push_back({{"at", a.at}, {"mass", a.mass}});
    ojson fams = ojson::array();
    ojson dg = ojson::array();
    for (const auto& a : g.atoms()) dg.push_back("atom " + cli::num(a.at));
    for (const auto& f : g.families()) {
        const auto& pr = f.position_rule();
        const auto& mr = f.mass_rule();
        const std::string sign = f.side() == Side::right_of ? " + " : " - ";
        const std::string pos =
            cli::num(f.accumulation()) + sign + cli::num(pr.c) + "/n^" + cli::num(pr.p);
        const std::string mass = mr.form == MassRule::Form::geometric
                                     ? cli::num(mr.s) + " * " + cli::num(mr.q) + "^n"
                                     : cli::num(mr.s) + "/n^" + cli::num(mr.p);
        fams.push_back({{"accumulation", f.accumulation()},
                        {"side", f.side() == Side::right_of ? "right-of" : "left-of"},
                        {"position", pos},
                        {"mass", mass},
                        {"n_start", f.n_start()}});
        dg.push_back(pos + ", n >= " + std::to_string(f.n_start()));
    }
    ojson flat = ojson::array();
    const auto& ss = g.segments();
    for (std::size_t i = 0; i < ss.size(); ++i) {
        if (ss[i].slope != 0.0) continue;
        const std::string hi = i + 1 < ss.size() ? cli::num(ss[i + 1].from) : "inf";
        flat.push_back("[" + cli::num(ss[i].from) + ", " + hi + ")");
    }
    return {{"name", g.name()},
            {"segments", segs},
            {"atoms", atoms},
            {"families", fams},
            {"D_g", dg},
            {"C_g", {{"flat_stretches", flat},
                     {"rule", "C_g is the interior of the flat stretches, cut at the points of D_g"}}}};
}

bool is_identity_like(const Derivator& g) {
    return g.atoms().empty() && g.families().empty() && g.segments().size() == 1 && g.segments()[0].slope == 1.0;
}

std::string truth_at(const Validity& v, const Derivator& g, double t, const Interval& dom) {
    return to_string(v.evaluate(g, t, dom));
}

// ---------------------------------------------------------------------------

int cmd_show(const Input& in, bool json) {
    const auto f = load_derivator(in.file);
    ojson body = describe_derivator(f.derivator);
    if (f.domain) body["domain"] = {f.domain->a, f.domain->b};
    if (!f.expressions.empty()) {
        ojson ex = ojson::object();
        for (const auto& [k, v] : f.expressions) ex[k] = v;
        body["expressions"] = ex;
    }
    cli::emit(body, json);
    return exit_ok;
}

int cmd_classify(const Input& in, double t, bool json) {
    const auto f = load_derivator(in.file);
    const Interval dom = resolve_domain(f, in);
    const auto c = classify(f.derivator, t, dom);
    cli::emit({{"derivator", f.derivator.name()}, {"domain", {dom.a, dom.b}}, {"t", t},
               {"classification", cli::class_json(c)}},
              json);
    return exit_ok;
}

int cmd_measure(const Input& in, double c, double d, bool json) {
    const auto f = load_derivator(in.file);
    cli::emit({{"derivator", f.derivator.name()}, {"interval", {c, d}}, {"measure", f.derivator.measure(c, d)}},
              json);
    return exit_ok;
}

int cmd_derive(const Input& in, const std::string& text, int order, std::optional<double> t, bool json) {
    const auto f = load_derivator(in.file);
    const Expr e = resolve_expr(f, text);
    const auto d = g_derive(e, order);
    ojson body{{"derivator", f.derivator.name()},
               {"expression", e.to_string()},
               {"order", order},
               {"derivative", d.derivative.to_string()},
               {"validity", d.validity.describe()},
               {"rules", d.notes}};
    if (is_identity_like(f.derivator))
        body["note"] = "g has slope 1 and no jumps: this is the classical derivative";
    if (t) {
        const Interval dom = resolve_domain(f, in);
        body["t"] = *t;
        body["validity_at_t"] = truth_at(d.validity, f.derivator, *t, dom);
        try {
            body["value"] = eval_expr(d.derivative, f.derivator, *t, dom);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::evaluation) throw;
            body["value"] = "undefined";
        }
    }
    cli::emit(body, json);
    return exit_ok;
}

int cmd_nderive(const Input& in, const std::string& text, int order, double t, bool trace, bool json) {
    const auto f = load_derivator(in.file);
    const Interval dom = resolve_domain(f, in);
    const Expr e = resolve_expr(f, text);
    const auto r = numeric_g_derivative(as_function(e, f.derivator), f.derivator, t, dom, order);
    cli::emit({{"derivator", f.derivator.name()},
               {"domain", {dom.a, dom.b}},
               {"expression", e.to_string()},
               {"order", order},
               {"t", t},
               {"oracle", cli::limit_json(r, trace && json)}},
              json);
    if (trace && !json) std::cout << "trace:\n" << format_trace(r);
    return exit_ok;
}

struct CheckArgs {
    Input in;
    std::optional<double> t;
    std::string expr;
    std::string expr2;
    int samples = 100;
};

int check_delta_diff(const CheckArgs& ca, bool json) {
    const auto f = load_derivator(ca.in.file);
    const Interval dom = resolve_domain(f, ca.in);
    if (!ca.t) throw CLI::RequiredError("-t");
    std::optional<PointFn> fn;
    if (!ca.expr.empty()) fn = as_function(resolve_expr(f, ca.expr), f.derivator);
    const auto r = check_condition(f.derivator, *ca.t, dom, Condition::delta_diff, fn ? &*fn : nullptr);
    cli::emit({{"check", "delta-diff"},
               {"derivator", f.derivator.name()},
               {"domain", {dom.a, dom.b}},
               {"t", *ca.t},
               {"f", ca.expr.empty() ? "1" : ca.expr},
               {"star_t", f.derivator.star(*ca.t, dom)},
               {"limit", cli::limit_json(r, false)}},
              json);
    return exit_ok;
}

int check_star(const CheckArgs& ca, bool json) {
    const auto f = load_derivator(ca.in.file);
    const Interval dom = resolve_domain(f, ca.in);
    if (!ca.t) throw CLI::RequiredError("-t");
    if (ca.expr.empty()) throw CLI::RequiredError("-e");
    const Expr e = resolve_expr(f, ca.expr);
    const PointFn fn = as_function(e, f.derivator);
    const PointFn fs = as_function(Expr::star(e), f.derivator);
    const auto plain = check_condition(f.derivator, *ca.t, dom, Condition::star_lift, &fn);
    const auto lifted = check_condition(f.derivator, *ca.t, dom, Condition::star_lift, &fs);
    const auto rule = g_derive(Expr::star(e));
    cli::emit({{"check", "star"},
               {"derivator", f.derivator.name()},
               {"domain", {dom.a, dom.b}},
               {"t", *ca.t},
               {"expression", e.to_string()},
               {"star_t", f.derivator.star(*ca.t, dom)},
               {"limit_f", cli::limit_json(plain, false)},
               {"limit_f_star", cli::limit_json(lifted, false)},
               {"star_rule_validity", truth_at(rule.validity, f.derivator, *ca.t, dom)}},
              json);
    return exit_ok;
}

int check_bc1(const CheckArgs& ca, bool json) {
    const auto f = load_derivator(ca.in.file);
    const Interval dom = resolve_domain(f, ca.in);
    const std::string t1 = ca.expr.empty() ? "g" : ca.expr;
    const std::string t2 = ca.expr2.empty() ? t1 : ca.expr2;
    const Expr e1 = resolve_expr(f, t1), e2 = resolve_expr(f, t2);
    const Derivator& g = f.derivator;
    const auto r = bc1_product_check(as_function(g_derive(e1).derivative, g), as_function(g_derive(e2).derivative, g),
                                     g, dom);
    // numeric g-continuity of (f1 f2)' at each witness
    const Expr prod_d = g_derive(Expr::product(e1, e2)).derivative;
    std::vector<double> jumps, resolved;
    for (double w : r.witnesses)
        (numeric_g_continuity(as_function(prod_d, g), g, w, dom).continuous() ? resolved : jumps).push_back(w);
    const ojson cont{{"discontinuous", jumps}, {"continuous_within_tol", resolved}};
    cli::emit({{"check", "bc1"},
               {"derivator", g.name()},
               {"domain", {dom.a, dom.b}},
               {"f1", e1.to_string()},
               {"f2", e2.to_string()},
               {"holds", r.holds},
               {"witnesses", r.witnesses},
               {"exceptional", r.exceptional},
               {"truncated", r.truncated},
               {"product_derivative", prod_d.to_string()},
               {"continuity_at_witnesses", cont}},
              json);
    return exit_ok;
}

int check_continuity(const CheckArgs& ca, bool json) {
    const auto f = load_derivator(ca.in.file);
    const Interval dom = resolve_domain(f, ca.in);
    if (ca.expr.empty()) throw CLI::RequiredError("-e");
    const Expr e = resolve_expr(f, ca.expr);
    const Derivator& g = f.derivator;
    const std::vector<double> pts = ca.t ? std::vector<double>{*ca.t} : uniform_grid(dom, std::max(1, ca.samples - 1));
    const auto verdicts = continuity_sweep(as_function(e, g), g, dom, pts, Exec::parallel);

    // dg and star(dg) also have a closed-form class to compare with
    std::optional<bool> starred;
    if (e.kind() == ExprKind::delta_g) starred = false;
    if (e.kind() == ExprKind::star && e.children()[0].kind() == ExprKind::delta_g) starred = true;

    ojson witnesses = ojson::array();
    int continuous = 0, disagreements = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool ok = verdicts[i].continuous();
        continuous += ok;
        if (!ok) witnesses.push_back({{"t", pts[i]}, {"left", to_string(verdicts[i].left)},
                                      {"right", to_string(verdicts[i].right)}});
        if (starred) {
            const auto cls = delta_continuity_class(g, pts[i], dom, *starred);
            disagreements += (cls == ContinuityClass::continuous) != ok;
        }
    }
    ojson body{{"check", "continuity"},
               {"derivator", g.name()},
               {"domain", {dom.a, dom.b}},
               {"expression", e.to_string()},
               {"points", pts.size()},
               {"continuous", continuous},
               {"discontinuous", witnesses}};
    if (starred) body["closed_form_disagreements"] = disagreements;
    cli::emit(body, json);
    return exit_ok;
}

ojson verify_json(const VerifyReport& r) {
    ojson bad = ojson::array();
    for (const auto& c : r.cases) {
        if (c.outcome != Outcome::disagree && c.outcome != Outcome::oracle_no_limit) continue;
        bad.push_back({{"expression", c.expression}, {"t", c.t}, {"order", c.order},
                       {"symbolic", c.symbolic}, {"oracle", cli::limit_json(c.numeric, false)},
                       {"outcome", to_string(c.outcome)}});
    }
    return {{"agree", r.agree}, {"disagree", r.disagree}, {"oracle_no_limit", r.oracle_no_limit},
            {"inconclusive", r.inconclusive}, {"skipped", r.skipped}, {"failures", bad}};
}

int cmd_verify(const Input& in, int samples, std::uint64_t seed, int derivators, int order, bool json) {
    if (samples < 1 || derivators < 1) throw CLI::ValidationError("--samples/--derivators", "must be positive");
    ojson runs = ojson::array();
    bool ok = true;
    int total_agree = 0, total_bad = 0;
    const auto run = [&](const Derivator& g, const Interval& dom, ojson head) {
        const auto r = verify_campaign(g, dom, static_cast<std::size_t>(samples), seed, Exec::parallel, order);
        ok = ok && r.ok();
        total_agree += r.agree;
        total_bad += r.disagree + r.oracle_no_limit;
        head["domain"] = {dom.a, dom.b};
        const ojson counts = verify_json(r);
        for (auto it = counts.begin(); it != counts.end(); ++it) head[it.key()] = it.value();
        runs.push_back(head);
    };
    if (!in.file.empty()) {
        const auto f = load_derivator(in.file);
        run(f.derivator, resolve_domain(f, in), {{"derivator", f.derivator.name()}});
    } else {
        // generated derivators on [-1, 2]; ones whose domain end points are
        // structurally invalid are redrawn
        const Interval dom(in.a.value_or(-1.0), in.b.value_or(2.0));
        int made = 0;
        for (const auto& g : random_valid_derivators(seed, derivators, dom)) {
            ojson head = describe_derivator(g);
            head.erase("D_g");
            head.erase("C_g");
            head["name"] = "random-" + std::to_string(++made);
            run(g, dom, head);
        }
    }
    cli::emit({{"verify", {{"samples", samples}, {"seed", seed}, {"max_order", order}}},
               {"runs", runs},
               {"total_agree", total_agree},
               {"total_failures", total_bad},
               {"ok", ok}},
              json);
    return ok ? exit_ok : exit_verify;
}

int cmd_repro(const std::string& name, bool json) {
    const auto r = cli::run_repro(name);
    cli::emit(r.body, json);
    return r.match ? exit_ok : exit_verify;
}

int exit_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::invalid_interval:
        case ErrorKind::invalid_domain:
        case ErrorKind::out_of_domain: return exit_domain;
        default: return exit_usage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stieltjes derivatives: derivators, point classes, closed forms and numeric checks"};
    app.footer(syntax_help);
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    Input in;
    double t = 0, c = 0, d = 0;
    std::optional<double> opt_t;
    std::string expr;
    int order = 1;
    bool trace = false;

    auto* show = app.add_subcommand("show", "structural summary of a derivator");
    add_input(show, in);

    auto* cls = app.add_subcommand("classify", "point classification");
    add_input(cls, in);
    cls->add_option("-t", t, "point")->required();

    auto* meas = app.add_subcommand("measure", "mu_g([c, d))");
    add_input(meas, in);
    meas->add_option("-c", c)->required();
    meas->add_option("-d", d)->required();

    auto* der = app.add_subcommand("derive", "closed-form g-derivative");
    add_input(der, in);
    der->add_option("-e,--expr", expr, "expression or name")->required();
    der->add_option("-n,--order", order, "order")->check(CLI::Range(1, 16));
    der->add_option("-t", opt_t, "evaluate at this point");

    auto* nder = app.add_subcommand("nderive", "numeric g-derivative from the limit definition");
    add_input(nder, in);
    nder->add_option("-e,--expr", expr, "expression or name")->required();
    nder->add_option("-n,--order", order, "order")->check(CLI::Range(1, 3));
    nder->add_option("-t", t, "point")->required();
    nder->add_flag("--trace", trace, "print the evidence sequence");

    CheckArgs ca;
    auto* chk = app.add_subcommand("check", "side conditions and regularity checks");
    add_input(chk, ca.in);
    chk->add_option("-t", ca.t, "point");
    chk->add_option("-e,--expr", ca.expr, "expression (f, or f1 for bc1)");
    chk->add_option("--e2", ca.expr2, "second factor for bc1 (default: same as -e)");
    chk->add_option("--samples", ca.samples, "grid size for continuity without -t")->check(CLI::Range(1, 100000));
    chk->require_subcommand(1);
    auto* c_dd = chk->add_subcommand("delta-diff", "lim f(s) dg(s) / (g(s) - g(t)) over s in D_g");
    auto* c_star = chk->add_subcommand("star", "plain and starred limits behind the star rule");
    auto* c_bc1 = chk->add_subcommand("bc1", "product condition f1' f2' = 0 on the exceptional set");
    auto* c_cont = chk->add_subcommand("continuity", "numeric g-continuity of an expression");

    int samples = 100, derivators = 5, vorder = 2;
    std::uint64_t seed = 42;
    auto* ver = app.add_subcommand("verify", "randomized symbolic-vs-oracle campaign");
    add_input(ver, in, false);
    ver->add_option("--samples", samples, "cases per derivator");
    ver->add_option("--seed", seed, "seed");
    ver->add_option("--derivators", derivators, "generated derivators when -g is omitted");
    ver->add_option("--order", vorder, "highest derivative order")->check(CLI::Range(1, 3));

    std::string repro_name;
    auto* rep = app.add_subcommand("repro", "worked computations on the bundled fixtures");
    rep->add_option("name", repro_name, "remark-g | remark-gtilde | example-ag | remark-star")
        ->required()
        ->check(CLI::IsMember(cli::repro_names()));

    try {
        app.parse(argc, argv);
        if (*show) return cmd_show(in, json);
        if (*cls) return cmd_classify(in, t, json);
        if (*meas) return cmd_measure(in, c, d, json);
        if (*der) return cmd_derive(in, expr, order, opt_t, json);
        if (*nder) return cmd_nderive(in, expr, order, t, trace, json);
        if (*chk) {
            if (*c_dd) return check_delta_diff(ca, json);
            if (*c_star) return check_star(ca, json);
            if (*c_bc1) return check_bc1(ca, json);
            if (*c_cont) return check_continuity(ca, json);
        }
        if (*ver) return cmd_verify(in, samples, seed, derivators, vorder, json);
        if (*rep) return cmd_repro(repro_name, json);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
