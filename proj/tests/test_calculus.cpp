// SPDX-License-Identifier: MIT
#include "fixtures.hpp"
#include "stieltjes/calculus.hpp"
#include "stieltjes/pointclass.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace stieltjes;
using testing::fixture;

namespace {

double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// random expression over g; quotients only divide by 1 + e*e
Expr random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 4);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    switch (pick(rng)) {
        case 0: return Expr::g();
        case 1: return Expr::delta();
        case 2: return Expr::chi();
        case 3: return Expr::q();
        case 4: return Expr::constant(std::round(coef(rng) * 4) / 4);
        case 5: return Expr::sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 6: return Expr::scale(std::round(coef(rng) * 4) / 4, random_expr(rng, depth - 1));
        case 7: return Expr::product(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 8: {
            const Expr d = random_expr(rng, depth - 1);
            return Expr::quotient(random_expr(rng, depth - 1), Expr::sum(Expr::constant(1), Expr::product(d, d)));
        }
        default: return Expr::star(random_expr(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("expression evaluation examples") {
    const Interval dom(-1, 2);
    CHECK(eval_expr(parse_expr("star(dg)"), fixture("gtilde"), 0.3, dom) == doctest::Approx(0.125));
    CHECK(eval_expr(parse_expr("q"), fixture("paper_g"), 0.5, dom) == doctest::Approx(4.0));
    CHECK(eval_expr(parse_expr("chi"), fixture("paper_g"), 0.3, dom) == 0.0);
    CHECK(eval_expr(parse_expr("(* g g)"), fixture("paper_g"), 0.5, dom) ==
          doctest::Approx(testing::paper_g_ref(0.5) * testing::paper_g_ref(0.5)));
    CHECK_THROWS_AS((void)eval_expr(parse_expr("(/ g dg)"), fixture("paper_g"), 0.3, dom), Error);
    CHECK_THROWS_AS((void)eval_expr(parse_expr("g"), fixture("paper_g"), 3.0, dom), Error);
}

TEST_CASE("parser and printer") {
    for (const char* s : {"g", "star(dg)", "(+ g (* chi q))", "(/ g (scale:2 g))", "(* g g g)", "c:0.25"}) {
        const Expr e = parse_expr(s);
        CHECK(parse_expr(e.to_string()).to_string() == e.to_string());
    }
    CHECK(parse_expr("(+ g c:0)").to_string() == "g");
    CHECK(parse_expr("(* star(q) star(dg))").to_string() == "star(chi)");
    CHECK(parse_expr("star(star(g))").to_string() == "star(g)");
    CHECK(parse_expr("(scale:2 (scale:3 g))").to_string() == "(scale:6 g)");
    CHECK(parse_expr("c:1/4").number() == 0.25);
    for (const char* bad : {"", "(", "(+ g", "h", "(% g g)", "g g", "c:x", "(/ g)"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS((void)parse_expr(bad), Error);
    }
    try {
        (void)parse_expr("(/ g g g)");
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_arity);
    }
}

TEST_CASE("symbolic derivative examples") {
    const Interval dom(-1, 2);
    const auto g = fixture("paper_g");
    const auto gt = fixture("gtilde");

    auto d = g_derive(parse_expr("(* g g)"));
    CHECK(eval_expr(d.derivative, g, 0.5, dom) == doctest::Approx(1.75));
    CHECK(d.validity.evaluate(g, 0.5, dom) == Truth::holds);

    d = g_derive(Expr::delta());
    CHECK(eval_expr(d.derivative, g, 0.5, dom) == doctest::Approx(-1.0));
    CHECK(d.validity.evaluate(g, 0.5, dom) == Truth::holds);
    CHECK(d.validity.evaluate(g, 0.0, dom) == Truth::holds);   // delta-diff limit is 0
    CHECK(d.validity.evaluate(gt, 0.0, dom) == Truth::fails);  // limit is 1

    d = g_derive(Expr::chi());
    CHECK(d.validity.evaluate(gt, 0.0, dom) == Truth::fails);
    CHECK(d.validity.evaluate(g, 0.5, dom) == Truth::holds);

    // third derivative of g^2 at a jump point: chi* = 1, Q* = 4
    auto d3 = g_derive(parse_expr("(* g g)"), 3);
    CHECK(eval_expr(d3.derivative, g, 0.5, dom) == doctest::Approx(4.0));
    auto d2 = g_derive(parse_expr("(* g g)"), 2);
    CHECK(eval_expr(d2.derivative, g, 0.5, dom) == doctest::Approx(1.0));
    CHECK(eval_expr(d2.derivative, g, 0.7, dom) == doctest::Approx(2.0));
    CHECK_THROWS_AS((void)g_derive(Expr::g(), 0), Error);
}

TEST_CASE("closed-form kernels") {
    const double gh = testing::paper_g_ref(0.5);
    CHECK(product_rule_n({{gh, 1}, {gh, 1}}, 0.25) == doctest::Approx(1.75));
    CHECK(product_rule_n({{1, 0}, {2, 0}, {3, 0}}, 0.5) == 0.0);
    CHECK(product_rule_n({{1, 1}, {1, 1}, {1, 1}}, 1.0) == doctest::Approx(7.0));
    CHECK_THROWS_AS((void)product_rule_n({{1, 1}}, 1.0), Error);

    CHECK(product_rule_2({gh, 1, 0}, {gh, 1, 0}, 0.25, 1) == doctest::Approx(1.0));
    CHECK(product_rule_2({0.7, 1, 0}, {0.7, 1, 0}, 0.0, 0) == doctest::Approx(2.0));
    CHECK(product_rule_3({gh, 1, 0, 0}, {gh, 1, 0, 0}, 0.25, 1, 4.0) == doctest::Approx(4.0));

    CHECK(quotient_rule({2, 1}, {1, 0}, 0.25) == doctest::Approx(1.0));
    try {
        (void)quotient_rule({2, 1}, {1, -4}, 0.25);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::quotient_undefined);
    }
}

TEST_CASE("signatures") {
    const auto s32 = enumerate_signatures(3, 2);
    REQUIRE(s32.size() == 3);
    CHECK(s32[0] == Signature{0, 1, 1});
    CHECK(s32[1] == Signature{1, 0, 1});
    CHECK(s32[2] == Signature{1, 1, 0});
    CHECK(enumerate_signatures(4, 4) == std::vector<Signature>{{1, 1, 1, 1}});
    CHECK(enumerate_signatures(2, 0) == std::vector<Signature>{{0, 0}});
    CHECK_THROWS_AS((void)enumerate_signatures(3, 4), Error);
    CHECK_THROWS_AS((void)enumerate_signatures(3, -1), Error);

    for (int n = 0; n <= 12; ++n) {
        double total = 0;
        for (int k = 0; k <= n; ++k) {
            const auto s = enumerate_signatures(n, k);
            CHECK(static_cast<double>(s.size()) == binom(n, k));
            for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1] < s[i]);
            total += static_cast<double>(s.size());
        }
        CHECK(total == std::ldexp(1.0, n));
    }
}

TEST_CASE("property: n-ary rule equals folded binary rule") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    std::uniform_int_distribution<int> len(2, 7);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = len(rng);
        const double delta = trial % 3 == 0 ? 0.0 : u(rng);
        std::vector<FactorD1> f;
        for (int j = 0; j < n; ++j) f.push_back({u(rng), u(rng)});
        FactorD1 acc = f[0];
        for (int j = 1; j < n; ++j) acc = {acc.value * f[j].value, product_rule_1(acc, f[j], delta)};
        CHECK(product_rule_n(f, delta) == doctest::Approx(acc.d1).epsilon(1e-9));
    }
}

TEST_CASE("property: n-ary rule at n = 2 is the first-order formula, bit for bit") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int trial = 0; trial < 1000; ++trial) {
        const FactorD1 f1{u(rng), u(rng)}, f2{u(rng), u(rng)};
        const double delta = trial % 4 == 0 ? 0.0 : u(rng);
        CHECK(product_rule_n({f1, f2}, delta) == product_rule_1(f1, f2, delta));
    }
}

TEST_CASE("property: n-ary symbolic product agrees with nested binary products") {
    const Interval dom(-1, 2);
    const auto g = fixture("paper_g");
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Expr> f;
        for (int j = 0; j < 3; ++j) f.push_back(random_expr(rng, 1));
        const Expr nary = Expr::nproduct(f);
        const Expr nested = Expr::product(Expr::product(f[0], f[1]), f[2]);
        const auto dn = g_derive(nary);
        const auto db = g_derive(nested);
        for (double t : {0.5, 0.3, 1.0 / 3, 0.7, 1.5}) {
            CAPTURE(nary.to_string());
            CAPTURE(t);
            CHECK(eval_expr(dn.derivative, g, t, dom) ==
                  doctest::Approx(eval_expr(db.derivative, g, t, dom)).epsilon(1e-9));
        }
    }
}

TEST_CASE("property: symbolic derivative matches the limit oracle where valid") {
    const Interval dom(-1, 2);
    struct Case {
        const char* fixture;
        std::vector<double> points;
    };
    const std::vector<Case> cases{
        {"paper_g", {0.5, 1.0 / 3, 0.3, 0.7, 1.5, -0.5}},
        {"gtilde", {0.5, 0.3, 0.9, 1.0, 1.5, -0.5}},
    };
    std::mt19937 rng(3);
    int compared = 0;
    int refuted = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const Expr e = random_expr(rng, 2);
        const auto d = g_derive(e);
        for (const auto& c : cases) {
            const auto g = fixture(c.fixture);
            const PointFn f = as_function(e, g);
            for (double t : c.points) {
                CAPTURE(e.to_string());
                CAPTURE(c.fixture);
                CAPTURE(t);
                const Truth v = d.validity.evaluate(g, t, dom);
                if (v == Truth::unknown) continue;
                const auto r = numeric_g_derivative(f, g, t, dom, 1);
                if (v == Truth::holds) {
                    REQUIRE(r.converged());
                    const double s = eval_expr(d.derivative, g, t, dom);
                    CHECK(std::abs(r.value - s) <= 1e-5 * std::max(1.0, std::abs(s)));
                    ++compared;
                } else {
                    // either no derivative or not the one the rule gives
                    if (r.converged()) CHECK(std::abs(r.value - eval_expr(d.derivative, g, t, dom)) > 1e-5);
                    ++refuted;
                }
            }
        }
    }
    CHECK(compared > 100);
    MESSAGE("compared " << compared << ", refuted " << refuted);
}

TEST_CASE("higher orders of g^2 agree with the oracle") {
    const Interval dom(-1, 2);
    const auto g = fixture("paper_g");
    const Expr sq = parse_expr("(* g g)");
    const PointFn f = as_function(sq, g);
    for (int k = 1; k <= 3; ++k) {
        const auto d = g_derive(sq, k);
        for (double t : {0.5, 0.7}) {
            CAPTURE(k);
            CAPTURE(t);
            REQUIRE(d.validity.evaluate(g, t, dom) == Truth::holds);
            const auto r = numeric_g_derivative(f, g, t, dom, k);
            REQUIRE(r.converged());
            CHECK(r.value == doctest::Approx(eval_expr(d.derivative, g, t, dom)).epsilon(1e-5));
        }
    }
}

TEST_CASE("star rule needs f and f* to agree on the constancy stretch") {
    const Interval dom(-1, 2);
    const auto gt = fixture("gtilde");
    const auto d = g_derive(parse_expr("star(dg)"));
    // (1/2, 1) is flat and ends at the atom, so Delta g~* jumps from 1/4 to 3/2
    CHECK(d.validity.evaluate(gt, 0.5, dom) == Truth::fails);
    const auto r = numeric_g_derivative(as_function(parse_expr("star(dg)"), gt), gt, 0.5, dom, 1);
    REQUIRE(r.converged());
    CHECK(r.value == doctest::Approx((1.5 - 0.25) / 0.25));
    // same at every family position: (1/3, 1/2) is flat up to the jump at 1/2
    CHECK(d.validity.evaluate(gt, 1.0 / 3, dom) == Truth::fails);
    // t* outside C1 u C2 u C3 keeps the child verdict
    CHECK(d.validity.evaluate(gt, 1.5, dom) == Truth::holds);
}

TEST_CASE("property: star-derivative law where the star rule is valid") {
    const Interval dom(-1, 2);
    std::mt19937 rng(19);
    int seen = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const Expr e = random_expr(rng, 1);
        const Expr se = Expr::star(e);
        if (se.kind() != ExprKind::star) continue;
        const auto d = g_derive(se);
        for (const char* name : {"paper_g", "gtilde"}) {
            const auto g = fixture(name);
            for (double t : {0.5, 0.3, 1.0 / 3, 0.9, 1.5}) {
                if (d.validity.evaluate(g, t, dom) != Truth::holds) continue;
                CAPTURE(e.to_string());
                CAPTURE(t);
                const auto a = numeric_g_derivative(as_function(e, g), g, t, dom, 1);
                const auto b = numeric_g_derivative(as_function(se, g), g, t, dom, 1);
                REQUIRE(a.converged());
                REQUIRE(b.converged());
                CHECK(b.value == doctest::Approx(a.value).epsilon(1e-5));
                ++seen;
            }
        }
    }
    CHECK(seen > 20);
}

TEST_CASE("property: second-order symbolic derivatives match the oracle where valid") {
    const Interval dom(-1, 2);
    std::mt19937 rng(23);
    int compared = 0;
    int expressions = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const Expr e = random_expr(rng, 2);
        if (e.kind() == ExprKind::constant) continue;
        ++expressions;
        const auto d = g_derive(e, 2);
        for (const char* name : {"paper_g", "gtilde"}) {
            const auto g = fixture(name);
            const PointFn f = as_function(e, g);
            for (double t : {0.5, 0.25, 0.3, 0.7, 1.5, -0.5}) {
                if (d.validity.evaluate(g, t, dom) != Truth::holds) continue;
                CAPTURE(e.to_string());
                CAPTURE(name);
                CAPTURE(t);
                const auto r = numeric_g_derivative(f, g, t, dom, 2);
                REQUIRE(r.converged());
                const double s = eval_expr(d.derivative, g, t, dom);
                CHECK(std::abs(r.value - s) <= 1e-5 * std::max(1.0, std::abs(s)));
                ++compared;
            }
        }
    }
    CHECK(expressions >= 20);
    CHECK(compared >= 100);
}

TEST_CASE("property: identity derivator reproduces classical derivatives") {
    const Interval dom(-1, 2);
    const auto id = fixture("identity");
    // (expr, f', f'') as functions of t
    struct Poly {
        const char* text;
        double (*d1)(double);
        double (*d2)(double);
    };
    const std::vector<Poly> polys{
        {"(* g g)", [](double t) { return 2 * t; }, [](double) { return 2.0; }},
        {"(* g g g)", [](double t) { return 3 * t * t; }, [](double t) { return 6 * t; }},
        {"(+ (scale:3 g) c:2)", [](double) { return 3.0; }, [](double) { return 0.0; }},
        {"(/ c:1 (+ c:2 g))", [](double t) { return -1 / ((2 + t) * (2 + t)); },
         [](double t) { return 2 / ((2 + t) * (2 + t) * (2 + t)); }},
        {"(* (+ g c:1) star(g))", [](double t) { return 2 * t + 1; }, [](double) { return 2.0; }},
    };
    for (const auto& p : polys) {
        const auto d1 = g_derive(parse_expr(p.text), 1);
        const auto d2 = g_derive(parse_expr(p.text), 2);
        for (double t = -0.75; t < 1.9; t += 0.25) {
            CAPTURE(p.text);
            CAPTURE(t);
            CHECK(d1.validity.evaluate(id, t, dom) == Truth::holds);
            CHECK(eval_expr(d1.derivative, id, t, dom) == doctest::Approx(p.d1(t)).epsilon(1e-8));
            CHECK(eval_expr(d2.derivative, id, t, dom) == doctest::Approx(p.d2(t)).epsilon(1e-8));
        }
    }
}

TEST_CASE("property: Q* Delta g* equals chi*") {
    const Interval dom(-1, 2);
    const Expr raw = parse_expr("(+ (* star(q) (* star(dg) c:1)) c:0)");
    const Expr chi = Expr::star(Expr::chi());
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-1, 2);
    for (const char* name : {"paper_g", "gtilde", "g_A"}) {
        const auto g = fixture(name);
        const Interval d = std::string(name) == "g_A" ? Interval(-2, 2.5) : dom;
        std::vector<double> pts{0.5, 1.0 / 3, 0.0, 1.0};
        for (int i = 0; i < 200; ++i) pts.push_back(u(rng));
        for (double t : pts) {
            if (!d.contains(t)) continue;
            const double q = to_double(Expr::q().eval(g, g.star(wide(t))));
            const double j = to_double(g.jump(g.star(wide(t))));
            CHECK(q * j == eval_expr(chi, g, t, d));
            CHECK(eval_expr(raw, g, t, d) == eval_expr(chi, g, t, d));
        }
    }
}
