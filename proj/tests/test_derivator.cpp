// SPDX-License-Identifier: MIT
#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace stieltjes;
using testing::fixture;

TEST_CASE("evaluate on the fixtures") {
    const auto g = fixture("paper_g");
    auto v = g.evaluate(0.5);
    CHECK(v.value == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(v.right_value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.jump == doctest::Approx(0.25).epsilon(1e-15));
    v = g.evaluate(0.0);
    CHECK(v.value == 0.0);
    CHECK(v.jump == 0.0);

    const auto gt = fixture("gtilde");
    v = gt.evaluate(1.0);
    CHECK(v.value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(v.right_value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(v.jump == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("evaluate agrees with partial sums") {
    const auto g = fixture("paper_g");
    const auto gt = fixture("gtilde");
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 2.5);
    for (int i = 0; i < 500; ++i) {
        const double t = u(rng);
        CHECK(g.evaluate(t).value == doctest::Approx(testing::paper_g_ref(t)).epsilon(1e-13));
        CHECK(gt.evaluate(t).value == doctest::Approx(testing::gtilde_ref(t)).epsilon(1e-13));
    }
}

TEST_CASE("measure") {
    const auto g = fixture("paper_g");
    CHECK(g.measure(0.0, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(g.measure(1.0 / 3.0, 0.5) == doctest::Approx(7.0 / 24.0).epsilon(1e-14));
    const auto ga = fixture("g_A");
    CHECK(ga.measure(0.5, 1.5) == 0.0);
    CHECK_THROWS_AS((void)g.measure(1.0, 1.0), Error);
}

TEST_CASE("star and level sets") {
    const Interval dom(-1, 2);
    const auto gt = fixture("gtilde");
    CHECK(gt.star(0.3, dom) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    auto ls = gt.level_set(0.3, dom);
    CHECK(ls.first == 0.25);
    CHECK(ls.second == doctest::Approx(1.0 / 3.0).epsilon(1e-16));

    const auto g = fixture("paper_g");
    CHECK(g.star(0.3, dom) == 0.3);
    ls = g.level_set(0.7, dom);
    CHECK(ls.first == 0.7);
    CHECK(ls.second == 0.7);

    const Interval wide_dom(-2, 3);
    const auto ga = fixture("g_A");
    CHECK(ga.star(1.0, wide_dom) == 2.0);
    ls = ga.level_set(1.0, wide_dom);
    CHECK(ls.first == 0.0);
    CHECK(ls.second == 2.0);
    CHECK_THROWS_AS((void)ga.star(5.0, wide_dom), Error);
}

TEST_CASE("jumps_in") {
    const auto g = fixture("paper_g");
    auto j = g.jumps_in(0.4, 1.1, 10);
    REQUIRE(j.jumps.size() == 2);
    CHECK(j.jumps[0].position == 0.5);
    CHECK(j.jumps[0].mass == 0.25);
    CHECK(j.jumps[1].position == 1.0);
    CHECK(j.jumps[1].mass == 0.5);
    CHECK_FALSE(j.truncated);

    j = g.jumps_in(0.0, 0.3, 3);
    REQUIRE(j.jumps.size() == 3);
    CHECK(j.truncated);
    CHECK(j.jumps[0].position == 1.0 / 6);
    CHECK(j.jumps[2].position == 0.25);
    CHECK(j.jumps[2].mass == 1.0 / 16);

    CHECK(fixture("identity").jumps_in(-5, 5, 4).jumps.empty());
}

TEST_CASE("validate_domain") {
    CHECK(fixture("paper_g").validate_domain(Interval(-1, 2), DomainMode::derivative).empty());
    auto v = fixture("gtilde").validate_domain(Interval(-1, 0.3), DomainMode::derivative);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == DomainViolation::b_in_Cg);
    v = fixture("g_A").validate_domain(Interval(0, 3), DomainMode::bc1);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == DomainViolation::a_in_Dg);
}

TEST_CASE("invariants are enforced") {
    const MassRule geo{};
    CHECK_THROWS_AS(Derivator("x", {{0, -1}}, {}, {}), Error);
    CHECK_THROWS_AS(Derivator("x", {}, {{1, 0}}, {}), Error);
    CHECK_THROWS_AS(Derivator("x", {}, {{0.5, 1}}, {JumpFamily(0, Side::right_of, {}, geo, 1)}), Error);
    CHECK_THROWS_AS(Derivator("x", {}, {{0, 1}}, {JumpFamily(0, Side::right_of, {}, geo, 1)}), Error);
    CHECK_THROWS_AS(JumpFamily(0, Side::right_of, {1, 0.5}, geo, 1), Error);
    CHECK_THROWS_AS(JumpFamily(0, Side::right_of, {}, MassRule{MassRule::Form::power, 1, 0.5, 1.0}, 1), Error);
    // Family at 0.5 inside the hull (0, 1] of another family.
    CHECK_THROWS_AS(Derivator("x", {}, {},
                              {JumpFamily(0, Side::right_of, {}, geo, 1),
                               JumpFamily(0.5, Side::left_of, {}, geo, 4)}),
                    Error);
    CHECK_NOTHROW(Derivator("x", {}, {},
                            {JumpFamily(0, Side::right_of, {}, geo, 1),
                             JumpFamily(0, Side::left_of, {}, geo, 1)}));
}

TEST_CASE("property: monotone, left-continuous, additive") {
    for (const char* name : {"paper_g", "gtilde", "g_A", "identity"}) {
        const auto g = fixture(name);
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-2.0, 3.0);
        for (int i = 0; i < 300; ++i) {
            double t1 = u(rng), t2 = u(rng), t3 = u(rng);
            if (t1 > t2) std::swap(t1, t2);
            CHECK(g.evaluate(t1).value <= g.evaluate(t2).value);
            const auto e = g.evaluate(t1);
            CHECK(e.jump == e.right_value - e.value);
            double left = 0;
            for (int k = 30; k <= 40; ++k) left = g.evaluate(t1 - std::ldexp(1.0, -k)).value;
            CHECK(std::abs(left - e.value) <= 1e-9);
            double x[3] = {t1, t2, t3};
            std::sort(x, x + 3);
            if (x[0] < x[1] && x[1] < x[2]) {
                CHECK(g.measure(x[0], x[2]) ==
                      doctest::Approx(g.measure(x[0], x[1]) + g.measure(x[1], x[2])).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("property: star is a fixed point and preserves g") {
    const Interval dom(-1, 2);
    for (const char* name : {"paper_g", "gtilde", "g_A"}) {
        const auto g = fixture(name);
        for (int i = 0; i <= 300; ++i) {
            const double t = -1.0 + 3.0 * i / 300.0;
            if (t >= 2.0) continue;
            const double s = g.star(t, dom);
            CHECK(s >= t);
            CHECK(g.star(s, dom) == s);
            CHECK(g.evaluate(s).value == g.evaluate(t).value);
        }
    }
}

TEST_CASE("property: jumps vanish toward accumulation points") {
    for (const char* name : {"paper_g", "gtilde"}) {
        const auto g = fixture(name);
        for (const auto& f : g.families()) {
            double partial_max = 1.0;
            for (std::int64_t n = 10; n <= 1 << 20; n *= 2) {
                const double m = g.evaluate(f.position<double>(n)).jump;
                CHECK(m <= partial_max);
                partial_max = m;
            }
            CHECK(partial_max < 1e-12);
        }
    }
}

TEST_CASE("power-law tails") {
    const JumpFamily f(0, Side::left_of, {2, 2}, MassRule{MassRule::Form::power, 1, 0.5, 2.0}, 1);
    const double pi = std::acos(-1.0);
    CHECK(f.tail<double>(1) == doctest::Approx(pi * pi / 6).epsilon(1e-14));
    double direct = 0;
    for (int n = 100000; n >= 5; --n) direct += 1.0 / (double(n) * n);
    CHECK(f.tail<double>(5) - f.tail<double>(100001) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("parse_number") {
    CHECK(parse_number("7/24") == 7.0 / 24.0);
    CHECK(parse_number("-1/3") == -1.0 / 3.0);
    CHECK(parse_number("0.25") == 0.25);
    CHECK_THROWS_AS((void)parse_number("1/0"), Error);
    CHECK_THROWS_AS((void)parse_number("abc"), Error);
}

TEST_CASE("derivator files carry an optional domain") {
    const std::string base = R"({"name": "d", "segments": [{"from": 0, "slope": 1}])";
    const auto plain = parse_derivator(base + "}");
    CHECK_FALSE(plain.domain.has_value());

    const auto with = parse_derivator(base + R"(, "domain": ["-1/2", 3]})");
    REQUIRE(with.domain.has_value());
    CHECK(with.domain->a == -0.5);
    CHECK(with.domain->b == 3.0);

    const auto kind_of = [&](const std::string& tail) {
        try {
            (void)parse_derivator(base + tail);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::unsupported;
    };
    CHECK(kind_of(R"(, "domain": [1]})") == ErrorKind::parse);
    CHECK(kind_of(R"(, "domain": 2})") == ErrorKind::parse);
    CHECK(kind_of(R"(, "domain": [2, 1]})") == ErrorKind::invalid_interval);

    CHECK(load_derivator(std::string(FIXTURE_DIR) + "/g_A").domain->a == -2.0);
}
