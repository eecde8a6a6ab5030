#include "fcg/discount.hpp"
#include "fcg/errors.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fcg;

TEST_CASE("primitive discount factors") {
    CHECK(Discount::hyperbolic(0.5).factor(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(Discount::generalized_hyperbolic(0.2, 2.0).factor(5.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(Discount::generalized_hyperbolic(0.2, 0.5).factor(2.0) == doctest::Approx(0.8451542547285166).epsilon(1e-14));
    CHECK(Discount::exponential(0.5).factor(1.0) == doctest::Approx(0.6065306597126334).epsilon(1e-15));
    CHECK(Discount::state_dependent({{"s1", 0.05}}).factor(5.0, {}, "s1") ==
          doctest::Approx(0.7788007830714049).epsilon(1e-15));
    const auto hyb = Discount::hybrid(0.5, Discount::exponential(0.5), Discount::hyperbolic(1.0));
    CHECK(hyb.factor(0.0) == 1.0);
    CHECK(hyb.factor(1.0) == doctest::Approx(0.5532653298563167).epsilon(1e-15));
}

TEST_CASE("quasi-hyperbolic curve") {
    const auto q = Discount::quasi_hyperbolic(0.7, 0.95);
    CHECK(q.factor(0.0) == 1.0);
    CHECK(q.factor(1.0) == doctest::Approx(0.665).epsilon(1e-14));
    CHECK(q.factor(2.0) == doctest::Approx(0.63175).epsilon(1e-14));
    CHECK(q.factor(3.0) == doctest::Approx(0.6001625).epsilon(1e-14));
    // the t = 0 indicator is an exact comparison
    CHECK(q.factor(1e-300) == doctest::Approx(0.7));
}

TEST_CASE("scale-dependent factor uses eta = 1 / log10 x by default") {
    const auto s = Discount::scale_dependent(Discount::exponential(1.0), Eta::inverse_log());
    CHECK(s.factor(1.0, 15.0) == doctest::Approx(0.42729777061274227).epsilon(1e-13));
    CHECK(s.factor(1.0, 1500.0) == doctest::Approx(0.7298965888377763).epsilon(1e-13));
    CHECK(s.factor(0.0, 15.0) == 1.0);
    CHECK_THROWS_AS((void)s.factor(1.0), MissingArgument);
    CHECK_THROWS_AS((void)s.factor(1.0, 1.0), DomainError);
    CHECK_THROWS_AS((void)s.factor(1.0, 0.5), DomainError);
}

TEST_CASE("argument and construction errors") {
    const auto st = Discount::state_dependent({{"s1", 0.05}, {"s2", 0.15}});
    CHECK_THROWS_AS((void)st.factor(1.0), MissingArgument);
    CHECK_THROWS_AS((void)st.factor(1.0, {}, "s3"), UnknownState);
    CHECK_THROWS_AS((void)Discount::hyperbolic(1.0).factor(-1.0), DomainError);
    CHECK_THROWS_AS((void)Discount::hyperbolic(0.0), InvalidArgument);
    CHECK_THROWS_AS((void)Discount::exponential(-0.1), InvalidArgument);
    CHECK_THROWS_AS((void)Discount::quasi_hyperbolic(0.0, 0.9), InvalidArgument);
    CHECK_THROWS_AS((void)Discount::quasi_hyperbolic(0.7, 1.0), InvalidArgument);
    CHECK_THROWS_AS((void)Discount::generalized_hyperbolic(0.2, 0.0), InvalidArgument);
    CHECK_THROWS_AS((void)Discount::state_dependent({{"s", 0.0}}), InvalidArgument);
    CHECK_THROWS_AS((void)Discount::state_dependent({}), InvalidArgument);
    CHECK_THROWS_AS((void)Discount::hybrid(1.5, Discount::hyperbolic(1), Discount::hyperbolic(1)), InvalidArgument);
    CHECK_THROWS_AS((void)Eta::inverse_log(1.0), InvalidArgument);
    CHECK_THROWS_AS((void)Eta::tabulated({{2.0, 1.0}, {3.0, 2.0}, {4.0, 1.5}}), InvalidArgument);
}

TEST_CASE("nesting is capped at depth 8") {
    Discount d = Discount::hyperbolic(1.0);
    for (int i = 0; i < 7; ++i) d = Discount::hybrid(0.5, d, Discount::exponential(0.1));
    CHECK(d.depth() == 8);
    CHECK_THROWS_AS((void)Discount::hybrid(0.5, d, Discount::exponential(0.1)), InvalidArgument);
    CHECK_THROWS_AS((void)Discount::scale_dependent(d, Eta::inverse_log()), InvalidArgument);
}

TEST_CASE("two-decimal rounding mode rounds primitive factors") {
    const auto g = Discount::generalized_hyperbolic(0.2, 2.0);
    CHECK(g.factor(2.0, {}, {}, FactorRounding::TwoDecimals) == 0.51);
    CHECK(g.factor(4.0, {}, {}, FactorRounding::TwoDecimals) == 0.31);
    CHECK(g.factor(5.0, {}, {}, FactorRounding::TwoDecimals) == 0.25);
    const auto hyb = Discount::hybrid(0.5, Discount::exponential(0.5), Discount::hyperbolic(1.0));
    // 0.5 * 0.61 + 0.5 * 0.5
    CHECK(hyb.factor(1.0, {}, {}, FactorRounding::TwoDecimals) == doctest::Approx(0.555).epsilon(1e-15));
}

TEST_CASE("scale monotonicity check") {
    const auto s = Discount::scale_dependent(Discount::exponential(1.0), Eta::inverse_log());
    const auto at0 = check_scale_monotonicity(s, {0.0}, {2.0, 10.0, 1500.0});
    CHECK(at0.pass);
    CHECK(at0.points_checked == 3);

    // Brute-force sign evaluation of 1 + eta'(x) x ln D(t) with eta'(x) = -1/(x ln10 log10(x)^2).
    const std::vector<double> ts{0.5, 1.0, 2.0}, xs{2.0, 10.0, 100.0, 1500.0};
    std::size_t expected_violations = 0;
    for (double t : ts)
        for (double x : xs) {
            const double lg = std::log10(x);
            const double deriv = -1.0 / (x * std::log(10.0) * lg * lg);
            if (1.0 + deriv * x * (-t) <= 0.0) ++expected_violations;
        }
    const auto grid = check_scale_monotonicity(s, ts, xs);
    CHECK(grid.points_checked == 12);
    CHECK(grid.violations.size() == expected_violations);
    CHECK(grid.pass == (expected_violations == 0));

    CHECK_THROWS_AS((void)check_scale_monotonicity(s, ts, {1.0}), DomainError);

    const auto flat = Discount::scale_dependent(Discount::exponential(1.0), Eta::tabulated({{1.0, 0.7}, {1e4, 0.7}}));
    CHECK(check_scale_monotonicity(flat, ts, xs).pass);

    // A steeply increasing eta makes larger rewards worth less.
    const auto steep = Discount::scale_dependent(Discount::exponential(1.0), Eta::tabulated({{2.0, 0.5}, {100.0, 5.0}}));
    const std::vector<double> xs2{3.0, 10.0, 50.0, 90.0};
    std::size_t brute = 0;
    for (double t : ts)
        for (double x : xs2)
            if (1.0 + (4.5 / 98.0) * x * (-t) <= 0.0) ++brute;
    const auto rep = check_scale_monotonicity(steep, ts, xs2);
    CHECK(brute > 0);
    CHECK(rep.violations.size() == brute);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("property: t = 0 normalization and monotone decay") {
    gen::Rng rng(202);
    for (int i = 0; i < 1000; ++i) {
        const Discount d = gen::simple_discount(rng);
        CAPTURE(d.describe());
        REQUIRE(d.factor(0.0) == doctest::Approx(1.0).epsilon(1e-15));
        double t1 = rng.uniform(0.0, 50.0), t2 = rng.uniform(0.0, 50.0);
        if (t1 > t2) std::swap(t1, t2);
        const double f1 = d.factor(t1), f2 = d.factor(t2);
        REQUIRE(f1 >= f2);
        REQUIRE(f2 > 0.0);
        REQUIRE(f1 <= 1.0);
    }
    // scale- and state-dependent regimes at fixed reward / state
    for (int i = 0; i < 200; ++i) {
        const auto s = Discount::scale_dependent(Discount::hyperbolic(rng.uniform(0.1, 2.0)),
                                                 Eta::inverse_log(rng.uniform(1.5, 20.0)));
        const auto st = Discount::state_dependent({{"a", rng.uniform(0.01, 0.5)}});
        const double x = rng.uniform(1.5, 1e4);
        double t1 = rng.uniform(0.0, 30.0), t2 = rng.uniform(0.0, 30.0);
        if (t1 > t2) std::swap(t1, t2);
        REQUIRE(s.factor(0.0, x) == 1.0);
        REQUIRE(s.factor(t1, x) >= s.factor(t2, x));
        REQUIRE(st.factor(0.0, {}, "a") == 1.0);
        REQUIRE(st.factor(t1, {}, "a") >= st.factor(t2, {}, "a"));
    }
}

TEST_CASE("nesting identities") {
    gen::Rng rng(303);
    for (int i = 0; i < 100; ++i) {
        const double k = rng.uniform(0.01, 3.0);
        const auto g = Discount::generalized_hyperbolic(k, 1.0);
        const auto h = Discount::hyperbolic(k);
        const auto d1 = gen::simple_discount(rng);
        const auto d2 = gen::simple_discount(rng);
        const double lambda = rng.uniform(0.0, 1.0);
        const auto hyb = Discount::hybrid(lambda, d1, d2);
        for (double t : {0.0, 0.5, 1.0, 3.0, 10.0, 40.0}) {
            REQUIRE(std::fabs(g.factor(t) - h.factor(t)) <= 1e-12);
            REQUIRE(hyb.factor(t) == lambda * d1.factor(t) + (1.0 - lambda) * d2.factor(t));
            REQUIRE(Discount::hybrid(0.0, d1, d2).factor(t) == d2.factor(t));
            REQUIRE(Discount::hybrid(1.0, d1, d2).factor(t) == d1.factor(t));
        }
    }
}

TEST_CASE("hyperbolic discounting is not time-translation invariant") {
    const auto h = Discount::hyperbolic(0.5);
    const double t = 1.0, delta = 1.0;
    CHECK(std::fabs(h.factor(t + delta) / h.factor(t) - h.factor(delta)) > 1e-3);
    const auto e = Discount::exponential(0.5);
    CHECK(e.factor(t + delta) / e.factor(t) == doctest::Approx(e.factor(delta)).epsilon(1e-14));
}

TEST_CASE("factors agree with the independent closed forms") {
    gen::Rng rng(404);
    for (int i = 0; i < 300; ++i) {
        const double t = rng.uniform(0.0, 30.0);
        const double k = rng.uniform(0.01, 2.0), p = rng.uniform(0.1, 4.0), r = rng.uniform(0.0, 1.0);
        const double beta = rng.uniform(0.1, 1.0), delta = rng.uniform(0.5, 0.99);
        const double x = rng.uniform(1.5, 1e5), b = rng.uniform(1.5, 20.0);
        REQUIRE(Discount::exponential(r).factor(t) == doctest::Approx(oracle::d_exponential(r, t)).epsilon(1e-13));
        REQUIRE(Discount::hyperbolic(k).factor(t) == doctest::Approx(oracle::d_hyperbolic(k, t)).epsilon(1e-13));
        REQUIRE(Discount::quasi_hyperbolic(beta, delta).factor(t) ==
                doctest::Approx(oracle::d_quasi(beta, delta, t)).epsilon(1e-13));
        REQUIRE(Discount::generalized_hyperbolic(k, p).factor(t) ==
                doctest::Approx(oracle::d_genhyp(k, p, t)).epsilon(1e-13));
        REQUIRE(Discount::scale_dependent(Discount::exponential(r), Eta::inverse_log(b)).factor(t, x) ==
                doctest::Approx(oracle::d_scale(oracle::d_exponential(r, t), b, x)).epsilon(1e-12));
    }
}
