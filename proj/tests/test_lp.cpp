#include "fcg/errors.hpp"
#include "fcg/lp.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

using namespace fcg;
using namespace fcg::lp;

namespace {

Constraint C(std::vector<double> row, Relation rel, double rhs) { return Constraint{std::move(row), rel, rhs}; }

std::vector<oracle::Row> oracle_rows(const Problem& p) {
    std::vector<oracle::Row> rows;
    for (const auto& c : p.constraints) {
        const int sense = c.relation == Relation::LessEqual ? -1 : c.relation == Relation::Equal ? 0 : 1;
        rows.push_back({c.row, sense, c.rhs});
    }
    return rows;
}

Problem random_problem(gen::Rng& rng) {
    Problem p;
    const int n = rng.integer(1, 4);
    const int m = rng.integer(1, 5);
    for (int j = 0; j < n; ++j) p.objective.push_back(rng.integer(-5, 5));
    for (int i = 0; i < m; ++i) {
        std::vector<double> row;
        for (int j = 0; j < n; ++j) row.push_back(rng.integer(-4, 4));
        const int r = rng.integer(0, 5);
        const Relation rel = r < 3 ? Relation::LessEqual : r < 5 ? Relation::GreaterEqual : Relation::Equal;
        p.constraints.push_back(C(row, rel, rng.integer(-6, 6)));
    }
    // keep it bounded
    for (int j = 0; j < n; ++j) {
        std::vector<double> row(n, 0.0);
        row[j] = 1.0;
        p.constraints.push_back(C(row, Relation::LessEqual, 10.0));
    }
    return p;
}

} // namespace

TEST_CASE("spec examples") {
    Problem box{{1.0}, {C({1.0}, Relation::LessEqual, 3.0)}, {}};
    auto s = solve(box);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.x[0] == doctest::Approx(3.0));
    CHECK(s.value == doctest::Approx(3.0));

    Problem contradictory{{0.0}, {C({1.0}, Relation::GreaterEqual, 1.0), C({1.0}, Relation::LessEqual, 0.0)}, {}};
    CHECK(solve(contradictory).status == Status::Infeasible);

    // maximize m s.t. 2 w1 - w2 >= m, w1 + w2 = 1; variables (w1, w2, m), m free
    Problem margin{{0.0, 0.0, 1.0},
                   {C({2.0, -1.0, -1.0}, Relation::GreaterEqual, 0.0), C({1.0, 1.0, 0.0}, Relation::Equal, 1.0)},
                   {0.0, 0.0, -std::numeric_limits<double>::infinity()}};
    s = solve(margin);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.value == doctest::Approx(2.0));
    CHECK(s.x[0] == doctest::Approx(1.0));
    CHECK(s.x[1] == doctest::Approx(0.0));
}

TEST_CASE("unbounded and free variables") {
    Problem up{{1.0, 1.0}, {C({1.0, -1.0}, Relation::LessEqual, 1.0)}, {}};
    CHECK(solve(up).status == Status::Unbounded);

    const double inf = std::numeric_limits<double>::infinity();
    Problem freevar{{-1.0}, {C({1.0}, Relation::GreaterEqual, -4.0)}, {-inf}};
    const auto s = solve(freevar);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.x[0] == doctest::Approx(-4.0));
    CHECK(s.value == doctest::Approx(4.0));
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS((void)solve(Problem{{}, {}, {}}), DimensionError);
    CHECK_THROWS_AS((void)solve(Problem{{1.0, 2.0}, {C({1.0}, Relation::LessEqual, 1.0)}, {}}), DimensionError);
    CHECK_THROWS_AS((void)solve(Problem{std::vector<double>(65, 1.0), {}, {}}), DimensionError);
    Problem tall{{1.0}, {}, {}};
    for (int i = 0; i < 257; ++i) tall.constraints.push_back(C({1.0}, Relation::LessEqual, 1.0));
    CHECK_THROWS_AS((void)solve(tall), DimensionError);
    CHECK_THROWS_AS((void)solve(Problem{{std::nan("")}, {}, {}}), InvalidArgument);
    CHECK_THROWS_AS((void)solve(Problem{{1.0}, {}, {5.0}}), InvalidArgument);
}

TEST_CASE("Bland's rule terminates on a classic cycling instance") {
    Problem beale{{0.75, -20.0, 0.5, -6.0},
                  {C({0.25, -8.0, -1.0, 9.0}, Relation::LessEqual, 0.0),
                   C({0.5, -12.0, -0.5, 3.0}, Relation::LessEqual, 0.0), C({0.0, 0.0, 1.0, 0.0}, Relation::LessEqual, 1.0)},
                  {}};
    const auto s = solve(beale);
    REQUIRE(s.status == Status::Optimal);
    const auto ref = oracle::vertex_lp(beale.objective, oracle_rows(beale), 4);
    REQUIRE(ref.feasible);
    CHECK(s.value == doctest::Approx(ref.best).epsilon(1e-9));
    CHECK(s.value == doctest::Approx(1.25));
}

TEST_CASE("dump and trace") {
    Problem p{{1.0, 2.0}, {C({1.0, 1.0}, Relation::LessEqual, 4.0)}, {}};
    const std::string d = p.dump();
    CHECK(d.find("<=") != std::string::npos);
    CHECK(d.find("max") != std::string::npos);
    std::ostringstream trace;
    SolveOptions opts;
    opts.trace = &trace;
    (void)solve(p, opts);
    CHECK_FALSE(trace.str().empty());
}

TEST_CASE("property: agrees with vertex enumeration; certificates re-check") {
    gen::Rng rng(606);
    int optimal = 0, infeasible = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const Problem p = random_problem(rng);
        CAPTURE(p.dump());
        const auto s = solve(p);
        const auto ref = oracle::vertex_lp(p.objective, oracle_rows(p), p.variables());
        REQUIRE(s.status != Status::Unbounded);
        REQUIRE((s.status == Status::Optimal) == ref.feasible);
        if (s.status == Status::Optimal) {
            ++optimal;
            CHECK(max_violation(p, s.x) <= 1e-9);
            for (double x : s.x) CHECK(x >= -1e-12);
            CHECK(std::fabs(s.value - ref.best) <= 1e-9 * (1.0 + std::fabs(ref.best)));
        } else {
            ++infeasible;
        }
    }
    CHECK(optimal > 50);
    CHECK(infeasible > 20);
}

TEST_CASE("property: verdicts are scale invariant") {
    gen::Rng rng(707);
    for (int trial = 0; trial < 100; ++trial) {
        Problem p = random_problem(rng);
        Problem q = p;
        for (auto& c : q.constraints) {
            for (auto& a : c.row) a *= 1e3;
            c.rhs *= 1e3;
        }
        REQUIRE(solve(p).status == solve(q).status);
    }
}

TEST_CASE("deterministic bit-identical solutions") {
    gen::Rng rng(808);
    for (int trial = 0; trial < 50; ++trial) {
        const Problem p = random_problem(rng);
        const auto a = solve(p), b = solve(p);
        REQUIRE(a.status == b.status);
        REQUIRE(a.iterations == b.iterations);
        REQUIRE(a.x == b.x);
        if (a.status == Status::Optimal) REQUIRE(std::memcmp(&a.value, &b.value, sizeof(double)) == 0);
    }
}
