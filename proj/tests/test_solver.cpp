#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pizza/solver.hpp"
#include "test_support.hpp"

using namespace pizza;
using testkit::q;

namespace {

PizzaInstance square_colors(int n) {
    std::vector<std::vector<WeightedPolygon>> cs(n, {testkit::rect(q(0), q(0), q(1), q(1))});
    return testkit::instance(cs);
}

SolverConfig config(double eps, int turns, int seeds = 16) {
    SolverConfig c;
    c.epsilon = eps;
    c.turns = turns;
    c.seeds = seeds;
    return c;
}

void check_sound(const CompiledInstance& ci, const SolveReport& r, double eps, int k) {
    CHECK(turn_count(r.path) <= k);
    CHECK(is_y_monotone(r.path));
    if (!r.verified_exact) return;
    CHECK(r.residual.to_double() <= eps);
    for (const auto& g : oracle_gaps(ci.source, r.solution)) CHECK(g.to_double() <= eps);
}

}  // namespace

TEST_CASE("single unit square with no turns") {
    auto ci = compile(square_colors(1));
    auto r = solve(ci, config(1e-3, 0));
    REQUIRE(r.verified_exact);
    CHECK(r.residual == q(0));
    REQUIRE(r.solution.z.size() == 2);
    CHECK(abs(r.solution.z[0]) == q(1, 2));
    check_sound(ci, r, 1e-3, 0);
}

TEST_CASE("two identical squares with one turn") {
    auto ci = compile(square_colors(2));
    auto r = solve(ci, config(1e-3, 1));
    REQUIRE(r.verified_exact);
    CHECK(r.residual.to_double() <= 1e-3);
    check_sound(ci, r, 1e-3, 1);
}

TEST_CASE("unit square with a left-half rectangle") {
    auto ci = compile(testkit::instance({{testkit::rect(q(0), q(0), q(1), q(1))}, {testkit::rect(q(0), q(0), q(1, 2), q(1))}}));
    auto r = solve(ci, config(1e-3, 1));
    REQUIRE(r.verified_exact);
    CHECK(r.residual.to_double() <= 1e-3);
    check_sound(ci, r, 1e-3, 1);
    // the horizontal bisector itself is an exact solution
    CHECK(residual(ci, make_sphere_point({q(1, 2), q(-1, 2), q(1)})) == q(0));
}

TEST_CASE("solve is deterministic for a fixed seed") {
    testkit::Rng rng(41);
    auto ci = compile(testkit::random_instance(rng, 3, 3));
    auto cfg = config(1e-3, 2, 8);
    cfg.rng_seed = 7;
    auto a = solve(ci, cfg), b = solve(ci, cfg);
    CHECK(a.point.coords == b.point.coords);
    CHECK(a.residual == b.residual);
    CHECK(a.evaluations == b.evaluations);
    cfg.threads = 1;
    auto c = solve(ci, cfg);
    CHECK(c.point.coords == a.point.coords);
}

TEST_CASE("random instances reach the tolerance with n-1 turns") {
    testkit::Rng rng(42);
    for (int it = 0; it < 8; ++it) {
        int n = static_cast<int>(rng.integer(1, 3));
        auto ci = compile(testkit::random_instance(rng, n, 3));
        auto r = solve(ci, config(1e-3, n - 1, 32));
        CHECK(r.verified_exact);
        check_sound(ci, r, 1e-3, n - 1);
    }
}

TEST_CASE("grid oracle") {
    auto ci = compile(square_colors(1));
    SolverConfig cfg = config(1e-3, 0);
    cfg.method = SolveMethod::Grid;
    cfg.grid_resolution = 64;
    auto r = solve_grid(ci, cfg);
    CHECK(r.residual <= q(1, 64));

    cfg.turns = 6;
    cfg.grid_resolution = 400;
    CHECK_THROWS_AS(solve_grid(ci, cfg), SolverBudgetError);
    cfg.grid_resolution = 1;
    CHECK_THROWS_AS(solve_grid(ci, cfg), std::invalid_argument);
    CHECK_THROWS_AS(solve(ci, config(0, 0)), std::invalid_argument);
}

TEST_CASE("grid and multistart agree on shared instances") {
    testkit::Rng rng(43);
    for (int it = 0; it < 4; ++it) {
        auto ci = compile(testkit::random_instance(rng, 2, 2));
        SolverConfig g = config(1e-3, 1);
        g.method = SolveMethod::Grid;
        g.grid_resolution = 24;
        auto rg = solve_grid(ci, g);
        auto rm = solve(ci, config(1e-3, 1, 16));
        CHECK(rg.residual.to_double() >= rm.residual.to_double() - 1e-3);
        check_sound(ci, rg, 1e-3, 1);
    }
}

TEST_CASE("polish") {
    auto ci = compile(square_colors(1));
    auto a = polish(ci, SpherePointT<double>{{0.4999999, 1.5000001, 0.0}, 1});
    CHECK(a.coords == std::vector<Q>{q(1, 2), q(3, 2), q(0)});
    auto b = polish(ci, SpherePointT<double>{{0.5, 1.5, 0.0}, 1});
    CHECK(b.coords == std::vector<Q>{q(1, 2), q(3, 2), q(0)});

    testkit::Rng rng(44);
    for (int it = 0; it < 40; ++it) {
        auto inst = testkit::random_instance(rng, 2, 3);
        auto c = compile(inst);
        std::vector<double> v;
        for (int j = 0; j < 3; ++j) v.push_back(rng.real(-1, 1));
        SpherePointT<double> p{project_to_sphere(v, 2.0), 1};
        auto s = polish(c, p);
        CHECK(l1_norm(s) == s.radius());
        CHECK(residual(c, s).to_double() <= float_residual(c, p) + 1e-6);
    }
}

TEST_CASE("sphere projection keeps signs") {
    auto v = project_to_sphere({0.5, -1.5, 0.0}, 4.0);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(-3.0));
    CHECK(v[2] == 0.0);
}
