#pragma once

#include "pizza/measure.hpp"
#include "pizza/sc_path.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pizza {

enum class SolveMethod { Multistart, Grid };

struct SolverConfig {
    double epsilon = 1e-3;
    int turns = -1;  // negative means n-1
    SolveMethod method = SolveMethod::Multistart;
    int seeds = 64;
    std::uint64_t rng_seed = 1;
    int grid_resolution = 16;
    int max_iters = 200;
    int hops = 32;  // perturb-and-descend rounds per seed
    double grid_budget = 2e6;  // refuse grids with more points than this
    int threads = 0;           // 0: PIZZA_THREADS or hardware concurrency
};

struct SolveReport {
    SpherePoint point;
    FeasibleSolution solution;
    SCPath path;
    Q residual;                  // exact, from the clipping oracle
    std::vector<Q> per_color_gap;
    double float_residual = 0;
    long evaluations = 0;
    double wall_time = 0;        // seconds
    bool verified_exact = false;
    int seed_index = -1;
};

class SolverBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SolveReport solve(const CompiledInstance& ci, const SolverConfig& cfg);
SolveReport solve_grid(const CompiledInstance& ci, const SolverConfig& cfg);

// Rounds a float candidate to small-denominator rationals lying exactly on the sphere.
SpherePoint polish(const CompiledInstance& ci, const SpherePointT<double>& p);

// Rescales absolute values onto the L1 sphere of the given radius, keeping signs.
std::vector<double> project_to_sphere(const std::vector<double>& v, double radius);

// max_i |f(p)_i - f(-p)_i| in float mode through the identity f(-p) = totals - f(p).
double float_residual(const CompiledInstance& ci, const SpherePointT<double>& p);

// Exact gaps |mass_A - mass_B| per color from the clipping oracle.
std::vector<Q> oracle_gaps(const PizzaInstance& inst, const FeasibleSolution& sol);

int worker_count(int requested);

}  // namespace pizza
