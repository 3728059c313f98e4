#include <benchmark/benchmark.h>

#include <random>

#include "gridplan/milp/problem.hpp"
#include "gridplan/milp/solver.hpp"

using namespace gridplan::milp;

namespace {

// Transportation-style LP: `n` supply nodes, `n` demand nodes, dense cost.
Problem transport_lp(int n) {
    std::mt19937 rng(n * 7919u);
    std::uniform_real_distribution<double> cost(1.0, 10.0);
    Problem p;
    std::vector<std::vector<int>> x(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            x[i][j] = p.add_variable("x" + std::to_string(i) + "_" + std::to_string(j), 0, kInf);
            p.set_objective_coeff(x[i][j], cost(rng));
        }
    for (int i = 0; i < n; ++i) {
        int row = p.add_constraint("s" + std::to_string(i), Relation::LessEqual, 10.0 + i);
        for (int j = 0; j < n; ++j) p.add_coeff(row, x[i][j], 1.0);
    }
    for (int j = 0; j < n; ++j) {
        int row = p.add_constraint("d" + std::to_string(j), Relation::GreaterEqual, 5.0 + j % 3);
        for (int i = 0; i < n; ++i) p.add_coeff(row, x[i][j], 1.0);
    }
    return p;
}

Problem knapsack_milp(int n) {
    std::mt19937 rng(n * 104729u);
    std::uniform_int_distribution<int> w(1, 20);
    Problem p;
    for (int j = 0; j < n; ++j) {
        p.add_variable("b" + std::to_string(j), 0, 1, VarKind::Binary);
        p.set_objective_coeff(j, -w(rng));
    }
    int row = p.add_constraint("cap", Relation::LessEqual, 5.0 * n);
    for (int j = 0; j < n; ++j) p.add_coeff(row, j, w(rng));
    return p;
}

void lp_solve(benchmark::State& state) {
    Problem p = transport_lp(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Solution s = solve_lp(p);
        benchmark::DoNotOptimize(s.objective);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(lp_solve)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void milp_solve(benchmark::State& state) {
    Problem p = knapsack_milp(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Solution s = solve_milp(p);
        benchmark::DoNotOptimize(s.objective);
    }
}
BENCHMARK(milp_solve)->DenseRange(6, 14, 4);

}  // namespace
