#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridplan/milp/problem.hpp"

namespace gridplan::milp {

enum class Status {
    Optimal,
    Infeasible,
    Unbounded,
    Limit,      // node or time limit hit; incumbent may be present
    Numerical,  // numerical failure; never a silent wrong answer
};

std::string to_string(Status s);

struct SolverConfig {
    double feasibility_tol = 1e-7;
    double integrality_tol = 1e-6;
    double mip_gap = 1e-6;              // relative
    std::int64_t node_limit = 1'000'000;
    double time_limit_seconds = 0.0;    // 0 = no limit
};

struct Solution {
    Status status = Status::Numerical;
    std::vector<double> values;  // structural variables; empty unless incumbent
    double objective = 0.0;
    double bound = 0.0;          // best dual bound (equals objective at Optimal)
    std::int64_t node_count = 0;

    bool has_solution() const { return !values.empty(); }
};

// Bounded-variable revised simplex on the problem with integrality relaxed.
Solution solve_lp(const Problem& problem, const SolverConfig& config = {});

// Best-bound branch-and-bound over the binary variables; deterministic for a
// fixed config (most-fractional branching, lowest-index tie-breaks, FIFO on
// equal node bounds).
Solution solve_milp(const Problem& problem, const SolverConfig& config = {});

}  // namespace gridplan::milp
