#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <vector>

#include "gridplan/milp/solver.hpp"

// Best-bound branch-and-bound over binary variables.  Nodes carry the bound
// overrides accumulated on their path; every node LP is solved from scratch.
// Deterministic: most-fractional branching with lowest-index tie-break,
// best-bound node selection with creation-order tie-break, down child first.

namespace gridplan::milp {

namespace {

struct Node {
    double bound;
    std::int64_t id;
    std::vector<std::pair<int, int>> fixes;  // (binary var index, 0 or 1)
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.id > b.id;                                // then FIFO
    }
};

bool gap_closed(double incumbent, double bound, double rel_gap) {
    return incumbent - bound <= rel_gap * std::max(1.0, std::abs(incumbent));
}

}  // namespace

Solution solve_milp(const Problem& problem, const SolverConfig& config) {
    std::vector<int> binaries;
    for (int j = 0; j < problem.num_variables(); ++j) {
        if (problem.variable(j).kind == VarKind::Binary) binaries.push_back(j);
    }

    const auto t_start = std::chrono::steady_clock::now();
    auto time_up = [&] {
        if (config.time_limit_seconds <= 0.0) return false;
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t_start;
        return dt.count() > config.time_limit_seconds;
    };

    Problem relaxed = problem;  // bounds mutated per node

    auto solve_node = [&](const std::vector<std::pair<int, int>>& fixes) {
        for (int j : binaries) {
            relaxed.variable(j).lower = problem.variable(j).lower;
            relaxed.variable(j).upper = problem.variable(j).upper;
        }
        for (auto [j, v] : fixes) relaxed.fix_variable(j, v);
        return solve_lp(relaxed, config);
    };

    Solution result;
    result.node_count = 0;

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    std::int64_t next_id = 0;

    Solution root = solve_node({});
    ++result.node_count;
    if (root.status == Status::Infeasible || root.status == Status::Unbounded ||
        root.status == Status::Numerical) {
        result.status = root.status;
        return result;
    }
    if (binaries.empty()) {
        root.node_count = 1;
        return root;
    }

    double incumbent_obj = kInf;
    std::vector<double> incumbent;

    auto most_fractional = [&](const std::vector<double>& x) {
        int pick = -1;
        double best = config.integrality_tol;
        for (int j : binaries) {
            double f = x[j] - std::floor(x[j]);
            double dist = std::min(f, 1.0 - f);
            if (dist > best + 1e-15) {
                best = dist;
                pick = j;
            }
        }
        return pick;
    };

    auto consider = [&](Solution& node_sol, const std::vector<std::pair<int, int>>& fixes) {
        int frac = most_fractional(node_sol.values);
        if (frac < 0) {
            // Integral: round binaries exactly and accept as incumbent.
            for (int j : binaries) node_sol.values[j] = std::round(node_sol.values[j]);
            if (node_sol.objective < incumbent_obj) {
                incumbent_obj = node_sol.objective;
                incumbent = node_sol.values;
            }
            return;
        }
        for (int branch_val : {0, 1}) {
            Node child;
            child.bound = node_sol.objective;
            child.id = next_id++;
            child.fixes = fixes;
            child.fixes.emplace_back(frac, branch_val);
            open.push(std::move(child));
        }
    };

    consider(root, {});

    bool hit_limit = false;
    while (!open.empty()) {
        if (result.node_count >= config.node_limit || time_up()) {
            hit_limit = true;
            break;
        }
        Node node = open.top();
        if (incumbent_obj < kInf && gap_closed(incumbent_obj, node.bound, config.mip_gap)) break;
        open.pop();

        Solution sol = solve_node(node.fixes);
        ++result.node_count;
        if (sol.status == Status::Numerical) {
            result.status = Status::Numerical;
            return result;
        }
        if (sol.status != Status::Optimal) continue;  // infeasible child: prune
        if (incumbent_obj < kInf && gap_closed(incumbent_obj, sol.objective, config.mip_gap))
            continue;
        consider(sol, node.fixes);
    }

    if (incumbent_obj < kInf) {
        result.values = std::move(incumbent);
        result.objective = incumbent_obj;
        if (hit_limit) {
            result.status = Status::Limit;
            result.bound = open.empty() ? incumbent_obj : std::min(open.top().bound, incumbent_obj);
        } else {
            result.status = Status::Optimal;
            result.bound = open.empty() ? incumbent_obj : std::min(open.top().bound, incumbent_obj);
        }
    } else {
        result.status = hit_limit ? Status::Limit : Status::Infeasible;
        result.bound = open.empty() ? kInf : open.top().bound;
    }
    return result;
}

}  // namespace gridplan::milp
