#include <cmath>
#include <random>

#include "doctest.h"
#include "gridplan/milp/problem.hpp"
#include "gridplan/milp/solver.hpp"

using namespace gridplan::milp;

namespace {

// Independent vertex oracle for 2-variable LPs: enumerate every intersection
// of two active constraints (rows as equalities plus bounds), keep the
// feasible ones, take the best objective.
struct Lp2Oracle {
    const Problem& p;

    bool feasible(double x0, double x1) const {
        const double tol = 1e-7;
        if (x0 < p.variable(0).lower - tol || x0 > p.variable(0).upper + tol) return false;
        if (x1 < p.variable(1).lower - tol || x1 > p.variable(1).upper + tol) return false;
        for (const auto& c : p.constraints()) {
            double lhs = 0.0;
            for (auto [j, a] : c.coeffs) lhs += a * (j == 0 ? x0 : x1);
            if (c.relation == Relation::LessEqual && lhs > c.rhs + tol) return false;
            if (c.relation == Relation::GreaterEqual && lhs < c.rhs - tol) return false;
            if (c.relation == Relation::Equal && std::abs(lhs - c.rhs) > tol) return false;
        }
        return true;
    }

    // Returns true when a feasible vertex exists; best holds the objective.
    bool best_vertex(double& best) const {
        struct Line {
            double a0, a1, rhs;
        };
        std::vector<Line> lines;
        for (const auto& c : p.constraints()) {
            double a0 = 0.0, a1 = 0.0;
            for (auto [j, a] : c.coeffs) (j == 0 ? a0 : a1) += a;
            lines.push_back({a0, a1, c.rhs});
        }
        for (int j = 0; j < 2; ++j) {
            const auto& v = p.variable(j);
            if (v.lower != -kInf)
                lines.push_back({j == 0 ? 1.0 : 0.0, j == 0 ? 0.0 : 1.0, v.lower});
            if (v.upper != kInf)
                lines.push_back({j == 0 ? 1.0 : 0.0, j == 0 ? 0.0 : 1.0, v.upper});
        }
        bool found = false;
        best = kInf;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            for (std::size_t k = i + 1; k < lines.size(); ++k) {
                double det = lines[i].a0 * lines[k].a1 - lines[i].a1 * lines[k].a0;
                if (std::abs(det) < 1e-12) continue;
                double x0 = (lines[i].rhs * lines[k].a1 - lines[i].a1 * lines[k].rhs) / det;
                double x1 = (lines[i].a0 * lines[k].rhs - lines[i].rhs * lines[k].a0) / det;
                if (!feasible(x0, x1)) continue;
                found = true;
                best = std::min(best,
                                p.objective_coeff(0) * x0 + p.objective_coeff(1) * x1 +
                                    p.objective_constant());
            }
        }
        return found;
    }
};

// Brute force over all binary assignments with an LP on the continuous rest.
bool milp_enumeration(const Problem& p, const SolverConfig& cfg, double& best) {
    std::vector<int> binaries;
    for (int j = 0; j < p.num_variables(); ++j)
        if (p.variable(j).kind == VarKind::Binary) binaries.push_back(j);
    bool found = false;
    best = kInf;
    Problem fixed = p;
    for (std::int64_t mask = 0; mask < (1LL << binaries.size()); ++mask) {
        for (std::size_t b = 0; b < binaries.size(); ++b) {
            double v = (mask >> b) & 1 ? 1.0 : 0.0;
            int j = binaries[b];
            if (v < p.variable(j).lower || v > p.variable(j).upper) goto next_mask;
            fixed.fix_variable(j, v);
        }
        {
            Solution s = solve_lp(fixed, cfg);
            if (s.status == Status::Optimal) {
                found = true;
                best = std::min(best, s.objective);
            }
        }
    next_mask:
        for (int j : binaries) {
            fixed.variable(j).lower = p.variable(j).lower;
            fixed.variable(j).upper = p.variable(j).upper;
        }
    }
    return found;
}

}  // namespace

TEST_CASE("lp: single lower-bound row") {
    Problem p;
    int x = p.add_variable("x", 0, 10);
    p.set_objective_coeff(x, 1.0);
    int row = p.add_constraint("c1", Relation::GreaterEqual, 3.0);
    p.add_coeff(row, x, 1.0);
    Solution s = solve_lp(p);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(s.values[x] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("lp: two-variable vertex optimum") {
    // min -x-y st x+2y <= 4, 3x+y <= 6, x,y >= 0 -> (1.6, 1.2), obj -2.8
    Problem p;
    int x = p.add_variable("x", 0, kInf);
    int y = p.add_variable("y", 0, kInf);
    p.set_objective_coeff(x, -1.0);
    p.set_objective_coeff(y, -1.0);
    int c1 = p.add_constraint("c1", Relation::LessEqual, 4.0);
    p.add_coeff(c1, x, 1.0);
    p.add_coeff(c1, y, 2.0);
    int c2 = p.add_constraint("c2", Relation::LessEqual, 6.0);
    p.add_coeff(c2, x, 3.0);
    p.add_coeff(c2, y, 1.0);
    Solution s = solve_lp(p);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective == doctest::Approx(-2.8).epsilon(1e-9));
    CHECK(s.values[x] == doctest::Approx(1.6).epsilon(1e-9));
    CHECK(s.values[y] == doctest::Approx(1.2).epsilon(1e-9));
}

TEST_CASE("lp: contradictory rows are infeasible") {
    Problem p;
    int x = p.add_variable("x", 0, 10);
    p.set_objective_coeff(x, 1.0);
    int c1 = p.add_constraint("c1", Relation::GreaterEqual, 3.0);
    p.add_coeff(c1, x, 1.0);
    int c2 = p.add_constraint("c2", Relation::LessEqual, 2.0);
    p.add_coeff(c2, x, 1.0);
    CHECK(solve_lp(p).status == Status::Infeasible);
}

TEST_CASE("lp: unbounded detection") {
    Problem p;
    int x = p.add_variable("x", 0, kInf);
    p.set_objective_coeff(x, -1.0);
    CHECK(solve_lp(p).status == Status::Unbounded);
}

TEST_CASE("lp: equality row with a free variable") {
    // min x st x - y = 2, y in [0,5], x free -> x = 2 at y = 0.
    Problem p;
    int x = p.add_variable("x", -kInf, kInf);
    int y = p.add_variable("y", 0, 5);
    p.set_objective_coeff(x, 1.0);
    int c = p.add_constraint("c", Relation::Equal, 2.0);
    p.add_coeff(c, x, 1.0);
    p.add_coeff(c, y, -1.0);
    Solution s = solve_lp(p);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(s.values[x] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(s.values[y] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("lp: random 2-variable problems match the vertex oracle") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> rhs(-6, 12);
    std::uniform_int_distribution<int> nrows(1, 4);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        Problem p;
        p.add_variable("x0", 0, 8);
        p.add_variable("x1", 0, 8);
        p.set_objective_coeff(0, coef(rng));
        p.set_objective_coeff(1, coef(rng));
        int m = nrows(rng);
        for (int i = 0; i < m; ++i) {
            Relation rel = (trial + i) % 2 ? Relation::LessEqual : Relation::GreaterEqual;
            int row = p.add_constraint("c" + std::to_string(i), rel, rhs(rng));
            p.add_coeff(row, 0, coef(rng));
            p.add_coeff(row, 1, coef(rng));
        }
        Solution s = solve_lp(p);
        double oracle_best;
        bool oracle_feasible = Lp2Oracle{p}.best_vertex(oracle_best);
        if (oracle_feasible) {
            REQUIRE_MESSAGE(s.status == Status::Optimal, "trial ", trial);
            REQUIRE_MESSAGE(s.objective == doctest::Approx(oracle_best).epsilon(1e-7), "trial ",
                            trial);
            ++checked;
        } else {
            REQUIRE_MESSAGE(s.status == Status::Infeasible, "trial ", trial);
        }
    }
    CHECK(checked > 200);  // most random draws should be feasible
}

TEST_CASE("milp: two binaries with a knapsack row") {
    Problem p;
    int x1 = p.add_variable("x1", 0, 1, VarKind::Binary);
    int x2 = p.add_variable("x2", 0, 1, VarKind::Binary);
    p.set_objective_coeff(x1, -1.0);
    p.set_objective_coeff(x2, -2.0);
    int c = p.add_constraint("c", Relation::LessEqual, 1.5);
    p.add_coeff(c, x1, 1.0);
    p.add_coeff(c, x2, 1.0);
    Solution s = solve_milp(p);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(s.values[x1] == doctest::Approx(0.0));
    CHECK(s.values[x2] == doctest::Approx(1.0));
}

TEST_CASE("milp: all-continuous problem equals solve_lp") {
    Problem p;
    int x = p.add_variable("x", 0, 4);
    int y = p.add_variable("y", 0, 4);
    p.set_objective_coeff(x, -2.0);
    p.set_objective_coeff(y, -3.0);
    int c = p.add_constraint("c", Relation::LessEqual, 5.0);
    p.add_coeff(c, x, 1.0);
    p.add_coeff(c, y, 2.0);
    Solution lp = solve_lp(p);
    Solution mip = solve_milp(p);
    REQUIRE(lp.status == Status::Optimal);
    REQUIRE(mip.status == Status::Optimal);
    CHECK(mip.objective == doctest::Approx(lp.objective).epsilon(1e-12));
    CHECK(mip.node_count == 1);
}

TEST_CASE("milp: integral relaxation solves at the root") {
    // Totally unimodular: assignment-like rows give an integral relaxation.
    Problem p;
    int a = p.add_variable("a", 0, 1, VarKind::Binary);
    int b = p.add_variable("b", 0, 1, VarKind::Binary);
    p.set_objective_coeff(a, -1.0);
    p.set_objective_coeff(b, -1.0);
    int c = p.add_constraint("c", Relation::LessEqual, 1.0);
    p.add_coeff(c, a, 1.0);
    int d = p.add_constraint("d", Relation::LessEqual, 1.0);
    p.add_coeff(d, b, 1.0);
    Solution s = solve_milp(p);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.node_count == 1);
    CHECK(s.objective == doctest::Approx(-2.0));
}

TEST_CASE("milp: random problems match brute-force enumeration") {
    std::mt19937 rng(987654321);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> nbin(1, 8);
    std::uniform_int_distribution<int> ncont(0, 3);
    std::uniform_int_distribution<int> nrows(1, 6);
    std::uniform_int_distribution<int> rhs(-4, 10);
    SolverConfig cfg;
    for (int trial = 0; trial < 1000; ++trial) {
        Problem p;
        int nb = nbin(rng), nc = ncont(rng);
        for (int j = 0; j < nb; ++j)
            p.add_variable("b" + std::to_string(j), 0, 1, VarKind::Binary);
        for (int j = 0; j < nc; ++j) {
            // Mix of nonnegative, partly negative and unbounded-above vars.
            double lo = trial % 3 == 0 ? -4.0 : 0.0;
            double hi = trial % 5 == 0 ? kInf : 6.0;
            p.add_variable("x" + std::to_string(j), lo, hi);
        }
        for (int j = 0; j < nb + nc; ++j) {
            int c = coef(rng);
            // Nonnegative cost on unbounded-above variables keeps the
            // minimization bounded, so optimal/infeasible covers every case.
            if (p.variable(j).upper == kInf && c < 0) c = -c;
            p.set_objective_coeff(j, c);
        }
        int m = nrows(rng);
        for (int i = 0; i < m; ++i) {
            Relation rel = (trial + i) % 3 == 0 ? Relation::GreaterEqual
                         : (trial + i) % 7 == 0 ? Relation::Equal
                                                : Relation::LessEqual;
            int row = p.add_constraint("c" + std::to_string(i), rel, rhs(rng));
            for (int j = 0; j < nb + nc; ++j) {
                int a = coef(rng);
                if (a != 0) p.add_coeff(row, j, a);
            }
        }
        Solution s = solve_milp(p, cfg);
        double oracle_best;
        bool oracle_feasible = milp_enumeration(p, cfg, oracle_best);
        if (oracle_feasible) {
            REQUIRE_MESSAGE(s.status == Status::Optimal, "trial ", trial);
            double rel_err = std::abs(s.objective - oracle_best) /
                             std::max(1.0, std::abs(oracle_best));
            REQUIRE_MESSAGE(rel_err <= 1e-6, "trial ", trial, " got ", s.objective, " want ",
                            oracle_best);
            // The incumbent must re-verify against the problem data.
            REQUIRE(p.max_violation(s.values) <= 1e-6);
        } else {
            REQUIRE_MESSAGE(s.status == Status::Infeasible, "trial ", trial);
        }
    }
}

TEST_CASE("milp: weak duality of the root relaxation") {
    std::mt19937 rng(13579);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        Problem p;
        for (int j = 0; j < 5; ++j) p.add_variable("b" + std::to_string(j), 0, 1, VarKind::Binary);
        for (int j = 0; j < 5; ++j) p.set_objective_coeff(j, coef(rng));
        int row = p.add_constraint("c", Relation::GreaterEqual, 2.0);
        for (int j = 0; j < 5; ++j) p.add_coeff(row, j, 1.0);
        Solution lp = solve_lp(p);
        Solution mip = solve_milp(p);
        REQUIRE(lp.status == Status::Optimal);
        REQUIRE(mip.status == Status::Optimal);
        CHECK(lp.objective <= mip.objective + 1e-9);
    }
}

TEST_CASE("milp: objective scaling preserves the argmin") {
    Problem p;
    for (int j = 0; j < 4; ++j) p.add_variable("b" + std::to_string(j), 0, 1, VarKind::Binary);
    double c[] = {3.0, -2.0, 1.0, -4.0};
    for (int j = 0; j < 4; ++j) p.set_objective_coeff(j, c[j]);
    int row = p.add_constraint("r", Relation::LessEqual, 2.0);
    for (int j = 0; j < 4; ++j) p.add_coeff(row, j, 1.0);
    Solution base = solve_milp(p);
    REQUIRE(base.status == Status::Optimal);
    for (double alpha : {2.0, 10.0, 0.5}) {
        Problem q = p;
        for (int j = 0; j < 4; ++j) q.set_objective_coeff(j, alpha * c[j]);
        Solution s = solve_milp(q);
        REQUIRE(s.status == Status::Optimal);
        CHECK(s.objective == doctest::Approx(alpha * base.objective).epsilon(1e-9));
        // Re-verify the scaled incumbent under the original objective.
        CHECK(p.eval_objective(s.values) == doctest::Approx(base.objective).epsilon(1e-9));
    }
}

TEST_CASE("milp: determinism across repeated runs") {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> coef(-5, 5);
    Problem p;
    for (int j = 0; j < 10; ++j) p.add_variable("b" + std::to_string(j), 0, 1, VarKind::Binary);
    for (int j = 0; j < 10; ++j) p.set_objective_coeff(j, coef(rng));
    for (int i = 0; i < 4; ++i) {
        int row = p.add_constraint("c" + std::to_string(i), Relation::LessEqual, 3.0 + i);
        for (int j = 0; j < 10; ++j) p.add_coeff(row, j, (j * 7 + i * 3) % 5 - 2);
    }
    Solution a = solve_milp(p);
    Solution b = solve_milp(p);
    REQUIRE(a.status == b.status);
    CHECK(a.node_count == b.node_count);
    CHECK(a.objective == b.objective);
    CHECK(a.values == b.values);
}

TEST_CASE("lp: classic degenerate cycling example terminates at the optimum") {
    // Beale's example: Dantzig pricing cycles without an anti-cycling rule.
    Problem p;
    int x4 = p.add_variable("x4", 0, kInf);
    int x5 = p.add_variable("x5", 0, kInf);
    int x6 = p.add_variable("x6", 0, kInf);
    int x7 = p.add_variable("x7", 0, kInf);
    p.set_objective_coeff(x4, -0.75);
    p.set_objective_coeff(x5, 150.0);
    p.set_objective_coeff(x6, -0.02);
    p.set_objective_coeff(x7, 6.0);
    int c1 = p.add_constraint("c1", Relation::LessEqual, 0.0);
    p.add_coeff(c1, x4, 0.25);
    p.add_coeff(c1, x5, -60.0);
    p.add_coeff(c1, x6, -1.0 / 25.0);
    p.add_coeff(c1, x7, 9.0);
    int c2 = p.add_constraint("c2", Relation::LessEqual, 0.0);
    p.add_coeff(c2, x4, 0.5);
    p.add_coeff(c2, x5, -90.0);
    p.add_coeff(c2, x6, -1.0 / 50.0);
    p.add_coeff(c2, x7, 3.0);
    int c3 = p.add_constraint("c3", Relation::LessEqual, 1.0);
    p.add_coeff(c3, x6, 1.0);
    Solution s = solve_lp(p);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective == doctest::Approx(-0.05).epsilon(1e-9));
}

TEST_CASE("milp: time limit reports a limit status") {
    Problem p;
    for (int j = 0; j < 14; ++j) p.add_variable("b" + std::to_string(j), 0, 1, VarKind::Binary);
    for (int j = 0; j < 14; ++j) p.set_objective_coeff(j, -(1.0 + 0.13 * j));
    int row = p.add_constraint("c", Relation::LessEqual, 6.5);
    for (int j = 0; j < 14; ++j) p.add_coeff(row, j, 1.0);
    SolverConfig cfg;
    cfg.time_limit_seconds = 1e-9;
    Solution s = solve_milp(p, cfg);
    CHECK(s.status == Status::Limit);
}

TEST_CASE("milp: node limit reports a limit status") {
    Problem p;
    for (int j = 0; j < 10; ++j) p.add_variable("b" + std::to_string(j), 0, 1, VarKind::Binary);
    for (int j = 0; j < 10; ++j) p.set_objective_coeff(j, -(1.0 + 0.1 * j));
    int row = p.add_constraint("c", Relation::LessEqual, 4.5);
    for (int j = 0; j < 10; ++j) p.add_coeff(row, j, 1.0);
    SolverConfig cfg;
    cfg.node_limit = 2;
    Solution s = solve_milp(p, cfg);
    CHECK(s.status == Status::Limit);
}
