#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gridplan/milp/solver.hpp"

// Bounded-variable revised simplex.
//
// Computational form: the problem rows become equalities A z = b over
// z = [structural | slack], with slack bounds encoding the relation
// (<=: [0,inf), >=: (-inf,0], =: [0,0]).  Phase 1 introduces one artificial
// column per infeasible row and minimizes their sum.  The basis is kept as a
// dense LU factorization plus product-form eta updates, refactorized
// periodically.  Pricing is Dantzig with lowest-index tie-break; after a long
// degenerate stall it falls back to Bland's rule until progress resumes.

namespace gridplan::milp {

std::string to_string(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
        case Status::Limit: return "limit";
        case Status::Numerical: return "numerical";
    }
    return "unknown";
}

namespace {

constexpr int kRefactorEvery = 32;
constexpr int kStallLimit = 200;
constexpr double kPivotTol = 1e-9;

struct SparseCol {
    std::vector<int> row;
    std::vector<double> val;
};

// Dense LU with partial pivoting for the basis matrix.
class DenseLU {
public:
    bool factor(int m, const std::vector<double>& colmajor) {
        m_ = m;
        a_ = colmajor;  // column-major m x m
        perm_.resize(m);
        for (int i = 0; i < m; ++i) perm_[i] = i;
        for (int k = 0; k < m; ++k) {
            int piv = k;
            double best = std::abs(at(k, k));
            for (int i = k + 1; i < m; ++i) {
                double v = std::abs(at(i, k));
                if (v > best) {
                    best = v;
                    piv = i;
                }
            }
            if (best < 1e-12) return false;
            if (piv != k) {
                std::swap(perm_[k], perm_[piv]);
                for (int j = 0; j < m; ++j) std::swap(at(k, j), at(piv, j));
            }
            double d = at(k, k);
            for (int i = k + 1; i < m; ++i) {
                double l = at(i, k) / d;
                at(i, k) = l;
                if (l != 0.0) {
                    for (int j = k + 1; j < m; ++j) at(i, j) -= l * at(k, j);
                }
            }
        }
        return true;
    }

    // Solve L U x = P b.
    void solve(std::vector<double>& x, const std::vector<double>& b) const {
        tmp_.resize(m_);
        for (int i = 0; i < m_; ++i) tmp_[i] = b[perm_[i]];
        for (int k = 0; k < m_; ++k) {
            double xk = tmp_[k];
            if (xk != 0.0) {
                for (int i = k + 1; i < m_; ++i) tmp_[i] -= at(i, k) * xk;
            }
        }
        for (int k = m_ - 1; k >= 0; --k) {
            double s = tmp_[k];
            for (int j = k + 1; j < m_; ++j) s -= at(k, j) * tmp_[j];
            tmp_[k] = s / at(k, k);
        }
        x = tmp_;
    }

    // Solve (P^T L U)^T y = b: U^T w = b, L^T v = w, y = P^T v.
    void solve_transpose(std::vector<double>& y, const std::vector<double>& b) const {
        tmp_ = b;
        for (int k = 0; k < m_; ++k) {
            double s = tmp_[k];
            for (int i = 0; i < k; ++i) s -= at(i, k) * tmp_[i];
            tmp_[k] = s / at(k, k);
        }
        for (int k = m_ - 1; k >= 0; --k) {
            double s = tmp_[k];
            for (int i = k + 1; i < m_; ++i) s -= at(i, k) * tmp_[i];
            tmp_[k] = s;
        }
        y.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) y[perm_[i]] = tmp_[i];
    }

private:
    double& at(int i, int j) { return a_[static_cast<std::size_t>(j) * m_ + i]; }
    double at(int i, int j) const { return a_[static_cast<std::size_t>(j) * m_ + i]; }

    int m_ = 0;
    std::vector<double> a_;
    std::vector<int> perm_;
    mutable std::vector<double> tmp_;
};

struct Eta {
    int r;
    std::vector<double> col;  // ftran'd entering column at pivot time
};

enum class VStat : std::uint8_t { Basic, AtLower, AtUpper, FreeZero };

class Simplex {
public:
    Simplex(const Problem& p, const SolverConfig& cfg) : cfg_(cfg) {
        m_ = p.num_constraints();
        nstruct_ = p.num_variables();
        n_ = nstruct_ + m_;
        cols_.resize(n_);
        lo_.resize(n_);
        hi_.resize(n_);
        cost_.assign(n_, 0.0);
        b_.resize(m_);

        for (int j = 0; j < nstruct_; ++j) {
            lo_[j] = p.variable(j).lower;
            hi_[j] = p.variable(j).upper;
            cost_[j] = p.objective_coeff(j);
        }
        for (int i = 0; i < m_; ++i) {
            const auto& c = p.constraint(i);
            b_[i] = c.rhs;
            for (const auto& [j, a] : c.coeffs) {
                if (a != 0.0) {
                    cols_[j].row.push_back(i);
                    cols_[j].val.push_back(a);
                }
            }
            int s = nstruct_ + i;
            cols_[s].row.push_back(i);
            cols_[s].val.push_back(1.0);
            switch (c.relation) {
                case Relation::LessEqual: lo_[s] = 0.0; hi_[s] = kInf; break;
                case Relation::GreaterEqual: lo_[s] = -kInf; hi_[s] = 0.0; break;
                case Relation::Equal: lo_[s] = 0.0; hi_[s] = 0.0; break;
            }
        }
        scale_ = 1.0;
        for (int i = 0; i < m_; ++i) scale_ = std::max(scale_, std::abs(b_[i]));
        obj_scale_ = 1.0;
        for (int j = 0; j < nstruct_; ++j) obj_scale_ = std::max(obj_scale_, std::abs(cost_[j]));
    }

    // Runs both phases.  On success `x` holds structural variable values.
    Status solve(std::vector<double>& x, double& objective) {
        setup_start();
        if (needs_phase1_) {
            phase1_ = true;
            Status st = iterate(phase1_cost_);
            phase1_ = false;
            if (st != Status::Optimal) return st == Status::Unbounded ? Status::Numerical : st;
            double infeas = current_objective(phase1_cost_);
            if (infeas > cfg_.feasibility_tol * (1.0 + scale_) * 10.0) return Status::Infeasible;
            // Artificials are done; pin them to zero for phase 2.
            for (int j = n_; j < n_ + n_art_; ++j) {
                lo_[j] = 0.0;
                hi_[j] = 0.0;
                if (stat_[j] != VStat::Basic) set_nonbasic_at(j, VStat::AtLower);
            }
        }
        Status st = iterate(cost_);
        if (st != Status::Optimal) return st;
        extract(x);
        objective = 0.0;
        for (int j = 0; j < nstruct_; ++j) objective += cost_[j] * x[j];
        return Status::Optimal;
    }

private:
    void set_nonbasic_at(int j, VStat s) { stat_[j] = s; }

    double nonbasic_value(int j) const {
        switch (stat_[j]) {
            case VStat::AtLower: return lo_[j];
            case VStat::AtUpper: return hi_[j];
            case VStat::FreeZero: return 0.0;
            case VStat::Basic: break;
        }
        return 0.0;
    }

    void setup_start() {
        // Nonbasic start: every structural/slack at its finite bound nearest
        // zero (free variables at zero), slack basic where that is feasible,
        // artificial basic elsewhere.
        stat_.assign(n_, VStat::AtLower);
        for (int j = 0; j < n_; ++j) {
            if (lo_[j] == -kInf && hi_[j] == kInf) stat_[j] = VStat::FreeZero;
            else if (lo_[j] == -kInf) stat_[j] = VStat::AtUpper;
            else if (hi_[j] == kInf) stat_[j] = VStat::AtLower;
            else stat_[j] = std::abs(lo_[j]) <= std::abs(hi_[j]) ? VStat::AtLower : VStat::AtUpper;
        }
        std::vector<double> act(m_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (j >= nstruct_) continue;  // slack handled below
            double v = nonbasic_value(j);
            if (v != 0.0) {
                for (std::size_t k = 0; k < cols_[j].row.size(); ++k)
                    act[cols_[j].row[k]] += cols_[j].val[k] * v;
            }
        }
        basis_.resize(m_);
        xb_.resize(m_);
        needs_phase1_ = false;
        n_art_ = 0;
        for (int i = 0; i < m_; ++i) {
            int s = nstruct_ + i;
            double want = b_[i] - act[i];  // slack value making the row tight
            if (want >= lo_[s] - 1e-12 && want <= hi_[s] + 1e-12) {
                basis_[i] = s;
                stat_[s] = VStat::Basic;
                xb_[i] = std::clamp(want, lo_[s], hi_[s]);
            } else {
                // Slack pinned at its nearest bound; artificial absorbs the rest.
                double pin = want < lo_[s] ? lo_[s] : hi_[s];
                stat_[s] = pin == lo_[s] ? VStat::AtLower : VStat::AtUpper;
                double resid = want - pin;
                int aj = n_ + n_art_;
                SparseCol ac;
                ac.row.push_back(i);
                ac.val.push_back(resid >= 0.0 ? 1.0 : -1.0);
                art_cols_.push_back(ac);
                lo_.push_back(0.0);
                hi_.push_back(kInf);
                cost_.push_back(0.0);
                stat_.push_back(VStat::Basic);
                basis_[i] = aj;
                xb_[i] = std::abs(resid);
                ++n_art_;
                needs_phase1_ = true;
            }
        }
        if (needs_phase1_) {
            phase1_cost_.assign(n_ + n_art_, 0.0);
            for (int j = n_; j < n_ + n_art_; ++j) phase1_cost_[j] = 1.0;
        }
        refactorize();
    }

    const SparseCol& column(int j) const {
        return j < n_ ? cols_[j] : art_cols_[j - n_];
    }

    int total_cols() const { return n_ + n_art_; }

    bool refactorize() {
        std::vector<double> bm(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            const auto& c = column(basis_[i]);
            for (std::size_t k = 0; k < c.row.size(); ++k)
                bm[static_cast<std::size_t>(i) * m_ + c.row[k]] += c.val[k];
        }
        etas_.clear();
        if (!lu_.factor(m_, bm)) return false;
        recompute_basics();
        return true;
    }

    void recompute_basics() {
        std::vector<double> rhs = b_;
        for (int j = 0; j < total_cols(); ++j) {
            if (stat_[j] == VStat::Basic) continue;
            double v = nonbasic_value(j);
            if (v != 0.0) {
                const auto& c = column(j);
                for (std::size_t k = 0; k < c.row.size(); ++k) rhs[c.row[k]] -= c.val[k] * v;
            }
        }
        ftran_from_scratch(xb_, rhs);
    }

    void ftran_from_scratch(std::vector<double>& out, const std::vector<double>& v) const {
        lu_.solve(out, v);
        for (const auto& e : etas_) apply_eta(out, e);
    }

    static void apply_eta(std::vector<double>& w, const Eta& e) {
        double wr = w[e.r] / e.col[e.r];
        if (wr != 0.0) {
            for (int i = 0; i < static_cast<int>(w.size()); ++i) {
                if (i == e.r) continue;
                double c = e.col[i];
                if (c != 0.0) w[i] -= c * wr;
            }
        }
        w[e.r] = wr;
    }

    static void apply_eta_transpose(std::vector<double>& w, const Eta& e) {
        double s = w[e.r];
        for (int i = 0; i < static_cast<int>(w.size()); ++i) {
            if (i == e.r) continue;
            double c = e.col[i];
            if (c != 0.0) s -= c * w[i];
        }
        w[e.r] = s / e.col[e.r];
    }

    void ftran(std::vector<double>& out, const SparseCol& a) const {
        std::vector<double> dense(m_, 0.0);
        for (std::size_t k = 0; k < a.row.size(); ++k) dense[a.row[k]] += a.val[k];
        ftran_from_scratch(out, dense);
    }

    void btran(std::vector<double>& y, const std::vector<double>& cb) const {
        std::vector<double> w = cb;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) apply_eta_transpose(w, *it);
        lu_.solve_transpose(y, w);
    }

    double current_objective(const std::vector<double>& cost) const {
        double v = 0.0;
        for (int i = 0; i < m_; ++i) v += cost[basis_[i]] * xb_[i];
        for (int j = 0; j < total_cols(); ++j) {
            if (stat_[j] != VStat::Basic && cost[j] != 0.0) v += cost[j] * nonbasic_value(j);
        }
        return v;
    }

    Status iterate(const std::vector<double>& cost_in) {
        std::vector<double> cost(cost_in);
        cost.resize(total_cols(), phase1_ ? 1.0 : 0.0);
        if (phase1_ && static_cast<int>(phase1_cost_.size()) == total_cols()) cost = phase1_cost_;

        const double dual_tol = 1e-9 * (1.0 + (phase1_ ? 1.0 : obj_scale_));
        std::vector<double> y(m_), cb(m_), alpha(m_);
        int stall = 0;
        bool bland = false;
        std::int64_t iter_limit = std::min<std::int64_t>(400000, 2000 + 40LL * (m_ + n_));
        double last_obj = kInf;

        for (std::int64_t iter = 0; iter < iter_limit; ++iter) {
            if (static_cast<int>(etas_.size()) >= kRefactorEvery) {
                if (!refactorize()) return Status::Numerical;
            }
            for (int i = 0; i < m_; ++i) cb[i] = cost[basis_[i]];
            btran(y, cb);

            // Pricing.
            int enter = -1;
            double best = 0.0;
            int dir = 0;
            for (int j = 0; j < total_cols(); ++j) {
                VStat s = stat_[j];
                if (s == VStat::Basic) continue;
                if (lo_[j] == hi_[j]) continue;  // pinned
                const auto& c = column(j);
                double d = cost[j];
                for (std::size_t k = 0; k < c.row.size(); ++k) d -= y[c.row[k]] * c.val[k];
                int jdir = 0;
                if ((s == VStat::AtLower || s == VStat::FreeZero) && d < -dual_tol) jdir = +1;
                else if (s == VStat::AtUpper && d > dual_tol) jdir = -1;
                else if (s == VStat::FreeZero && d > dual_tol) jdir = -1;
                if (jdir == 0) continue;
                if (bland) { enter = j; dir = jdir; break; }
                double mag = std::abs(d);
                if (mag > best + 1e-15) {
                    best = mag;
                    enter = j;
                    dir = jdir;
                }
            }
            if (enter < 0) return Status::Optimal;

            ftran(alpha, column(enter));

            // Ratio test: entering moves theta >= 0 in direction `dir`;
            // basic i changes by -dir * theta * alpha[i].
            double theta = kInf;
            int leave_row = -1;
            int leave_to_upper = 0;
            double own_range = hi_[enter] - lo_[enter];  // may be inf
            if (own_range < theta) {
                theta = own_range;
                leave_row = -2;  // bound flip
            }
            for (int i = 0; i < m_; ++i) {
                double a = dir * alpha[i];
                if (a > kPivotTol) {
                    double lim = lo_[basis_[i]] == -kInf ? kInf : (xb_[i] - lo_[basis_[i]]) / a;
                    if (lim < theta - 1e-12 ||
                        (lim < theta + 1e-12 && better_leaving(i, leave_row, alpha, bland))) {
                        theta = std::max(lim, 0.0);
                        leave_row = i;
                        leave_to_upper = 0;
                    }
                } else if (a < -kPivotTol) {
                    double lim = hi_[basis_[i]] == kInf ? kInf : (xb_[i] - hi_[basis_[i]]) / a;
                    if (lim < theta - 1e-12 ||
                        (lim < theta + 1e-12 && better_leaving(i, leave_row, alpha, bland))) {
                        theta = std::max(lim, 0.0);
                        leave_row = i;
                        leave_to_upper = 1;
                    }
                }
            }
            if (theta == kInf) return phase1_ ? Status::Numerical : Status::Unbounded;

            // Apply the step.
            if (theta != 0.0) {
                for (int i = 0; i < m_; ++i) xb_[i] -= dir * theta * alpha[i];
            }
            if (leave_row == -2) {
                stat_[enter] = dir > 0 ? VStat::AtUpper : VStat::AtLower;
            } else {
                int leave_var = basis_[leave_row];
                double enter_val = nonbasic_value(enter) + dir * theta;
                stat_[leave_var] = leave_to_upper ? VStat::AtUpper : VStat::AtLower;
                if (lo_[leave_var] == -kInf && hi_[leave_var] == kInf)
                    stat_[leave_var] = VStat::FreeZero;
                basis_[leave_row] = enter;
                stat_[enter] = VStat::Basic;
                xb_[leave_row] = enter_val;
                Eta e;
                e.r = leave_row;
                e.col = alpha;
                if (std::abs(alpha[leave_row]) < kPivotTol) {
                    if (!refactorize()) return Status::Numerical;
                } else {
                    etas_.push_back(std::move(e));
                }
            }

            // Degeneracy bookkeeping for the Bland fallback.
            double obj = current_objective(cost);
            if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
                stall = 0;
                bland = false;
            } else if (++stall > kStallLimit) {
                bland = true;
            }
            last_obj = obj;
        }
        return Status::Numerical;  // iteration limit; never report a wrong answer
    }

    bool better_leaving(int i, int current, const std::vector<double>& alpha, bool bland) const {
        if (current < 0) return true;
        if (bland) return basis_[i] < basis_[current];  // anti-cycling tie-break
        return std::abs(alpha[i]) > std::abs(alpha[current]);
    }

    void extract(std::vector<double>& x) const {
        x.assign(nstruct_, 0.0);
        for (int j = 0; j < nstruct_; ++j) {
            if (stat_[j] != VStat::Basic) x[j] = nonbasic_value(j);
        }
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < nstruct_) x[basis_[i]] = xb_[i];
        }
    }

    SolverConfig cfg_;
    int m_ = 0, nstruct_ = 0, n_ = 0, n_art_ = 0;
    std::vector<SparseCol> cols_, art_cols_;
    std::vector<double> lo_, hi_, cost_, b_, phase1_cost_;
    std::vector<VStat> stat_;
    std::vector<int> basis_;
    std::vector<double> xb_;
    DenseLU lu_;
    std::vector<Eta> etas_;
    bool needs_phase1_ = false;
    bool phase1_ = false;
    double scale_ = 1.0, obj_scale_ = 1.0;
};

}  // namespace

Solution solve_lp(const Problem& problem, const SolverConfig& config) {
    Solution sol;
    if (problem.num_constraints() == 0 && problem.num_variables() == 0) {
        sol.status = Status::Optimal;
        sol.objective = sol.bound = problem.objective_constant();
        return sol;
    }
    Simplex spx(problem, config);
    std::vector<double> x;
    double obj = 0.0;
    Status st = spx.solve(x, obj);
    sol.status = st;
    if (st == Status::Optimal) {
        // Verify against the original data; a violated answer is reported as
        // a numerical failure, never returned silently.
        double viol = problem.max_violation(x);
        if (viol > std::max(config.feasibility_tol * 10.0, 1e-6)) {
            sol.status = Status::Numerical;
            return sol;
        }
        sol.values = std::move(x);
        sol.objective = obj + problem.objective_constant();
        sol.bound = sol.objective;
    }
    return sol;
}

}  // namespace gridplan::milp
