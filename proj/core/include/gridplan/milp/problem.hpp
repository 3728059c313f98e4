#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gridplan::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    VarKind kind = VarKind::Continuous;
};

struct Constraint {
    std::string name;
    // Sparse coefficient list (variable index, coefficient), assembly order.
    std::vector<std::pair<int, double>> coeffs;
    Relation relation = Relation::LessEqual;
    double rhs = 0.0;
};

// A linear program / mixed binary program.  The objective sense is always
// minimize; flip signs upstream for maximization.
class Problem {
public:
    std::string name = "problem";

    int add_variable(const std::string& name, double lower, double upper,
                     VarKind kind = VarKind::Continuous);

    int add_constraint(const std::string& name, Relation rel, double rhs);
    void add_coeff(int constraint, int variable, double coeff);

    void set_objective_coeff(int variable, double coeff);
    void add_objective_coeff(int variable, double coeff);
    void set_objective_constant(double c) { objective_constant_ = c; }

    int num_variables() const { return static_cast<int>(vars_.size()); }
    int num_constraints() const { return static_cast<int>(cons_.size()); }

    const Variable& variable(int j) const { return vars_[j]; }
    Variable& variable(int j) { return vars_[j]; }
    const Constraint& constraint(int i) const { return cons_[i]; }
    Constraint& constraint(int i) { return cons_[i]; }
    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return cons_; }

    double objective_coeff(int j) const { return obj_[j]; }
    const std::vector<double>& objective() const { return obj_; }
    double objective_constant() const { return objective_constant_; }

    int variable_index(const std::string& name) const;  // -1 when absent

    // Convenience used by branch-and-bound and by fixtures.
    void fix_variable(int j, double value);

    // Checks the type invariants (name uniqueness, bound order, binaries in
    // [0,1], finite coefficients); returns the list of violations.
    std::vector<std::string> validate() const;
    void validate_or_throw() const;

    // Evaluates all constraints at `x` and returns the largest violation
    // (bound violations included); used for post-solve residual checks.
    double max_violation(const std::vector<double>& x) const;

    double eval_objective(const std::vector<double>& x) const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> cons_;
    std::vector<double> obj_;
    double objective_constant_ = 0.0;
    std::unordered_map<std::string, int> var_index_;
};

// Field-for-field equality up to coefficient canonicalization (entries sorted
// by variable, exact zeros dropped, duplicates merged).
bool structurally_equal(const Problem& a, const Problem& b);

}  // namespace gridplan::milp
