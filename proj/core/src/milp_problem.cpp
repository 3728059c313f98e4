#include "gridplan/milp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gridplan/errors.hpp"

namespace gridplan::milp {

int Problem::add_variable(const std::string& name, double lower, double upper, VarKind kind) {
    int idx = static_cast<int>(vars_.size());
    vars_.push_back(Variable{name, lower, upper, kind});
    obj_.push_back(0.0);
    var_index_.emplace(name, idx);
    return idx;
}

int Problem::add_constraint(const std::string& name, Relation rel, double rhs) {
    int idx = static_cast<int>(cons_.size());
    cons_.push_back(Constraint{name, {}, rel, rhs});
    return idx;
}

void Problem::add_coeff(int constraint, int variable, double coeff) {
    cons_[constraint].coeffs.emplace_back(variable, coeff);
}

void Problem::set_objective_coeff(int variable, double coeff) { obj_[variable] = coeff; }

void Problem::add_objective_coeff(int variable, double coeff) { obj_[variable] += coeff; }

int Problem::variable_index(const std::string& name) const {
    auto it = var_index_.find(name);
    return it == var_index_.end() ? -1 : it->second;
}

void Problem::fix_variable(int j, double value) {
    vars_[j].lower = value;
    vars_[j].upper = value;
}

std::vector<std::string> Problem::validate() const {
    std::vector<std::string> issues;
    std::unordered_map<std::string, int> seen;
    for (int j = 0; j < num_variables(); ++j) {
        const auto& v = vars_[j];
        if (v.name.empty()) issues.push_back("variable #" + std::to_string(j) + ": empty name");
        auto [it, inserted] = seen.emplace(v.name, j);
        if (!inserted) issues.push_back("duplicate variable name '" + v.name + "'");
        if (!(v.lower <= v.upper))
            issues.push_back("variable '" + v.name + "': lower bound exceeds upper bound");
        if (v.kind == VarKind::Binary && (v.lower < 0.0 || v.upper > 1.0))
            issues.push_back("binary variable '" + v.name + "': bounds outside [0,1]");
        if (std::isnan(v.lower) || std::isnan(v.upper))
            issues.push_back("variable '" + v.name + "': NaN bound");
        if (!std::isfinite(obj_[j]))
            issues.push_back("variable '" + v.name + "': non-finite objective coefficient");
    }
    seen.clear();
    for (int i = 0; i < num_constraints(); ++i) {
        const auto& c = cons_[i];
        auto [it, inserted] = seen.emplace(c.name, i);
        if (!inserted) issues.push_back("duplicate constraint name '" + c.name + "'");
        if (!std::isfinite(c.rhs))
            issues.push_back("constraint '" + c.name + "': non-finite rhs");
        for (const auto& [j, a] : c.coeffs) {
            if (j < 0 || j >= num_variables()) {
                issues.push_back("constraint '" + c.name + "': bad variable index");
            } else if (!std::isfinite(a)) {
                issues.push_back("constraint '" + c.name + "': non-finite coefficient on '" +
                                 vars_[j].name + "'");
            }
        }
    }
    return issues;
}

void Problem::validate_or_throw() const {
    auto issues = validate();
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

double Problem::max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (int j = 0; j < num_variables(); ++j) {
        worst = std::max(worst, vars_[j].lower - x[j]);
        worst = std::max(worst, x[j] - vars_[j].upper);
    }
    for (const auto& c : cons_) {
        double lhs = 0.0;
        for (const auto& [j, a] : c.coeffs) lhs += a * x[j];
        switch (c.relation) {
            case Relation::LessEqual: worst = std::max(worst, lhs - c.rhs); break;
            case Relation::GreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
            case Relation::Equal: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
        }
    }
    return worst;
}

double Problem::eval_objective(const std::vector<double>& x) const {
    double v = objective_constant_;
    for (int j = 0; j < num_variables(); ++j) v += obj_[j] * x[j];
    return v;
}

namespace {

std::map<int, double> canonical_coeffs(const std::vector<std::pair<int, double>>& coeffs) {
    std::map<int, double> out;
    for (const auto& [j, a] : coeffs) out[j] += a;
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0.0)
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

}  // namespace

bool structurally_equal(const Problem& a, const Problem& b) {
    if (a.num_variables() != b.num_variables()) return false;
    if (a.num_constraints() != b.num_constraints()) return false;
    if (a.objective_constant() != b.objective_constant()) return false;
    for (int j = 0; j < a.num_variables(); ++j) {
        const auto& va = a.variable(j);
        const auto& vb = b.variable(j);
        if (va.name != vb.name || va.lower != vb.lower || va.upper != vb.upper ||
            va.kind != vb.kind)
            return false;
        if (a.objective_coeff(j) != b.objective_coeff(j)) return false;
    }
    for (int i = 0; i < a.num_constraints(); ++i) {
        const auto& ca = a.constraint(i);
        const auto& cb = b.constraint(i);
        if (ca.name != cb.name || ca.relation != cb.relation || ca.rhs != cb.rhs) return false;
        if (canonical_coeffs(ca.coeffs) != canonical_coeffs(cb.coeffs)) return false;
    }
    return true;
}

}  // namespace gridplan::milp
