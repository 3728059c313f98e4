#pragma once

#include <string>
#include <vector>

#include "gridplan/grid_model.hpp"
#include "gridplan/milp/problem.hpp"
#include "gridplan/milp/solver.hpp"
#include "gridplan/profile_synthesis.hpp"

namespace gridplan {

enum class TepVariant { ClimateInformed, Traditional };

struct TepInstance {
    GridModel grid;  // FGI studies pass the gen-plan-merged grid
    RepresentativeProfileSet profiles;
    bool shed_allowed = false;
    TepVariant variant = TepVariant::ClimateInformed;
    double theta_bound = 0.6;       // rad
    double shed_penalty = 10000.0;  // $/MWh, used only when shed_allowed

    void validate_or_throw() const;
};

// Entity orders and index arithmetic shared by the builder, the extractor and
// the enumeration oracle.  Slots run over (epoch, quarter, day-type, interval).
struct TepIndex {
    int num_epochs = 0;
    int quarters = 4;
    int day_types = 2;
    int intervals = 0;
    std::vector<std::string> bus_ids, line_ids, gen_ids, renew_ids, cand_ids;

    int num_days() const { return quarters * day_types; }
    int num_slots() const { return num_epochs * num_days() * intervals; }
    // epoch/quarter 1-based, dt/t 0-based.
    int slot(int epoch, int quarter, int dt, int t) const {
        return (((epoch - 1) * quarters + (quarter - 1)) * day_types + dt) * intervals + t;
    }
    int epoch_of_slot(int s) const { return s / (num_days() * intervals) + 1; }
    int quarter_of_slot(int s) const { return (s / (day_types * intervals)) % quarters + 1; }
    int dt_of_slot(int s) const { return (s / intervals) % day_types; }
    int t_of_slot(int s) const { return s % intervals; }
};

struct TepVariableMap {
    TepIndex index;
    // MilpProblem variable indices.
    std::vector<std::vector<int>> oper;   // u[cand][epoch]
    std::vector<std::vector<int>> built;  // v[cand][epoch]
    std::vector<std::vector<int>> theta;  // [bus][slot]
    std::vector<std::vector<int>> flow;   // [line][slot], candidates included
    std::vector<std::vector<int>> gen;    // [generator][slot]
    std::vector<std::vector<int>> renew;  // [plant][slot]
    std::vector<std::vector<int>> shed;   // [bus][slot], empty unless allowed
};

std::pair<milp::Problem, TepVariableMap> build_tep_ci(const TepInstance& instance);
std::pair<milp::Problem, TepVariableMap> build_tep_traditional(const TepInstance& instance);
std::pair<milp::Problem, TepVariableMap> build_tep(const TepInstance& instance);

// Eq.-style cost pieces, also used to cross-check the solver objective.
double capital_cost(const std::vector<BuiltLine>& plan, const GridModel& grid);

struct TepDispatch {
    TepIndex index;
    std::vector<std::vector<double>> gen_mw;  // [generator][slot]
};
double operation_cost(const TepDispatch& dispatch, const GridModel& grid);

struct TepSolution {
    TepIndex index;
    std::vector<std::vector<int>> built;        // v[cand][epoch]
    std::vector<std::vector<int>> operational;  // u[cand][epoch]
    std::vector<std::vector<double>> gen_mw;    // [generator][slot]
    std::vector<std::vector<double>> renew_mw;  // [plant][slot]
    std::vector<std::vector<double>> flow_mw;   // [line][slot]
    std::vector<std::vector<double>> shed_mw;   // [bus][slot] when shedding allowed
    std::vector<std::vector<double>> bus_angle; // [bus][slot], rad
    double op_cost = 0.0;
    double cap_cost = 0.0;
    double shed_penalty_cost = 0.0;
    double total = 0.0;  // op_cost + cap_cost

    std::vector<BuiltLine> to_built_lines() const;
};

// Interprets an optimal MILP solution; re-evaluates every model constraint at
// the extracted values (residual <= 1e-6) and checks the build-logic shape.
// Throws SolveError for non-optimal statuses or residual failures.
TepSolution extract_tep_solution(const milp::Solution& solution, const TepVariableMap& map,
                                 const TepInstance& instance);

// Plan file: built lines plus the cost block.
struct TepPlanFile {
    std::vector<BuiltLine> built;
    double generation_cost = 0.0;
    double transmission_investment_cost = 0.0;
    double total_cost = 0.0;
};

void write_tep_plan(const TepPlanFile& plan, const std::string& path);
TepPlanFile read_tep_plan(const std::string& path);

}  // namespace gridplan
