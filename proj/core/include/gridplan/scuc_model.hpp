#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridplan/grid_model.hpp"
#include "gridplan/milp/problem.hpp"
#include "gridplan/milp/solver.hpp"
#include "gridplan/profile_synthesis.hpp"

namespace gridplan {

// One day of operations for one epoch view: commitment, dispatch, reserves,
// DC flows, shedding and curtailment at the profile resolution.
struct ScucInstance {
    EpochView view;
    // Day slices aligned with the view's entity vectors; inner size |T|.
    std::vector<std::vector<double>> rating_mva;  // [line][t]
    std::vector<std::vector<double>> avail_mw;    // [renewable][t]
    std::vector<std::vector<double>> load_mw;     // [bus][t]
    double shed_penalty = 10000.0;                // $/MWh, >= 10x any marginal cost
    bool reserve_required = false;
    std::vector<int> initial_commitment;          // u_{g,0}; empty = all off
    double theta_bound = 0.6;

    int intervals() const { return view.horizon.intervals_per_day; }
    void validate_or_throw() const;
};

// Buses where demand covers local renewable availability (ST1, shedding side)
// versus surplus buses (ST2, curtailment side), per interval.
struct CurtailmentPartition {
    std::vector<std::vector<bool>> deficit;  // [bus][t]; true = ST1

    bool st1(int bus, int t) const { return deficit[bus][t]; }
    bool st2(int bus, int t) const { return !deficit[bus][t]; }
};

CurtailmentPartition classify_buses(const ScucInstance& instance);

struct ScucVariableMap {
    std::vector<std::vector<int>> commit;   // u[g][t] binary
    std::vector<std::vector<int>> startup;  // v[g][t] in [0,1]
    std::vector<std::vector<int>> power;    // p[g][t]
    std::vector<std::vector<int>> reserve;  // r[g][t]
    std::vector<std::vector<int>> flow;     // [line][t]
    std::vector<std::vector<int>> theta;    // [bus][t]
    std::vector<std::vector<int>> shed;     // [bus][t]
    std::vector<std::vector<int>> curtail;  // [bus][t]
};

std::pair<milp::Problem, ScucVariableMap> build_scuc(const ScucInstance& instance);

struct ScucSolution {
    milp::Status status = milp::Status::Numerical;
    std::vector<std::vector<int>> commitment;     // [g][t]
    std::vector<std::vector<double>> startup;     // [g][t]
    std::vector<std::vector<double>> dispatch_mw; // [g][t]
    std::vector<std::vector<double>> reserve_mw;  // [g][t]
    std::vector<std::vector<double>> flow_mw;     // [line][t]
    std::vector<std::vector<double>> angle;       // [bus][t]
    std::vector<std::vector<double>> shed_mw;     // [bus][t]
    std::vector<std::vector<double>> curtail_mw;  // [bus][t]
    double operating_cost = 0.0;  // fuel + online + startup, penalty excluded
    double penalty = 0.0;

    double total_shed_mwh(double interval_hours) const;
    double total_generation_mwh(double interval_hours) const;
};

ScucSolution extract_scuc_solution(const milp::Solution& solution, const ScucVariableMap& map,
                                   const ScucInstance& instance);

// --- batch over the study horizon -------------------------------------------

struct ScucOptions {
    double shed_penalty = 10000.0;
    bool reserve_required = false;
    bool initial_commitment_on = false;  // u_{g,0} for every unit
    double theta_bound = 0.6;
    milp::SolverConfig solver;
    int workers = 1;
};

struct ScucDayKey {
    int epoch = 1;
    int quarter = 1;
    DayType day_type = DayType::Weekday;

    bool operator==(const ScucDayKey&) const = default;
};

struct ScucDayResult {
    ScucDayKey key;
    milp::Status status = milp::Status::Numerical;
    std::optional<ScucSolution> solution;
    std::string error;  // set when the day failed
};

// One independent solve per (epoch, quarter, day-type); failures are recorded
// per key and never abort the batch.  Result order is fixed by key.
std::vector<ScucDayResult> run_batch(const CaseGrid& case_grid,
                                     const RepresentativeProfileSet& profiles,
                                     const ScucOptions& options);

// --- batch result files --------------------------------------------------------

struct ScucDayRow {
    int epoch, quarter;
    DayType day_type;
    int interval;
    std::string bus_id;
    double shed_mw, curtail_mw;
};

struct ScucSummaryRow {
    int epoch, quarter;
    DayType day_type;
    double operating_cost_usd, total_generation_mwh, total_shed_mwh;
};

// Writes <dir>/scuc_<case>_days.csv and <dir>/scuc_<case>_summary.csv.
void write_batch_results(const std::vector<ScucDayResult>& results, const CaseGrid& case_grid,
                         const std::string& dir);
std::vector<ScucDayRow> read_batch_days(const std::string& path);
std::vector<ScucSummaryRow> read_batch_summary(const std::string& path);

std::string batch_days_path(const std::string& dir, InvestmentCase kind);
std::string batch_summary_path(const std::string& dir, InvestmentCase kind);

}  // namespace gridplan
