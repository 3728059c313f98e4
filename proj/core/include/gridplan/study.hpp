#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridplan/grid_model.hpp"
#include "gridplan/milp/solver.hpp"
#include "gridplan/profile_synthesis.hpp"
#include "gridplan/reliability.hpp"
#include "gridplan/scuc_model.hpp"
#include "gridplan/tep_model.hpp"

namespace gridplan {

// Study configuration file (JSON).  Relative paths resolve against the config
// file's directory so studies stay relocatable under version control.
struct StudyConfig {
    std::string grid_path;
    std::string weather_path;
    std::string load_path;
    std::string generation_plan_path;  // optional
    std::string output_dir;

    TerminalWeatherPolicy policy = TerminalWeatherPolicy::Conservative;
    // Grid-wide rating-model coefficient overrides, keyed by DlrParams field
    // name (temp_coeff, wind_ref_mps, ...); per-line base ratings stay.
    std::map<std::string, double> dlr_overrides;

    TepVariant tep_variant = TepVariant::ClimateInformed;
    bool tep_run_both = false;  // print a CI-vs-traditional comparison
    double theta_bound = 0.6;
    milp::SolverConfig solver;

    double shed_penalty = 10000.0;
    bool scuc_reserve = false;
    bool scuc_initial_on = false;

    std::vector<InvestmentCase> cases = {InvestmentCase::FR, InvestmentCase::FGI,
                                         InvestmentCase::FGTI};
    int workers = 1;

    std::string profiles_dir() const { return output_dir + "/profiles"; }
    std::string plan_path() const { return output_dir + "/plan.json"; }
};

StudyConfig load_study_config(const std::string& path);

// --- pipeline stages, shared by the CLI and the test suites -----------------

struct SynthSummary {
    int lines = 0;
    int renewables = 0;
    int buses = 0;
    int epochs = 0;
    int quarters = 0;
};

// Weather + demand -> representative profile CSVs in profiles_dir().
SynthSummary run_synth(const StudyConfig& config);

struct PlanOutcome {
    TepPlanFile plan;           // written to plan_path()
    double op_cost = 0.0;
    double cap_cost = 0.0;
    double total = 0.0;
    // Present when the traditional variant was also solved.
    std::optional<TepPlanFile> traditional;
};

// Builds and solves the TEP (on the gen-plan-merged grid when configured).
// Throws SolveError with a first-shortfall diagnostic when infeasible.
PlanOutcome run_plan(const StudyConfig& config);

// Batched SCUC for one case; writes the per-day and summary CSVs.  Returns
// the failed day keys (batch always completes).
std::vector<std::string> run_simulate(const StudyConfig& config, InvestmentCase kind);

// Reliability reports + comparison files from existing batch results.
std::vector<ReliabilityReport> run_evaluate(const StudyConfig& config);

// Tidy plot-data series (x, series, value) for the named figure.
std::string run_plotdata(const StudyConfig& config, const std::string& figure,
                         const std::string& entity, const std::string& case_name);

// Builds the requested model and writes it to MPS.
void run_mps_export(const StudyConfig& config, const std::string& model, int epoch, int quarter,
                    const std::string& day_type, const std::string& out_path);

// Loads grid + applies plans for the requested case (plan file required for
// FGTI; generation plan required for FGI).
CaseGrid materialize_case(const StudyConfig& config, InvestmentCase kind);

}  // namespace gridplan
