#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gridplan/errors.hpp"
#include "gridplan/study.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;     // bad config / missing inputs
constexpr int kExitSolve = 3;     // infeasible model or solve failure
constexpr int kExitCoverage = 4;  // data coverage gap

struct CommonArgs {
    std::string config_path;
    std::string output_dir;
    std::string policy;
    std::string variant;
    double theta_bound = -1.0;
    double shed_penalty = -1.0;
    bool reserve = false;
    std::vector<std::string> cases;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "study configuration file")->required();
    cmd->add_option("--output-dir", args.output_dir, "override the config output directory");
    cmd->add_option("--policy", args.policy, "terminal weather policy (conservative|average)");
    cmd->add_option("--theta-bound", args.theta_bound, "bus angle bound in rad");
    cmd->add_option("--shed-penalty", args.shed_penalty, "SCUC shed penalty in $/MWh");
}

gridplan::StudyConfig load_config(const CommonArgs& args) {
    gridplan::StudyConfig cfg = gridplan::load_study_config(args.config_path);
    if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
    if (!args.policy.empty()) {
        if (args.policy == "conservative")
            cfg.policy = gridplan::TerminalWeatherPolicy::Conservative;
        else if (args.policy == "average")
            cfg.policy = gridplan::TerminalWeatherPolicy::Average;
        else
            throw gridplan::ParseError("--policy must be conservative or average");
    }
    if (!args.variant.empty()) {
        if (args.variant == "ci") {
            cfg.tep_variant = gridplan::TepVariant::ClimateInformed;
            cfg.tep_run_both = false;
        } else if (args.variant == "traditional") {
            cfg.tep_variant = gridplan::TepVariant::Traditional;
            cfg.tep_run_both = false;
        } else if (args.variant == "both") {
            cfg.tep_variant = gridplan::TepVariant::ClimateInformed;
            cfg.tep_run_both = true;
        } else {
            throw gridplan::ParseError("--variant must be ci, traditional or both");
        }
    }
    if (args.theta_bound > 0.0) cfg.theta_bound = args.theta_bound;
    if (args.shed_penalty > 0.0) cfg.shed_penalty = args.shed_penalty;
    if (args.reserve) cfg.scuc_reserve = true;
    if (!args.cases.empty()) {
        cfg.cases.clear();
        for (const auto& c : args.cases)
            cfg.cases.push_back(gridplan::investment_case_from_string(c));
    }
    return cfg;
}

void print_cost_block(const gridplan::TepPlanFile& plan, const char* label) {
    std::printf("%s\n", label);
    std::printf("  generation cost            : $%.2f\n", plan.generation_cost);
    std::printf("  transmission investment    : $%.2f\n", plan.transmission_investment_cost);
    std::printf("  total                      : $%.2f\n", plan.total_cost);
    if (plan.built.empty()) {
        std::printf("  built lines                : none\n");
    } else {
        std::printf("  built lines:\n");
        for (const auto& b : plan.built)
            std::printf("    %-12s epoch %d\n", b.line_id.c_str(), b.construction_epoch);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gridplan: climate-aware transmission planning toolkit"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* synth = app.add_subcommand("synth", "build representative profiles from weather/load");
    add_common(synth, args);

    auto* plan = app.add_subcommand("plan", "solve the transmission expansion problem");
    add_common(plan, args);
    plan->add_option("--variant", args.variant, "ci|traditional|both");

    std::string sim_case = "FR";
    auto* simulate = app.add_subcommand("simulate", "run the SCUC batch for one case");
    add_common(simulate, args);
    simulate->add_option("--case", sim_case, "FR|FGI|FGTI")->required();
    simulate->add_flag("--reserve", args.reserve, "enforce the system reserve constraint");

    auto* evaluate = app.add_subcommand("evaluate", "compute reliability indices and comparisons");
    add_common(evaluate, args);
    evaluate->add_option("--cases", args.cases, "subset of FR,FGI,FGTI")->delimiter(',');

    std::string figure, entity, fig_case = "FR";
    auto* plotdata = app.add_subcommand("plotdata", "emit tidy plot series as CSV on stdout");
    add_common(plotdata, args);
    plotdata->add_option("figure", figure, "ratings|wind|solar|load|shedding")->required();
    plotdata->add_option("--entity", entity, "line / plant / bus id");
    plotdata->add_option("--line", entity, "alias for --entity");
    plotdata->add_option("--case", fig_case, "case for shedding series");

    std::string model = "tep", out_path, day_type = "WD";
    int epoch = 1, quarter = 1;
    auto* mps = app.add_subcommand("mps-export", "dump a built model as free-format MPS");
    add_common(mps, args);
    mps->add_option("--model", model, "tep|tep-traditional|scuc");
    mps->add_option("--epoch", epoch, "epoch for scuc day models");
    mps->add_option("--quarter", quarter, "quarter for scuc day models");
    mps->add_option("--day-type", day_type, "WD|WE for scuc day models");
    mps->add_option("--out", out_path, "output MPS path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (synth->parsed()) {
            auto cfg = load_config(args);
            auto s = gridplan::run_synth(cfg);
            std::printf("profiles written to %s\n", cfg.profiles_dir().c_str());
            std::printf("  lines %d, renewables %d, buses %d over %d epochs x %d quarters\n",
                        s.lines, s.renewables, s.buses, s.epochs, s.quarters);
            return kExitOk;
        }
        if (plan->parsed()) {
            auto cfg = load_config(args);
            auto outcome = gridplan::run_plan(cfg);
            print_cost_block(outcome.plan, cfg.tep_run_both ? "TEP-CI plan" : "transmission plan");
            std::printf("plan written to %s\n", cfg.plan_path().c_str());
            if (outcome.traditional) {
                print_cost_block(*outcome.traditional, "traditional TEP plan (comparison)");
                const auto& ci = outcome.plan;
                const auto& tr = *outcome.traditional;
                std::printf("climate-informed vs traditional deltas\n");
                std::printf("  transmission investment    : %+.2f\n",
                            ci.transmission_investment_cost - tr.transmission_investment_cost);
                std::printf("  generation cost            : %+.2f\n",
                            ci.generation_cost - tr.generation_cost);
                std::printf("  total                      : %+.2f\n",
                            ci.total_cost - tr.total_cost);
            }
            return kExitOk;
        }
        if (simulate->parsed()) {
            auto cfg = load_config(args);
            auto kind = gridplan::investment_case_from_string(sim_case);
            auto failures = gridplan::run_simulate(cfg, kind);
            std::printf("batch results written to %s and %s\n",
                        gridplan::batch_days_path(cfg.output_dir, kind).c_str(),
                        gridplan::batch_summary_path(cfg.output_dir, kind).c_str());
            if (!failures.empty()) {
                std::fprintf(stderr, "%zu day(s) failed:\n", failures.size());
                for (const auto& f : failures) std::fprintf(stderr, "  %s\n", f.c_str());
                return kExitSolve;
            }
            return kExitOk;
        }
        if (evaluate->parsed()) {
            auto cfg = load_config(args);
            auto reports = gridplan::run_evaluate(cfg);
            std::printf("reliability report written to %s/reliability_report.csv\n",
                        cfg.output_dir.c_str());
            for (const auto& r : reports) {
                std::printf("case %s:\n", gridplan::to_string(r.kind).c_str());
                for (const auto& e : r.epochs) {
                    std::printf("  epoch %d: EUE %.3f MWh/yr, LOLP %.6g, LOLE %.4g h/bus/yr\n",
                                e.epoch, e.eue_mwh_annual, e.lolp_value, e.lole_hours_per_bus);
                }
            }
            return kExitOk;
        }
        if (plotdata->parsed()) {
            auto cfg = load_config(args);
            std::string csv = gridplan::run_plotdata(cfg, figure, entity, fig_case);
            std::fputs(csv.c_str(), stdout);
            return kExitOk;
        }
        if (mps->parsed()) {
            auto cfg = load_config(args);
            gridplan::run_mps_export(cfg, model, epoch, quarter, day_type, out_path);
            std::printf("model written to %s\n", out_path.c_str());
            return kExitOk;
        }
    } catch (const gridplan::CoverageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCoverage;
    } catch (const gridplan::SolveError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolve;
    } catch (const gridplan::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const gridplan::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
