#include "gridplan/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "gridplan/csv.hpp"
#include "gridplan/errors.hpp"
#include "gridplan/milp/mps.hpp"

namespace gridplan {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string resolve(const fs::path& base_dir, const std::string& p) {
    if (p.empty()) return p;
    fs::path path(p);
    if (path.is_absolute()) return path.string();
    return (base_dir / path).lexically_normal().string();
}

}  // namespace

StudyConfig load_study_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open study config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    StudyConfig cfg;
    fs::path base = fs::path(path).parent_path();
    try {
        cfg.grid_path = resolve(base, j.at("grid").get<std::string>());
        cfg.weather_path = resolve(base, j.at("weather").get<std::string>());
        cfg.load_path = resolve(base, j.at("loads").get<std::string>());
        if (j.contains("generation_plan"))
            cfg.generation_plan_path = resolve(base, j["generation_plan"].get<std::string>());
        cfg.output_dir = resolve(base, j.value("output_dir", "out"));

        if (j.contains("profiles")) {
            std::string pol = j["profiles"].value("terminal_weather_policy", "conservative");
            if (pol == "conservative") cfg.policy = TerminalWeatherPolicy::Conservative;
            else if (pol == "average") cfg.policy = TerminalWeatherPolicy::Average;
            else throw ParseError(path + ": terminal_weather_policy must be conservative or average");
            if (j["profiles"].contains("dlr")) {
                for (const auto& [key, value] : j["profiles"]["dlr"].items())
                    cfg.dlr_overrides[key] = value.get<double>();
            }
        }
        if (j.contains("tep")) {
            const auto& t = j["tep"];
            std::string variant = t.value("variant", "ci");
            if (variant == "ci") cfg.tep_variant = TepVariant::ClimateInformed;
            else if (variant == "traditional") cfg.tep_variant = TepVariant::Traditional;
            else if (variant == "both") { cfg.tep_variant = TepVariant::ClimateInformed; cfg.tep_run_both = true; }
            else throw ParseError(path + ": tep.variant must be ci, traditional or both");
            cfg.theta_bound = t.value("theta_bound", 0.6);
            if (t.contains("solver")) {
                const auto& s = t["solver"];
                cfg.solver.feasibility_tol = s.value("feasibility_tol", cfg.solver.feasibility_tol);
                cfg.solver.integrality_tol = s.value("integrality_tol", cfg.solver.integrality_tol);
                cfg.solver.mip_gap = s.value("mip_gap", cfg.solver.mip_gap);
                cfg.solver.node_limit = s.value("node_limit", cfg.solver.node_limit);
                cfg.solver.time_limit_seconds =
                    s.value("time_limit_seconds", cfg.solver.time_limit_seconds);
            }
        }
        if (j.contains("scuc")) {
            const auto& s = j["scuc"];
            cfg.shed_penalty = s.value("shed_penalty_per_mwh", cfg.shed_penalty);
            cfg.scuc_reserve = s.value("reserve", false);
            std::string init = s.value("initial_commitment", "off");
            if (init == "on") cfg.scuc_initial_on = true;
            else if (init == "off") cfg.scuc_initial_on = false;
            else throw ParseError(path + ": scuc.initial_commitment must be on or off");
        }
        if (j.contains("cases")) {
            cfg.cases.clear();
            for (const auto& c : j["cases"])
                cfg.cases.push_back(investment_case_from_string(c.get<std::string>()));
        }
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }

    if (const char* env = std::getenv("GRIDPLAN_WORKERS")) {
        cfg.workers = std::max(1, std::atoi(env));
    } else {
        cfg.workers = std::max(1u, std::thread::hardware_concurrency());
    }
    if (!(cfg.theta_bound > 0.0)) throw ParseError(path + ": theta_bound must be positive");
    if (cfg.shed_penalty <= 0.0) throw ParseError(path + ": shed_penalty must be positive");
    return cfg;
}

namespace {

void apply_dlr_overrides(GridModel& grid, const std::map<std::string, double>& overrides) {
    if (overrides.empty()) return;
    for (auto& line : grid.lines) {
        for (const auto& [key, value] : overrides) {
            if (key == "temp_coeff") line.dlr.temp_coeff = value;
            else if (key == "temp_ref_c") line.dlr.temp_ref_c = value;
            else if (key == "wind_coeff") line.dlr.wind_coeff = value;
            else if (key == "wind_ref_mps") line.dlr.wind_ref_mps = value;
            else if (key == "wind_cap_mps") line.dlr.wind_cap_mps = value;
            else if (key == "solar_coeff") line.dlr.solar_coeff = value;
            else if (key == "solar_ref_wm2") line.dlr.solar_ref_wm2 = value;
            else if (key == "clip_lo") line.dlr.clip_lo = value;
            else if (key == "clip_hi") line.dlr.clip_hi = value;
            else throw ParseError("unknown DLR override key '" + key + "'");
        }
    }
    grid.validate_or_throw();
}

GridModel load_study_grid(const StudyConfig& cfg, bool with_generation_plan) {
    GridModel grid = load_grid(cfg.grid_path);
    apply_dlr_overrides(grid, cfg.dlr_overrides);
    if (with_generation_plan && !cfg.generation_plan_path.empty()) {
        GenerationPlan plan = load_generation_plan(cfg.generation_plan_path);
        return merge_generation_plan(grid, plan);
    }
    return grid;
}

}  // namespace

SynthSummary run_synth(const StudyConfig& cfg) {
    // New renewables from the generation plan get availability profiles too,
    // so the FGI/FGTI stages can consume the same profile set.
    GridModel grid = load_study_grid(cfg, true);
    WeatherSeries weather = load_weather_csv(cfg.weather_path, grid.horizon.interval_hours);
    LoadSeries loads = load_load_csv(cfg.load_path, grid.horizon.interval_hours);
    ProfileOptions options;
    options.policy = cfg.policy;
    RepresentativeProfileSet set = build_representative(weather, loads, grid, options);
    fs::create_directories(cfg.output_dir);
    export_profiles(set, cfg.profiles_dir());
    SynthSummary s;
    s.lines = static_cast<int>(grid.lines.size());
    s.renewables = static_cast<int>(grid.renewables.size());
    s.buses = static_cast<int>(grid.buses.size());
    s.epochs = grid.horizon.num_epochs;
    s.quarters = grid.horizon.quarters_per_year;
    return s;
}

namespace {

// Capacity screens naming the first (epoch, quarter) that cannot be served
// even with every candidate built; used for infeasibility diagnostics.
std::string first_shortfall(const GridModel& grid, const RepresentativeProfileSet& profiles) {
    const auto& h = grid.horizon;
    for (int e = 1; e <= h.num_epochs; ++e) {
        for (int q = 1; q <= h.quarters_per_year; ++q) {
            for (int dt = 0; dt < h.day_types(); ++dt) {
                for (int t = 0; t < h.intervals_per_day; ++t) {
                    double total_load = 0.0, total_supply = 0.0;
                    for (const auto& b : grid.buses)
                        total_load += profiles.load(b.id, e, q, static_cast<DayType>(dt), t);
                    for (const auto& g : grid.generators) total_supply += g.p_max_in_epoch(e);
                    for (const auto& r : grid.renewables)
                        if (r.commissioned_by(e))
                            total_supply += profiles.renewable_max(r.id, e, q, t);
                    if (total_load > total_supply + 1e-6) {
                        std::ostringstream os;
                        os << "epoch " << e << " quarter " << q << ": total demand "
                           << total_load << " MW exceeds total supply " << total_supply << " MW";
                        return os.str();
                    }
                    for (const auto& b : grid.buses) {
                        double load = profiles.load(b.id, e, q, static_cast<DayType>(dt), t);
                        double local = 0.0;
                        for (const auto& g : grid.generators)
                            if (g.bus == b.id) local += g.p_max_in_epoch(e);
                        for (const auto& r : grid.renewables)
                            if (r.bus == b.id && r.commissioned_by(e))
                                local += profiles.renewable_max(r.id, e, q, t);
                        double incident = 0.0;
                        for (const auto& l : grid.lines)
                            if (l.from_bus == b.id || l.to_bus == b.id)
                                incident += profiles.line_rating(l.id, e, q, t);
                        if (load > local + incident + 1e-6) {
                            std::ostringstream os;
                            os << "epoch " << e << " quarter " << q << ": bus '" << b.id
                               << "' demand " << load << " MW exceeds local supply plus incident "
                               << "line capacity " << (local + incident) << " MW";
                            return os.str();
                        }
                    }
                }
            }
        }
    }
    return "";
}

TepPlanFile solve_tep_variant(const StudyConfig& cfg, const GridModel& grid,
                              const RepresentativeProfileSet& profiles, TepVariant variant) {
    TepInstance inst;
    inst.grid = grid;
    inst.profiles = profiles;
    inst.variant = variant;
    inst.theta_bound = cfg.theta_bound;
    auto [prob, map] = build_tep(inst);
    milp::Solution sol = milp::solve_milp(prob, cfg.solver);
    if (sol.status != milp::Status::Optimal) {
        std::string diag = first_shortfall(grid, profiles);
        std::string msg = "TEP solve ended with status " + to_string(sol.status);
        if (!diag.empty()) msg += "; first shortfall: " + diag;
        else msg += "; no aggregate shortfall found (network-limited or solver limit)";
        throw SolveError(msg);
    }
    TepSolution ts = extract_tep_solution(sol, map, inst);
    TepPlanFile plan;
    plan.built = ts.to_built_lines();
    plan.generation_cost = ts.op_cost;
    plan.transmission_investment_cost = ts.cap_cost;
    plan.total_cost = ts.total;
    return plan;
}

}  // namespace

PlanOutcome run_plan(const StudyConfig& cfg) {
    GridModel grid = load_study_grid(cfg, true);
    RepresentativeProfileSet profiles = import_profiles(cfg.profiles_dir(), grid.horizon);
    PlanOutcome out;
    out.plan = solve_tep_variant(cfg, grid, profiles, cfg.tep_variant);
    out.op_cost = out.plan.generation_cost;
    out.cap_cost = out.plan.transmission_investment_cost;
    out.total = out.plan.total_cost;
    write_tep_plan(out.plan, cfg.plan_path());
    if (cfg.tep_run_both) {
        out.traditional = solve_tep_variant(cfg, grid, profiles, TepVariant::Traditional);
    }
    return out;
}

CaseGrid materialize_case(const StudyConfig& cfg, InvestmentCase kind) {
    GridModel grid = load_grid(cfg.grid_path);
    GenerationPlan gen_plan;
    std::vector<BuiltLine> built;
    if (kind == InvestmentCase::FGI || kind == InvestmentCase::FGTI) {
        if (cfg.generation_plan_path.empty())
            throw ParseError("case " + to_string(kind) + " requires a generation_plan path");
        gen_plan = load_generation_plan(cfg.generation_plan_path);
    }
    if (kind == InvestmentCase::FGTI) {
        built = read_tep_plan(cfg.plan_path()).built;
    }
    CaseGrid cg = apply_investments(grid, gen_plan, built);
    cg.kind = kind;  // an empty transmission plan may otherwise downgrade the label
    return cg;
}

std::vector<std::string> run_simulate(const StudyConfig& cfg, InvestmentCase kind) {
    CaseGrid cg = materialize_case(cfg, kind);
    GridModel merged = load_study_grid(cfg, true);
    RepresentativeProfileSet profiles = import_profiles(cfg.profiles_dir(), merged.horizon);
    ScucOptions options;
    options.shed_penalty = cfg.shed_penalty;
    options.reserve_required = cfg.scuc_reserve;
    options.initial_commitment_on = cfg.scuc_initial_on;
    options.theta_bound = cfg.theta_bound;
    options.solver = cfg.solver;
    options.workers = cfg.workers;
    auto results = run_batch(cg, profiles, options);
    fs::create_directories(cfg.output_dir);
    write_batch_results(results, cg, cfg.output_dir);
    std::vector<std::string> failures;
    for (const auto& r : results) {
        if (!r.solution) {
            std::ostringstream os;
            os << "epoch " << r.key.epoch << " quarter " << r.key.quarter << " "
               << to_string(r.key.day_type) << ": " << r.error;
            failures.push_back(os.str());
        }
    }
    return failures;
}

std::vector<ReliabilityReport> run_evaluate(const StudyConfig& cfg) {
    GridModel grid = load_grid(cfg.grid_path);
    RepresentativeProfileSet profiles = import_profiles(cfg.profiles_dir(), grid.horizon);
    std::vector<ReliabilityReport> reports;
    std::vector<std::set<int>> epoch_sets;
    for (InvestmentCase kind : cfg.cases) {
        std::string path = batch_days_path(cfg.output_dir, kind);
        auto rows = read_batch_days(path);
        std::vector<SheddingRecord> records;
        std::set<int> epochs;
        for (const auto& r : rows) {
            epochs.insert(r.epoch);
            records.push_back(SheddingRecord{r.epoch, r.quarter, r.day_type, r.bus_id, r.interval,
                                             r.shed_mw});
        }
        epoch_sets.push_back(std::move(epochs));
        reports.push_back(make_report(kind, records, profiles, grid.horizon,
                                      static_cast<int>(grid.buses.size())));
    }
    for (std::size_t i = 1; i < epoch_sets.size(); ++i) {
        if (epoch_sets[i] != epoch_sets[0])
            throw ValidationError({"evaluate: case batch files span different epoch sets"});
    }
    write_reliability_report(reports, cfg.output_dir + "/reliability_report.csv");
    if (reports.size() > 1) {
        CaseComparison cmp = compare_cases(reports);
        write_case_comparison(cmp, cfg.output_dir + "/reliability_comparison.csv");
    }
    return reports;
}

namespace {

std::string month_key(std::int64_t unix_time) {
    Timestamp ts = from_unix_seconds(unix_time);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", ts.year, ts.month);
    return buf;
}

std::string monthly_mean_series(const std::map<std::string, std::pair<double, long>>& acc,
                                const std::string& series) {
    std::ostringstream os;
    os << "x,series,value\n";
    for (const auto& [month, sc] : acc)
        os << month << ',' << series << ',' << format_double(sc.first / sc.second) << '\n';
    return os.str();
}

}  // namespace

std::string run_plotdata(const StudyConfig& cfg, const std::string& figure,
                         const std::string& entity, const std::string& case_name) {
    if (figure == "ratings" || figure == "wind" || figure == "solar") {
        GridModel grid = load_study_grid(cfg, true);
        WeatherSeries weather = load_weather_csv(cfg.weather_path, grid.horizon.interval_hours);
        std::map<std::string, std::pair<double, long>> acc;
        if (figure == "ratings") {
            const TransmissionLine* line = grid.find_line(entity);
            if (!line) throw ParseError("plotdata ratings: unknown line '" + entity + "'");
            const auto& fs_samples = weather.at(line->from_bus);
            const auto& ts_samples = weather.at(line->to_bus);
            std::map<std::int64_t, const WeatherSample*> to_by_time;
            for (const auto& s : ts_samples) to_by_time[s.time] = &s;
            for (const auto& s : fs_samples) {
                auto it = to_by_time.find(s.time);
                if (it == to_by_time.end()) continue;
                WeatherSample eff = line_weather(s, *it->second, cfg.policy);
                auto& slot = acc[month_key(s.time)];
                slot.first += dynamic_rating(eff, line->dlr);
                slot.second += 1;
            }
            return monthly_mean_series(acc, entity);
        }
        const RenewablePlant* plant = nullptr;
        for (const auto& r : grid.renewables)
            if (r.id == entity) plant = &r;
        if (!plant) throw ParseError("plotdata " + figure + ": unknown plant '" + entity + "'");
        bool want_wind = figure == "wind";
        if (want_wind != (plant->kind == RenewableKind::Wind))
            throw ParseError("plotdata " + figure + ": plant '" + entity + "' is the wrong kind");
        for (const auto& s : weather.at(plant->bus)) {
            double mw;
            if (want_wind) {
                double v_hub = extrapolate_wind_speed(s.wind_speed_10m, 10.0, plant->hub_height_m,
                                                      plant->roughness_m);
                mw = wind_power(v_hub, WindPowerCurve{plant->v_cutin, plant->v_rated,
                                                      plant->v_cutout, plant->capacity_mw});
            } else {
                mw = solar_power(s.shortwave_wm2, s.longwave_wm2,
                                 SolarPanel{plant->capacity_mw, plant->f_shortwave,
                                            plant->f_longwave, plant->g_ref_wm2});
            }
            auto& slot = acc[month_key(s.time)];
            slot.first += mw;
            slot.second += 1;
        }
        return monthly_mean_series(acc, entity);
    }
    if (figure == "load") {
        GridModel grid = load_grid(cfg.grid_path);
        RepresentativeProfileSet profiles = import_profiles(cfg.profiles_dir(), grid.horizon);
        if (!profiles.has_bus_load(entity))
            throw ParseError("plotdata load: unknown bus '" + entity + "'");
        std::ostringstream os;
        os << "x,series,value\n";
        for (int e = 1; e <= grid.horizon.num_epochs; ++e) {
            for (int q = 1; q <= grid.horizon.quarters_per_year; ++q) {
                for (int t = 0; t < grid.horizon.intervals_per_day; ++t) {
                    os << t << ",p" << e << "q" << q << ','
                       << format_double(profiles.load(entity, e, q, DayType::Weekday, t)) << '\n';
                }
            }
        }
        return os.str();
    }
    if (figure == "shedding") {
        InvestmentCase kind = investment_case_from_string(case_name);
        GridModel grid = load_grid(cfg.grid_path);
        auto rows = read_batch_days(batch_days_path(cfg.output_dir, kind));
        // Daily shed energy per (epoch, quarter, day type); report the worst
        // day type per quarter.
        std::map<std::tuple<int, int, int>, double> daily;
        for (const auto& r : rows)
            daily[{r.epoch, r.quarter, static_cast<int>(r.day_type)}] +=
                r.shed_mw * grid.horizon.interval_hours;
        std::map<std::pair<int, int>, double> worst;
        for (const auto& [key, mwh] : daily) {
            auto& w = worst[{std::get<0>(key), std::get<1>(key)}];
            w = std::max(w, mwh);
        }
        std::ostringstream os;
        os << "x,series,value\n";
        for (const auto& [key, mwh] : worst)
            os << 'p' << key.first << 'q' << key.second << ',' << to_string(kind) << ','
               << format_double(mwh) << '\n';
        return os.str();
    }
    throw ParseError("unknown figure '" + figure +
                     "' (expected ratings, wind, solar, load or shedding)");
}

void run_mps_export(const StudyConfig& cfg, const std::string& model, int epoch, int quarter,
                    const std::string& day_type, const std::string& out_path) {
    if (model == "tep" || model == "tep-traditional") {
        GridModel grid = load_study_grid(cfg, true);
        RepresentativeProfileSet profiles = import_profiles(cfg.profiles_dir(), grid.horizon);
        TepInstance inst;
        inst.grid = grid;
        inst.profiles = profiles;
        inst.variant = model == "tep" ? TepVariant::ClimateInformed : TepVariant::Traditional;
        inst.theta_bound = cfg.theta_bound;
        auto [prob, map] = build_tep(inst);
        milp::write_mps(prob, out_path);
        return;
    }
    if (model == "scuc") {
        InvestmentCase kind = cfg.generation_plan_path.empty() ? InvestmentCase::FR
                               : InvestmentCase::FGI;
        CaseGrid cg = materialize_case(cfg, kind);
        GridModel merged = load_study_grid(cfg, true);
        RepresentativeProfileSet profiles = import_profiles(cfg.profiles_dir(), merged.horizon);
        if (epoch < 1 || epoch > static_cast<int>(cg.epochs.size()))
            throw ParseError("mps-export: epoch outside horizon");
        DayType dt = day_type == "WE" ? DayType::Weekend : DayType::Weekday;
        ScucOptions options;
        options.shed_penalty = cfg.shed_penalty;
        options.reserve_required = cfg.scuc_reserve;
        options.initial_commitment_on = cfg.scuc_initial_on;
        options.theta_bound = cfg.theta_bound;
        const EpochView& view = cg.epochs[epoch - 1];
        ScucInstance inst;
        inst.view = view;
        inst.shed_penalty = options.shed_penalty;
        inst.reserve_required = options.reserve_required;
        inst.theta_bound = options.theta_bound;
        const int T = view.horizon.intervals_per_day;
        inst.rating_mva.resize(view.lines.size());
        for (std::size_t l = 0; l < view.lines.size(); ++l) {
            inst.rating_mva[l].resize(T);
            for (int t = 0; t < T; ++t)
                inst.rating_mva[l][t] = profiles.line_rating(view.lines[l].id, epoch, quarter, t);
        }
        inst.avail_mw.resize(view.renewables.size());
        for (std::size_t r = 0; r < view.renewables.size(); ++r) {
            inst.avail_mw[r].resize(T);
            for (int t = 0; t < T; ++t)
                inst.avail_mw[r][t] =
                    profiles.renewable_max(view.renewables[r].id, epoch, quarter, t);
        }
        inst.load_mw.resize(view.buses.size());
        for (std::size_t n = 0; n < view.buses.size(); ++n) {
            inst.load_mw[n].resize(T);
            for (int t = 0; t < T; ++t)
                inst.load_mw[n][t] = profiles.load(view.buses[n].id, epoch, quarter, dt, t);
        }
        auto [prob, map] = build_scuc(inst);
        milp::write_mps(prob, out_path);
        return;
    }
    throw ParseError("mps-export: unknown model '" + model +
                     "' (expected tep, tep-traditional or scuc)");
}

}  // namespace gridplan
