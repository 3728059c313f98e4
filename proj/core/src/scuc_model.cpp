#include "gridplan/scuc_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "gridplan/csv.hpp"
#include "gridplan/errors.hpp"

namespace gridplan {

using milp::Problem;
using milp::Relation;
using milp::VarKind;

void ScucInstance::validate_or_throw() const {
    std::vector<std::string> issues;
    const int T = intervals();
    if (T < 1) issues.push_back("scuc: no intervals");
    auto check_dim = [&](const auto& m, std::size_t entities, const char* what) {
        if (m.size() != entities) {
            issues.push_back(std::string("scuc: ") + what + " slice count does not match the view");
            return;
        }
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != T)
                issues.push_back(std::string("scuc: ") + what + " slice does not cover all intervals");
    };
    check_dim(rating_mva, view.lines.size(), "rating");
    check_dim(avail_mw, view.renewables.size(), "availability");
    check_dim(load_mw, view.buses.size(), "load");
    double max_cost = 0.0;
    for (const auto& g : view.generators) max_cost = std::max(max_cost, g.marginal_cost);
    if (shed_penalty < 10.0 * max_cost)
        issues.push_back("scuc: shed penalty must exceed 10x the highest marginal cost");
    if (!initial_commitment.empty() && initial_commitment.size() != view.generators.size())
        issues.push_back("scuc: initial commitment size does not match the fleet");
    if (!(theta_bound > 0.0)) issues.push_back("scuc: theta_bound must be positive");
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

CurtailmentPartition classify_buses(const ScucInstance& inst) {
    const int T = inst.intervals();
    CurtailmentPartition part;
    part.deficit.assign(inst.view.buses.size(), std::vector<bool>(T, true));
    for (std::size_t n = 0; n < inst.view.buses.size(); ++n) {
        for (int t = 0; t < T; ++t) {
            double avail = 0.0;
            for (std::size_t r = 0; r < inst.view.renewables.size(); ++r) {
                if (inst.view.renewables[r].bus == inst.view.buses[n].id)
                    avail += inst.avail_mw[r][t];
            }
            part.deficit[n][t] = inst.load_mw[n][t] - avail >= 0.0;
        }
    }
    return part;
}

std::pair<Problem, ScucVariableMap> build_scuc(const ScucInstance& inst) {
    inst.validate_or_throw();
    const EpochView& view = inst.view;
    const int T = inst.intervals();
    const double base = view.base_mva;
    const double dt_h = view.horizon.interval_hours;
    const int G = static_cast<int>(view.generators.size());
    const int L = static_cast<int>(view.lines.size());
    const int B = static_cast<int>(view.buses.size());

    CurtailmentPartition part = classify_buses(inst);

    Problem prob;
    prob.name = "scuc_p" + std::to_string(view.epoch);
    ScucVariableMap map;

    auto tname = [&](int t) { return "_t" + std::to_string(t); };

    map.commit.assign(G, std::vector<int>(T));
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t)
            map.commit[g][t] =
                prob.add_variable("u_" + view.generators[g].id + tname(t), 0, 1, VarKind::Binary);

    map.startup.assign(G, std::vector<int>(T));
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t)
            map.startup[g][t] = prob.add_variable("v_" + view.generators[g].id + tname(t), 0, 1);

    map.power.assign(G, std::vector<int>(T));
    map.reserve.assign(G, std::vector<int>(T));
    for (int g = 0; g < G; ++g) {
        const auto& unit = view.generators[g];
        for (int t = 0; t < T; ++t) {
            map.power[g][t] =
                prob.add_variable("p_" + unit.id + tname(t), 0.0, unit.p_max_mw / base);
            map.reserve[g][t] = prob.add_variable("r_" + unit.id + tname(t), 0.0,
                                                  unit.reserve_ramp_mw / base);
        }
    }

    const int ref = [&] {
        int best = 0;
        for (int n = 1; n < B; ++n)
            if (view.buses[n].id < view.buses[best].id) best = n;
        return best;
    }();
    map.theta.assign(B, std::vector<int>(T));
    for (int n = 0; n < B; ++n) {
        for (int t = 0; t < T; ++t) {
            double b = n == ref ? 0.0 : inst.theta_bound;
            map.theta[n][t] = prob.add_variable("th_" + view.buses[n].id + tname(t), -b, b);
        }
    }

    map.flow.assign(L, std::vector<int>(T));
    for (int l = 0; l < L; ++l) {
        for (int t = 0; t < T; ++t) {
            double r = inst.rating_mva[l][t] / base;
            map.flow[l][t] = prob.add_variable("f_" + view.lines[l].id + tname(t), -r, r);
        }
    }

    // Shedding lives on deficit buses, curtailment on surplus buses; the
    // other side is pinned to zero (Eqs. 17-22 as bounds).
    map.shed.assign(B, std::vector<int>(T));
    map.curtail.assign(B, std::vector<int>(T));
    for (int n = 0; n < B; ++n) {
        for (int t = 0; t < T; ++t) {
            double avail = 0.0;
            for (std::size_t r = 0; r < view.renewables.size(); ++r)
                if (view.renewables[r].bus == view.buses[n].id) avail += inst.avail_mw[r][t];
            double load = inst.load_mw[n][t];
            double shed_hi = part.st1(n, t) ? (load - avail) / base : 0.0;
            double curt_hi = part.st2(n, t) ? (avail - load) / base : 0.0;
            map.shed[n][t] =
                prob.add_variable("s_" + view.buses[n].id + tname(t), 0.0, shed_hi);
            map.curtail[n][t] =
                prob.add_variable("c_" + view.buses[n].id + tname(t), 0.0, curt_hi);
        }
    }

    // Objective: energy cost + online cost + startup cost + shed penalty.
    for (int g = 0; g < G; ++g) {
        const auto& unit = view.generators[g];
        for (int t = 0; t < T; ++t) {
            prob.set_objective_coeff(map.power[g][t], unit.marginal_cost * dt_h * base);
            prob.set_objective_coeff(map.commit[g][t], unit.online_cost);
            prob.set_objective_coeff(map.startup[g][t], unit.startup_cost);
        }
    }
    for (int n = 0; n < B; ++n)
        for (int t = 0; t < T; ++t)
            prob.set_objective_coeff(map.shed[n][t], inst.shed_penalty * dt_h * base);

    // Commitment-linked output and reserve limits (23)-(25).
    for (int g = 0; g < G; ++g) {
        const auto& unit = view.generators[g];
        for (int t = 0; t < T; ++t) {
            int lorow = prob.add_constraint("pmin_" + unit.id + tname(t), Relation::LessEqual, 0.0);
            prob.add_coeff(lorow, map.commit[g][t], unit.p_min_mw / base);
            prob.add_coeff(lorow, map.power[g][t], -1.0);
            int hirow = prob.add_constraint("pmax_" + unit.id + tname(t), Relation::LessEqual, 0.0);
            prob.add_coeff(hirow, map.power[g][t], 1.0);
            prob.add_coeff(hirow, map.reserve[g][t], 1.0);
            prob.add_coeff(hirow, map.commit[g][t], -unit.p_max_mw / base);
            int rrow = prob.add_constraint("rmax_" + unit.id + tname(t), Relation::LessEqual, 0.0);
            prob.add_coeff(rrow, map.reserve[g][t], 1.0);
            prob.add_coeff(rrow, map.commit[g][t], -unit.reserve_ramp_mw / base);
        }
    }

    // System reserve adequacy (26), printed form: sum_m r_m >= p_g + r_g.
    if (inst.reserve_required) {
        for (int g = 0; g < G; ++g) {
            for (int t = 0; t < T; ++t) {
                int row = prob.add_constraint("resv_" + view.generators[g].id + tname(t),
                                              Relation::LessEqual, 0.0);
                prob.add_coeff(row, map.power[g][t], 1.0);
                prob.add_coeff(row, map.reserve[g][t], 1.0);
                for (int m = 0; m < G; ++m) prob.add_coeff(row, map.reserve[m][t], -1.0);
            }
        }
    }

    // Ramping (27) between consecutive intervals; no constraint at t=0.
    for (int g = 0; g < G; ++g) {
        const auto& unit = view.generators[g];
        double ramp = unit.ramp_mw / base;
        for (int t = 1; t < T; ++t) {
            int up = prob.add_constraint("rampU_" + unit.id + tname(t), Relation::LessEqual, ramp);
            prob.add_coeff(up, map.power[g][t], 1.0);
            prob.add_coeff(up, map.power[g][t - 1], -1.0);
            int dn = prob.add_constraint("rampD_" + unit.id + tname(t), Relation::LessEqual, ramp);
            prob.add_coeff(dn, map.power[g][t - 1], 1.0);
            prob.add_coeff(dn, map.power[g][t], -1.0);
        }
    }

    // DC flow definition (28); the rating limit (29) is the flow bound above.
    for (int l = 0; l < L; ++l) {
        const auto& line = view.lines[l];
        int nf = -1, nt = -1;
        for (int n = 0; n < B; ++n) {
            if (view.buses[n].id == line.from_bus) nf = n;
            if (view.buses[n].id == line.to_bus) nt = n;
        }
        double inv_x = 1.0 / line.reactance;
        for (int t = 0; t < T; ++t) {
            int row = prob.add_constraint("fd_" + line.id + tname(t), Relation::Equal, 0.0);
            prob.add_coeff(row, map.flow[l][t], 1.0);
            prob.add_coeff(row, map.theta[nf][t], -inv_x);
            prob.add_coeff(row, map.theta[nt][t], inv_x);
        }
    }

    // Nodal balance (30): gen + inflow - outflow + shed - curtail = load - avail.
    for (int n = 0; n < B; ++n) {
        for (int t = 0; t < T; ++t) {
            double avail = 0.0;
            for (std::size_t r = 0; r < view.renewables.size(); ++r)
                if (view.renewables[r].bus == view.buses[n].id) avail += inst.avail_mw[r][t];
            int row = prob.add_constraint("bal_" + view.buses[n].id + tname(t), Relation::Equal,
                                          (inst.load_mw[n][t] - avail) / base);
            for (int l = 0; l < L; ++l) {
                if (view.lines[l].to_bus == view.buses[n].id)
                    prob.add_coeff(row, map.flow[l][t], 1.0);
                if (view.lines[l].from_bus == view.buses[n].id)
                    prob.add_coeff(row, map.flow[l][t], -1.0);
            }
            for (int g = 0; g < G; ++g)
                if (view.generators[g].bus == view.buses[n].id)
                    prob.add_coeff(row, map.power[g][t], 1.0);
            prob.add_coeff(row, map.shed[n][t], 1.0);
            prob.add_coeff(row, map.curtail[n][t], -1.0);
        }
    }

    // Startup linking (31).
    for (int g = 0; g < G; ++g) {
        int u0 = inst.initial_commitment.empty() ? 0 : inst.initial_commitment[g];
        const auto& unit = view.generators[g];
        int first = prob.add_constraint("su_" + unit.id + "_t0", Relation::LessEqual,
                                        static_cast<double>(u0));
        prob.add_coeff(first, map.commit[g][0], 1.0);
        prob.add_coeff(first, map.startup[g][0], -1.0);
        for (int t = 1; t < T; ++t) {
            int row = prob.add_constraint("su_" + unit.id + tname(t), Relation::LessEqual, 0.0);
            prob.add_coeff(row, map.commit[g][t], 1.0);
            prob.add_coeff(row, map.commit[g][t - 1], -1.0);
            prob.add_coeff(row, map.startup[g][t], -1.0);
        }
    }

    prob.validate_or_throw();
    return {std::move(prob), std::move(map)};
}

double ScucSolution::total_shed_mwh(double interval_hours) const {
    double s = 0.0;
    for (const auto& row : shed_mw)
        for (double v : row) s += v * interval_hours;
    return s;
}

double ScucSolution::total_generation_mwh(double interval_hours) const {
    double s = 0.0;
    for (const auto& row : dispatch_mw)
        for (double v : row) s += v * interval_hours;
    return s;
}

ScucSolution extract_scuc_solution(const milp::Solution& solution, const ScucVariableMap& map,
                                   const ScucInstance& inst) {
    if (solution.status != milp::Status::Optimal)
        throw SolveError("cannot extract SCUC solution from a '" + to_string(solution.status) +
                         "' solve");
    const int T = inst.intervals();
    const double base = inst.view.base_mva;
    const double dt_h = inst.view.horizon.interval_hours;
    const auto& x = solution.values;

    ScucSolution out;
    out.status = solution.status;

    auto pull = [&](const std::vector<std::vector<int>>& vars, double scale) {
        std::vector<std::vector<double>> vals(vars.size(), std::vector<double>(T, 0.0));
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (int t = 0; t < T; ++t) vals[i][t] = x[vars[i][t]] * scale;
        return vals;
    };
    out.startup = pull(map.startup, 1.0);
    out.dispatch_mw = pull(map.power, base);
    out.reserve_mw = pull(map.reserve, base);
    out.flow_mw = pull(map.flow, base);
    out.angle = pull(map.theta, 1.0);
    out.shed_mw = pull(map.shed, base);
    out.curtail_mw = pull(map.curtail, base);

    out.commitment.assign(map.commit.size(), std::vector<int>(T, 0));
    for (std::size_t g = 0; g < map.commit.size(); ++g) {
        for (int t = 0; t < T; ++t) {
            double u = x[map.commit[g][t]];
            if (std::abs(u - std::round(u)) > 1e-6)
                throw SolveError("SCUC extraction: non-integral commitment for '" +
                                 inst.view.generators[g].id + "'");
            out.commitment[g][t] = static_cast<int>(std::round(u));
        }
    }

    const auto [check_problem, check_map] = build_scuc(inst);
    double resid = check_problem.max_violation(x);
    if (resid > 1e-6)
        throw SolveError("SCUC extraction: constraint residual " + format_double(resid) +
                         " exceeds 1e-6");

    // Reserve adequacy: the printed form and its per-unit algebraic twin must
    // agree on the extracted values.
    if (inst.reserve_required) {
        for (int t = 0; t < T; ++t) {
            double total_r = 0.0;
            for (std::size_t g = 0; g < map.reserve.size(); ++g) total_r += out.reserve_mw[g][t];
            for (std::size_t g = 0; g < map.reserve.size(); ++g) {
                bool printed = total_r >= out.dispatch_mw[g][t] + out.reserve_mw[g][t] - 1e-6;
                bool reduced = total_r - out.reserve_mw[g][t] >= out.dispatch_mw[g][t] - 1e-6;
                if (printed != reduced)
                    throw SolveError("SCUC extraction: reserve forms disagree for '" +
                                     inst.view.generators[g].id + "'");
            }
        }
    }

    double fuel = 0.0, online = 0.0, startup_cost = 0.0, penalty = 0.0;
    for (std::size_t g = 0; g < map.power.size(); ++g) {
        const auto& unit = inst.view.generators[g];
        for (int t = 0; t < T; ++t) {
            fuel += unit.marginal_cost * out.dispatch_mw[g][t] * dt_h;
            online += unit.online_cost * out.commitment[g][t];
            startup_cost += unit.startup_cost * out.startup[g][t];
        }
    }
    for (const auto& row : out.shed_mw)
        for (double v : row) penalty += inst.shed_penalty * v * dt_h;
    out.operating_cost = fuel + online + startup_cost;
    out.penalty = penalty;

    double rel = std::abs(out.operating_cost + out.penalty - solution.objective) /
                 std::max(1.0, std::abs(solution.objective));
    if (rel > 1e-6)
        throw SolveError("SCUC extraction: recomputed cost differs from the solver objective");
    return out;
}

// --- batch ---------------------------------------------------------------------

namespace {

ScucInstance make_day_instance(const EpochView& view, const RepresentativeProfileSet& profiles,
                               const ScucDayKey& key, const ScucOptions& opt) {
    ScucInstance inst;
    inst.view = view;
    inst.shed_penalty = opt.shed_penalty;
    inst.reserve_required = opt.reserve_required;
    inst.theta_bound = opt.theta_bound;
    if (opt.initial_commitment_on)
        inst.initial_commitment.assign(view.generators.size(), 1);
    const int T = view.horizon.intervals_per_day;
    inst.rating_mva.resize(view.lines.size());
    for (std::size_t l = 0; l < view.lines.size(); ++l) {
        inst.rating_mva[l].resize(T);
        for (int t = 0; t < T; ++t)
            inst.rating_mva[l][t] = profiles.line_rating(view.lines[l].id, key.epoch, key.quarter, t);
    }
    inst.avail_mw.resize(view.renewables.size());
    for (std::size_t r = 0; r < view.renewables.size(); ++r) {
        inst.avail_mw[r].resize(T);
        for (int t = 0; t < T; ++t)
            inst.avail_mw[r][t] =
                profiles.renewable_max(view.renewables[r].id, key.epoch, key.quarter, t);
    }
    inst.load_mw.resize(view.buses.size());
    for (std::size_t n = 0; n < view.buses.size(); ++n) {
        inst.load_mw[n].resize(T);
        for (int t = 0; t < T; ++t)
            inst.load_mw[n][t] =
                profiles.load(view.buses[n].id, key.epoch, key.quarter, key.day_type, t);
    }
    return inst;
}

}  // namespace

std::vector<ScucDayResult> run_batch(const CaseGrid& case_grid,
                                     const RepresentativeProfileSet& profiles,
                                     const ScucOptions& options) {
    std::vector<ScucDayKey> keys;
    for (const auto& view : case_grid.epochs) {
        const auto& h = view.horizon;
        for (int q = 1; q <= h.quarters_per_year; ++q) {
            for (int dt = 0; dt < h.day_types(); ++dt)
                keys.push_back(ScucDayKey{view.epoch, q, static_cast<DayType>(dt)});
        }
    }
    std::vector<ScucDayResult> results(keys.size());

    auto solve_one = [&](std::size_t i) {
        const ScucDayKey& key = keys[i];
        ScucDayResult& res = results[i];
        res.key = key;
        try {
            const EpochView& view = case_grid.epochs[key.epoch - 1];
            ScucInstance inst = make_day_instance(view, profiles, key, options);
            auto [prob, map] = build_scuc(inst);
            milp::Solution sol = milp::solve_milp(prob, options.solver);
            res.status = sol.status;
            if (sol.status == milp::Status::Optimal) {
                res.solution = extract_scuc_solution(sol, map, inst);
            } else {
                res.error = "solve ended with status " + to_string(sol.status);
            }
        } catch (const std::exception& e) {
            res.status = milp::Status::Numerical;
            res.error = e.what();
        }
    };

    int workers = std::max(1, options.workers);
    if (workers == 1 || keys.size() <= 1) {
        for (std::size_t i = 0; i < keys.size(); ++i) solve_one(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= keys.size()) break;
                    solve_one(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return results;
}

// --- result files ----------------------------------------------------------------

std::string batch_days_path(const std::string& dir, InvestmentCase kind) {
    return dir + "/scuc_" + to_string(kind) + "_days.csv";
}

std::string batch_summary_path(const std::string& dir, InvestmentCase kind) {
    return dir + "/scuc_" + to_string(kind) + "_summary.csv";
}

void write_batch_results(const std::vector<ScucDayResult>& results, const CaseGrid& case_grid,
                         const std::string& dir) {
    const double dt_h = case_grid.epochs.empty()
                            ? 3.0
                            : case_grid.epochs.front().horizon.interval_hours;
    std::ostringstream days, summary;
    days << "epoch,quarter,day_type,interval,bus_id,shed_mw,curtail_mw\n";
    summary << "epoch,quarter,day_type,operating_cost_usd,total_generation_mwh,total_shed_mwh\n";
    for (const auto& res : results) {
        if (!res.solution) continue;
        const auto& view = case_grid.epochs[res.key.epoch - 1];
        const auto& sol = *res.solution;
        for (std::size_t n = 0; n < view.buses.size(); ++n) {
            for (std::size_t t = 0; t < sol.shed_mw[n].size(); ++t) {
                days << res.key.epoch << ',' << res.key.quarter << ','
                     << to_string(res.key.day_type) << ',' << t << ',' << view.buses[n].id << ','
                     << format_double(sol.shed_mw[n][t]) << ','
                     << format_double(sol.curtail_mw[n][t]) << '\n';
            }
        }
        summary << res.key.epoch << ',' << res.key.quarter << ',' << to_string(res.key.day_type)
                << ',' << format_double(sol.operating_cost) << ','
                << format_double(sol.total_generation_mwh(dt_h)) << ','
                << format_double(sol.total_shed_mwh(dt_h)) << '\n';
    }
    write_file_atomic(batch_days_path(dir, case_grid.kind), days.str());
    write_file_atomic(batch_summary_path(dir, case_grid.kind), summary.str());
}

namespace {

DayType day_type_from_string(const std::string& s, const std::string& ctx) {
    if (s == "WD") return DayType::Weekday;
    if (s == "WE") return DayType::Weekend;
    throw ParseError(ctx + ": day_type must be WD or WE");
}

}  // namespace

std::vector<ScucDayRow> read_batch_days(const std::string& path) {
    CsvReader reader(path,
                     {"epoch", "quarter", "day_type", "interval", "bus_id", "shed_mw", "curtail_mw"});
    std::vector<ScucDayRow> rows;
    std::vector<std::string> f;
    while (reader.next(f)) {
        std::string ctx = path + ":" + std::to_string(reader.row_number());
        ScucDayRow r;
        r.epoch = static_cast<int>(parse_long(f[0], ctx));
        r.quarter = static_cast<int>(parse_long(f[1], ctx));
        r.day_type = day_type_from_string(f[2], ctx);
        r.interval = static_cast<int>(parse_long(f[3], ctx));
        r.bus_id = f[4];
        r.shed_mw = parse_double(f[5], ctx);
        r.curtail_mw = parse_double(f[6], ctx);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ScucSummaryRow> read_batch_summary(const std::string& path) {
    CsvReader reader(path, {"epoch", "quarter", "day_type", "operating_cost_usd",
                            "total_generation_mwh", "total_shed_mwh"});
    std::vector<ScucSummaryRow> rows;
    std::vector<std::string> f;
    while (reader.next(f)) {
        std::string ctx = path + ":" + std::to_string(reader.row_number());
        ScucSummaryRow r;
        r.epoch = static_cast<int>(parse_long(f[0], ctx));
        r.quarter = static_cast<int>(parse_long(f[1], ctx));
        r.day_type = day_type_from_string(f[2], ctx);
        r.operating_cost_usd = parse_double(f[3], ctx);
        r.total_generation_mwh = parse_double(f[4], ctx);
        r.total_shed_mwh = parse_double(f[5], ctx);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace gridplan
