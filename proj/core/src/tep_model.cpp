#include "gridplan/tep_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gridplan/csv.hpp"
#include "gridplan/errors.hpp"

namespace gridplan {

using milp::Problem;
using milp::Relation;
using milp::VarKind;

void TepInstance::validate_or_throw() const {
    grid.validate_or_throw();
    if (!(theta_bound > 0.0)) throw ValidationError({"tep: theta_bound must be positive"});
    if (profiles.horizon() != grid.horizon)
        throw ValidationError({"tep: profile horizon does not match the grid horizon"});
    profiles.check_covers(grid);
    profiles.validate_or_throw(&grid);
    if (shed_allowed) {
        double max_cost = 0.0;
        for (const auto& g : grid.generators) max_cost = std::max(max_cost, g.marginal_cost);
        if (shed_penalty < 10.0 * max_cost)
            throw ValidationError({"tep: shed_penalty must exceed 10x the highest marginal cost"});
    }
}

namespace {

TepIndex make_index(const GridModel& grid) {
    TepIndex idx;
    idx.num_epochs = grid.horizon.num_epochs;
    idx.quarters = grid.horizon.quarters_per_year;
    idx.day_types = grid.horizon.day_types();
    idx.intervals = grid.horizon.intervals_per_day;
    for (const auto& b : grid.buses) idx.bus_ids.push_back(b.id);
    for (const auto& l : grid.lines) idx.line_ids.push_back(l.id);
    for (const auto& g : grid.generators) idx.gen_ids.push_back(g.id);
    for (const auto& r : grid.renewables) idx.renew_ids.push_back(r.id);
    for (const auto& l : grid.lines)
        if (l.candidate) idx.cand_ids.push_back(l.id);
    return idx;
}

int reference_bus(const GridModel& grid) {
    int best = 0;
    for (std::size_t i = 1; i < grid.buses.size(); ++i) {
        if (grid.buses[i].id < grid.buses[best].id) best = static_cast<int>(i);
    }
    return best;
}

// Rating and availability lookups, with the traditional-TEP reduction
// (per-quarter min rating / mean availability) applied when requested.
struct ProfileAccess {
    const TepInstance& inst;
    bool traditional;

    double rating_mva(const std::string& line, int e, int q, int t) const {
        if (!traditional) return inst.profiles.line_rating(line, e, q, t);
        double v = milp::kInf;
        for (int tt = 0; tt < inst.grid.horizon.intervals_per_day; ++tt)
            v = std::min(v, inst.profiles.line_rating(line, e, q, tt));
        return v;
    }
    double avail_mw(const std::string& plant, int e, int q, int t) const {
        if (!traditional) return inst.profiles.renewable_max(plant, e, q, t);
        double s = 0.0;
        int n = inst.grid.horizon.intervals_per_day;
        for (int tt = 0; tt < n; ++tt) s += inst.profiles.renewable_max(plant, e, q, tt);
        return s / n;
    }
};

std::string slot_name(const TepIndex& idx, int s) {
    std::ostringstream os;
    os << "p" << idx.epoch_of_slot(s) << "_q" << idx.quarter_of_slot(s) << "_"
       << (idx.dt_of_slot(s) == 0 ? "WD" : "WE") << "_t" << idx.t_of_slot(s);
    return os.str();
}

}  // namespace

std::pair<Problem, TepVariableMap> build_tep(const TepInstance& inst) {
    inst.validate_or_throw();
    const GridModel& grid = inst.grid;
    const PlanningHorizon& h = grid.horizon;
    const double base = grid.base_mva;
    const double dt_h = h.interval_hours;

    TepVariableMap map;
    map.index = make_index(grid);
    const TepIndex& idx = map.index;
    const int S = idx.num_slots();
    const int P = idx.num_epochs;

    ProfileAccess prof{inst, inst.variant == TepVariant::Traditional};

    Problem prob;
    prob.name = inst.variant == TepVariant::Traditional ? "tep_traditional" : "tep_ci";

    auto day_weight = [&](int s) {
        return idx.dt_of_slot(s) == 0 ? static_cast<double>(h.weekdays_per_quarter)
                                      : static_cast<double>(h.weekend_days_per_quarter);
    };

    // Build binaries first so the MPS INTORG block is contiguous.
    const int C = static_cast<int>(idx.cand_ids.size());
    map.oper.assign(C, std::vector<int>(P));
    map.built.assign(C, std::vector<int>(P));
    for (int c = 0; c < C; ++c) {
        for (int p = 1; p <= P; ++p) {
            map.oper[c][p - 1] =
                prob.add_variable("u_" + idx.cand_ids[c] + "_p" + std::to_string(p), 0, 1,
                                  VarKind::Binary);
        }
    }
    for (int c = 0; c < C; ++c) {
        const TransmissionLine* line = grid.find_line(idx.cand_ids[c]);
        for (int p = 1; p <= P; ++p) {
            int v = prob.add_variable("v_" + idx.cand_ids[c] + "_p" + std::to_string(p), 0, 1,
                                      VarKind::Binary);
            map.built[c][p - 1] = v;
            double factor = 1.0 + (P - p + 1) * grid.maintenance_ratio * h.years_per_epoch;
            prob.set_objective_coeff(v, line->construction_cost * factor);
        }
    }

    // Bus angles; reference bus pinned to zero in every slot.
    const int ref = reference_bus(grid);
    const int B = static_cast<int>(idx.bus_ids.size());
    map.theta.assign(B, std::vector<int>(S));
    for (int n = 0; n < B; ++n) {
        for (int s = 0; s < S; ++s) {
            double lo = n == ref ? 0.0 : -inst.theta_bound;
            double hi = n == ref ? 0.0 : inst.theta_bound;
            map.theta[n][s] =
                prob.add_variable("th_" + idx.bus_ids[n] + "_" + slot_name(idx, s), lo, hi);
        }
    }

    // Line flows (per-unit).  Existing lines get the time-varying rating as a
    // hard bound; candidate flows are limited by the u-linked rows below.
    const int L = static_cast<int>(idx.line_ids.size());
    map.flow.assign(L, std::vector<int>(S));
    for (int l = 0; l < L; ++l) {
        const TransmissionLine& line = grid.lines[l];
        for (int s = 0; s < S; ++s) {
            double r = prof.rating_mva(line.id, idx.epoch_of_slot(s), idx.quarter_of_slot(s),
                                       idx.t_of_slot(s)) /
                       base;
            map.flow[l][s] =
                prob.add_variable("f_" + line.id + "_" + slot_name(idx, s), -r, r);
        }
    }

    // Thermal dispatch with epoch gating for new units.
    const int G = static_cast<int>(idx.gen_ids.size());
    map.gen.assign(G, std::vector<int>(S));
    for (int g = 0; g < G; ++g) {
        const ThermalGenerator& unit = grid.generators[g];
        for (int s = 0; s < S; ++s) {
            int e = idx.epoch_of_slot(s);
            double lo = unit.p_min_in_epoch(e) / base;
            double hi = unit.p_max_in_epoch(e) / base;
            int v = prob.add_variable("pg_" + unit.id + "_" + slot_name(idx, s), lo, hi);
            map.gen[g][s] = v;
            prob.set_objective_coeff(
                v, unit.marginal_cost * dt_h * base * h.years_per_epoch * day_weight(s));
        }
    }

    // Renewable dispatch bounded by availability (zero before commissioning).
    const int R = static_cast<int>(idx.renew_ids.size());
    map.renew.assign(R, std::vector<int>(S));
    for (int r = 0; r < R; ++r) {
        const RenewablePlant& plant = grid.renewables[r];
        for (int s = 0; s < S; ++s) {
            int e = idx.epoch_of_slot(s);
            double lo = 0.0, hi = 0.0;
            if (plant.commissioned_by(e)) {
                hi = prof.avail_mw(plant.id, e, idx.quarter_of_slot(s), idx.t_of_slot(s)) / base;
                lo = plant.p_min_mw / base;
            }
            map.renew[r][s] = prob.add_variable("pr_" + plant.id + "_" + slot_name(idx, s), lo, hi);
        }
    }

    if (inst.shed_allowed) {
        map.shed.assign(B, std::vector<int>(S));
        for (int n = 0; n < B; ++n) {
            for (int s = 0; s < S; ++s) {
                double load = inst.profiles.load(idx.bus_ids[n], idx.epoch_of_slot(s),
                                                 idx.quarter_of_slot(s),
                                                 static_cast<DayType>(idx.dt_of_slot(s)),
                                                 idx.t_of_slot(s)) /
                              base;
                int v = prob.add_variable("sh_" + idx.bus_ids[n] + "_" + slot_name(idx, s), 0.0,
                                          load);
                map.shed[n][s] = v;
                prob.set_objective_coeff(
                    v, inst.shed_penalty * dt_h * base * h.years_per_epoch * day_weight(s));
            }
        }
    }

    // Nodal balance: inflow - outflow + generation + renewables (+ shed) = load.
    for (int n = 0; n < B; ++n) {
        for (int s = 0; s < S; ++s) {
            double load = inst.profiles.load(idx.bus_ids[n], idx.epoch_of_slot(s),
                                             idx.quarter_of_slot(s),
                                             static_cast<DayType>(idx.dt_of_slot(s)),
                                             idx.t_of_slot(s)) /
                          base;
            int row = prob.add_constraint("bal_" + idx.bus_ids[n] + "_" + slot_name(idx, s),
                                          Relation::Equal, load);
            for (int l = 0; l < L; ++l) {
                if (grid.lines[l].to_bus == idx.bus_ids[n]) prob.add_coeff(row, map.flow[l][s], 1.0);
                if (grid.lines[l].from_bus == idx.bus_ids[n])
                    prob.add_coeff(row, map.flow[l][s], -1.0);
            }
            for (int g = 0; g < G; ++g)
                if (grid.generators[g].bus == idx.bus_ids[n])
                    prob.add_coeff(row, map.gen[g][s], 1.0);
            for (int r = 0; r < R; ++r)
                if (grid.renewables[r].bus == idx.bus_ids[n])
                    prob.add_coeff(row, map.renew[r][s], 1.0);
            if (inst.shed_allowed) prob.add_coeff(row, map.shed[n][s], 1.0);
        }
    }

    // DC flow definition on existing lines; big-M activation on candidates.
    for (int l = 0; l < L; ++l) {
        const TransmissionLine& line = grid.lines[l];
        int nf = grid.bus_index(line.from_bus);
        int nt = grid.bus_index(line.to_bus);
        double inv_x = 1.0 / line.reactance;
        if (!line.candidate) {
            for (int s = 0; s < S; ++s) {
                int row = prob.add_constraint("fd_" + line.id + "_" + slot_name(idx, s),
                                              Relation::Equal, 0.0);
                prob.add_coeff(row, map.flow[l][s], 1.0);
                prob.add_coeff(row, map.theta[nf][s], -inv_x);
                prob.add_coeff(row, map.theta[nt][s], inv_x);
            }
        }
    }
    for (int c = 0; c < C; ++c) {
        const std::string& id = idx.cand_ids[c];
        int l = static_cast<int>(std::find(idx.line_ids.begin(), idx.line_ids.end(), id) -
                                 idx.line_ids.begin());
        const TransmissionLine& line = grid.lines[l];
        int nf = grid.bus_index(line.from_bus);
        int nt = grid.bus_index(line.to_bus);
        double inv_x = 1.0 / line.reactance;
        double big_m = line.big_m ? *line.big_m : 2.0 * inst.theta_bound * inv_x;
        for (int s = 0; s < S; ++s) {
            int e = idx.epoch_of_slot(s);
            int u = map.oper[c][e - 1];
            // f - (thF - thT)/x <= M (1 - u)
            int hi = prob.add_constraint("bmH_" + id + "_" + slot_name(idx, s),
                                         Relation::LessEqual, big_m);
            prob.add_coeff(hi, map.flow[l][s], 1.0);
            prob.add_coeff(hi, map.theta[nf][s], -inv_x);
            prob.add_coeff(hi, map.theta[nt][s], inv_x);
            prob.add_coeff(hi, u, big_m);
            // f - (thF - thT)/x >= -M (1 - u)
            int lo = prob.add_constraint("bmL_" + id + "_" + slot_name(idx, s),
                                         Relation::GreaterEqual, -big_m);
            prob.add_coeff(lo, map.flow[l][s], 1.0);
            prob.add_coeff(lo, map.theta[nf][s], -inv_x);
            prob.add_coeff(lo, map.theta[nt][s], inv_x);
            prob.add_coeff(lo, u, -big_m);
            // |f| <= rating * u
            double r = prof.rating_mva(id, e, idx.quarter_of_slot(s), idx.t_of_slot(s)) / base;
            int cap_hi = prob.add_constraint("ccH_" + id + "_" + slot_name(idx, s),
                                             Relation::LessEqual, 0.0);
            prob.add_coeff(cap_hi, map.flow[l][s], 1.0);
            prob.add_coeff(cap_hi, u, -r);
            int cap_lo = prob.add_constraint("ccL_" + id + "_" + slot_name(idx, s),
                                             Relation::GreaterEqual, 0.0);
            prob.add_coeff(cap_lo, map.flow[l][s], 1.0);
            prob.add_coeff(cap_lo, u, r);
        }
    }

    // Build logic: u non-decreasing, v catches the first-up increment, one
    // build per candidate over the horizon.
    for (int c = 0; c < C; ++c) {
        for (int p = 2; p <= P; ++p) {
            int row = prob.add_constraint(
                "mono_" + idx.cand_ids[c] + "_p" + std::to_string(p), Relation::LessEqual, 0.0);
            prob.add_coeff(row, map.oper[c][p - 2], 1.0);
            prob.add_coeff(row, map.oper[c][p - 1], -1.0);
        }
        int first = prob.add_constraint("vu1_" + idx.cand_ids[c], Relation::Equal, 0.0);
        prob.add_coeff(first, map.built[c][0], 1.0);
        prob.add_coeff(first, map.oper[c][0], -1.0);
        for (int p = 2; p <= P; ++p) {
            int row = prob.add_constraint(
                "vinc_" + idx.cand_ids[c] + "_p" + std::to_string(p), Relation::LessEqual, 0.0);
            prob.add_coeff(row, map.oper[c][p - 1], 1.0);
            prob.add_coeff(row, map.oper[c][p - 2], -1.0);
            prob.add_coeff(row, map.built[c][p - 1], -1.0);
        }
        int once = prob.add_constraint("vone_" + idx.cand_ids[c], Relation::LessEqual, 1.0);
        for (int p = 1; p <= P; ++p) prob.add_coeff(once, map.built[c][p - 1], 1.0);
    }

    prob.validate_or_throw();
    return {std::move(prob), std::move(map)};
}

std::pair<Problem, TepVariableMap> build_tep_ci(const TepInstance& instance) {
    if (instance.variant != TepVariant::ClimateInformed)
        throw std::invalid_argument("build_tep_ci requires the climate-informed variant");
    return build_tep(instance);
}

std::pair<Problem, TepVariableMap> build_tep_traditional(const TepInstance& instance) {
    if (instance.variant != TepVariant::Traditional)
        throw std::invalid_argument("build_tep_traditional requires the traditional variant");
    return build_tep(instance);
}

double capital_cost(const std::vector<BuiltLine>& plan, const GridModel& grid) {
    const int P = grid.horizon.num_epochs;
    double total = 0.0;
    for (const auto& b : plan) {
        const TransmissionLine* line = grid.find_line(b.line_id);
        if (!line) throw ValidationError({"capital_cost: unknown line '" + b.line_id + "'"});
        if (b.construction_epoch < 1 || b.construction_epoch > P)
            throw ValidationError({"capital_cost: line '" + b.line_id + "' epoch outside horizon"});
        double factor =
            1.0 + (P - b.construction_epoch + 1) * grid.maintenance_ratio * grid.horizon.years_per_epoch;
        total += line->construction_cost * factor;
    }
    return total;
}

double operation_cost(const TepDispatch& dispatch, const GridModel& grid) {
    const PlanningHorizon& h = grid.horizon;
    const TepIndex& idx = dispatch.index;
    double total = 0.0;
    for (std::size_t g = 0; g < idx.gen_ids.size(); ++g) {
        const ThermalGenerator* unit = nullptr;
        for (const auto& cand : grid.generators)
            if (cand.id == idx.gen_ids[g]) unit = &cand;
        if (!unit) throw ValidationError({"operation_cost: unknown generator '" + idx.gen_ids[g] + "'"});
        for (int s = 0; s < idx.num_slots(); ++s) {
            double w = idx.dt_of_slot(s) == 0 ? h.weekdays_per_quarter : h.weekend_days_per_quarter;
            total += h.years_per_epoch * w * dispatch.gen_mw[g][s] * h.interval_hours *
                     unit->marginal_cost;
        }
    }
    return total;
}

std::vector<BuiltLine> TepSolution::to_built_lines() const {
    std::vector<BuiltLine> out;
    for (std::size_t c = 0; c < index.cand_ids.size(); ++c) {
        for (int p = 0; p < index.num_epochs; ++p) {
            if (built[c][p]) out.push_back(BuiltLine{index.cand_ids[c], p + 1});
        }
    }
    return out;
}

TepSolution extract_tep_solution(const milp::Solution& solution, const TepVariableMap& map,
                                 const TepInstance& instance) {
    if (solution.status != milp::Status::Optimal)
        throw SolveError("cannot extract TEP solution from a '" + to_string(solution.status) +
                         "' solve");
    const TepIndex& idx = map.index;
    const GridModel& grid = instance.grid;
    const double base = grid.base_mva;
    const int S = idx.num_slots();
    const auto& x = solution.values;

    TepSolution out;
    out.index = idx;

    const int C = static_cast<int>(idx.cand_ids.size());
    out.built.assign(C, std::vector<int>(idx.num_epochs, 0));
    out.operational.assign(C, std::vector<int>(idx.num_epochs, 0));
    for (int c = 0; c < C; ++c) {
        for (int p = 0; p < idx.num_epochs; ++p) {
            double u = x[map.oper[c][p]];
            double v = x[map.built[c][p]];
            if (std::abs(u - std::round(u)) > 1e-6 || std::abs(v - std::round(v)) > 1e-6)
                throw SolveError("TEP extraction: non-integral build variable for '" +
                                 idx.cand_ids[c] + "'");
            out.operational[c][p] = static_cast<int>(std::round(u));
            out.built[c][p] = static_cast<int>(std::round(v));
        }
    }

    // Build-logic shape: operational is monotone, built marks exactly the
    // first operational epoch.
    for (int c = 0; c < C; ++c) {
        int builds = 0, first_up = -1;
        for (int p = 0; p < idx.num_epochs; ++p) {
            if (p > 0 && out.operational[c][p - 1] > out.operational[c][p])
                throw SolveError("TEP extraction: non-monotone build status for '" +
                                 idx.cand_ids[c] + "'");
            if (out.operational[c][p] && first_up < 0) first_up = p;
            builds += out.built[c][p];
        }
        if (builds > 1)
            throw SolveError("TEP extraction: '" + idx.cand_ids[c] + "' built more than once");
        for (int p = 0; p < idx.num_epochs; ++p) {
            int expect = (first_up == p) ? 1 : 0;
            if (out.built[c][p] != expect)
                throw SolveError("TEP extraction: built flag for '" + idx.cand_ids[c] +
                                 "' does not mark the first operational epoch");
        }
    }

    auto pull = [&](const std::vector<std::vector<int>>& vars, double scale) {
        std::vector<std::vector<double>> out_vals(vars.size(), std::vector<double>(S, 0.0));
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (int s = 0; s < S; ++s) out_vals[i][s] = x[vars[i][s]] * scale;
        return out_vals;
    };
    out.gen_mw = pull(map.gen, base);
    out.renew_mw = pull(map.renew, base);
    out.bus_angle = pull(map.theta, 1.0);
    if (instance.shed_allowed) out.shed_mw = pull(map.shed, base);

    // Flows: existing lines recomputed from the extracted angles (exact DC
    // identity); candidate flows read from their variables.
    out.flow_mw.assign(idx.line_ids.size(), std::vector<double>(S, 0.0));
    for (std::size_t l = 0; l < idx.line_ids.size(); ++l) {
        const TransmissionLine& line = grid.lines[l];
        int nf = grid.bus_index(line.from_bus);
        int nt = grid.bus_index(line.to_bus);
        for (int s = 0; s < S; ++s) {
            if (line.candidate) {
                out.flow_mw[l][s] = x[map.flow[l][s]] * base;
            } else {
                out.flow_mw[l][s] =
                    (out.bus_angle[nf][s] - out.bus_angle[nt][s]) / line.reactance * base;
            }
        }
    }

    // Residuals on the original per-unit model.
    const auto [check_problem, check_map] = build_tep(instance);
    double resid = check_problem.max_violation(x);
    if (resid > 1e-6)
        throw SolveError("TEP extraction: constraint residual " + format_double(resid) +
                         " exceeds 1e-6");

    out.cap_cost = capital_cost(out.to_built_lines(), grid);
    out.op_cost = operation_cost(TepDispatch{idx, out.gen_mw}, grid);
    if (instance.shed_allowed && !out.shed_mw.empty()) {
        const PlanningHorizon& h = grid.horizon;
        double pen = 0.0;
        for (const auto& per_bus : out.shed_mw) {
            for (int s = 0; s < S; ++s) {
                double w = idx.dt_of_slot(s) == 0 ? h.weekdays_per_quarter
                                                  : h.weekend_days_per_quarter;
                pen += h.years_per_epoch * w * per_bus[s] * h.interval_hours * instance.shed_penalty;
            }
        }
        out.shed_penalty_cost = pen;
    }
    out.total = out.op_cost + out.cap_cost;

    double recomputed = out.total + out.shed_penalty_cost;
    double rel = std::abs(recomputed - solution.objective) /
                 std::max(1.0, std::abs(solution.objective));
    if (rel > 1e-6)
        throw SolveError("TEP extraction: recomputed objective differs from the solver's by " +
                         format_double(rel) + " (relative)");
    return out;
}

// --- plan file ---------------------------------------------------------------

void write_tep_plan(const TepPlanFile& plan, const std::string& path) {
    nlohmann::json j;
    j["built"] = nlohmann::json::array();
    for (const auto& b : plan.built)
        j["built"].push_back(
            {{"line_id", b.line_id}, {"construction_epoch", b.construction_epoch}});
    j["costs"] = {{"generation_cost_usd", plan.generation_cost},
                  {"transmission_investment_cost_usd", plan.transmission_investment_cost},
                  {"total_usd", plan.total_cost}};
    write_file_atomic(path, j.dump(2) + "\n");
}

TepPlanFile read_tep_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open plan file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    TepPlanFile plan;
    try {
        for (const auto& b : j.at("built")) {
            plan.built.push_back(BuiltLine{b.at("line_id").get<std::string>(),
                                           b.at("construction_epoch").get<int>()});
        }
        const auto& c = j.at("costs");
        plan.generation_cost = c.at("generation_cost_usd").get<double>();
        plan.transmission_investment_cost = c.at("transmission_investment_cost_usd").get<double>();
        plan.total_cost = c.at("total_usd").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return plan;
}

}  // namespace gridplan
