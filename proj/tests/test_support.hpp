#pragma once

// Shared fixture builders and enumeration oracles for the test suites.  The
// oracles here deliberately avoid the code paths they certify: schedule and
// commitment enumeration drive solve_lp directly, never solve_milp.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridplan/grid_model.hpp"
#include "gridplan/milp/solver.hpp"
#include "gridplan/profile_synthesis.hpp"
#include "gridplan/scuc_model.hpp"
#include "gridplan/tep_model.hpp"

namespace testsupport {

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("gridplan_" + tag + "_" + std::to_string(::getpid()) + "_" +
                  std::to_string(counter++)))
                    .string();
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::string& path() const { return path_; }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

private:
    std::string path_;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

// Runs the gridplan binary (path injected by CMake) with the given args.
// `env` is prepended verbatim, e.g. "GRIDPLAN_WORKERS=2".
inline CliResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = (env.empty() ? std::string() : env + " ") +
                      std::string(GRIDPLAN_CLI_PATH) + " " + args + " 2>&1";
    CliResult res;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, n);
    int status = ::pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

// --- small TEP instances -------------------------------------------------------

// A horizon small enough for enumeration: |T| intervals at 24/|T| hours.
inline gridplan::PlanningHorizon small_horizon(int epochs, int intervals, bool weekends) {
    gridplan::PlanningHorizon h;
    h.num_epochs = epochs;
    h.years_per_epoch = 1;
    h.weekdays_per_quarter = 65;
    h.weekend_days_per_quarter = weekends ? 26 : 0;
    h.intervals_per_day = intervals;
    h.interval_hours = 24.0 / intervals;
    return h;
}

// Fills a profile set with synthetic positive values derived from `seed`.
inline void fill_profiles(gridplan::RepresentativeProfileSet& set, const gridplan::GridModel& grid,
                          unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> rating_jitter(0.7, 1.3);
    std::uniform_real_distribution<double> load_jitter(0.5, 1.0);
    const auto& h = grid.horizon;
    for (const auto& l : grid.lines) {
        for (int e = 1; e <= h.num_epochs; ++e)
            for (int q = 1; q <= h.quarters_per_year; ++q)
                for (int t = 0; t < h.intervals_per_day; ++t)
                    set.set_line_rating(l.id, e, q, t, l.static_rating_mva * rating_jitter(rng));
    }
    for (const auto& r : grid.renewables) {
        for (int e = 1; e <= h.num_epochs; ++e)
            for (int q = 1; q <= h.quarters_per_year; ++q)
                for (int t = 0; t < h.intervals_per_day; ++t)
                    set.set_renewable_max(r.id, e, q, t, r.capacity_mw * load_jitter(rng));
    }
    for (const auto& b : grid.buses) {
        double base = 20.0 + 15.0 * (b.id.back() - '0');
        for (int e = 1; e <= h.num_epochs; ++e)
            for (int q = 1; q <= h.quarters_per_year; ++q)
                for (int dt = 0; dt < h.day_types(); ++dt)
                    for (int t = 0; t < h.intervals_per_day; ++t)
                        set.set_load(b.id, e, q, static_cast<gridplan::DayType>(dt), t,
                                     base * load_jitter(rng) * (1.0 + 0.1 * (e - 1)));
    }
}

// Random connected grid for the TEP enumeration oracle.  Sizes are weighted
// toward the small end of the allowed ranges so exhaustive enumeration stays
// fast; pass big = true for the occasional full-size draw.
inline gridplan::TepInstance random_tep_instance(unsigned seed, bool big = false) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> nbus_d(2, 5);
    std::uniform_int_distribution<int> ncand_small(1, 2);
    std::uniform_int_distribution<int> ncand_big(3, 4);
    std::uniform_int_distribution<int> epochs_d(1, 2);
    std::uniform_int_distribution<int> intervals_small(2, 3);
    std::uniform_real_distribution<double> x_d(0.05, 0.3);
    std::uniform_real_distribution<double> rate_d(30.0, 90.0);
    std::uniform_real_distribution<double> cost_d(0.5e6, 8e6);
    std::uniform_real_distribution<double> gencost_d(10.0, 60.0);

    gridplan::GridModel g;
    g.name = "oracle";
    g.base_mva = 100.0;
    g.maintenance_ratio = 0.02;
    int nbus = nbus_d(rng);
    int intervals = big ? 4 : intervals_small(rng);
    g.horizon = small_horizon(big ? 2 : epochs_d(rng), intervals, (seed % 3) == 0);

    for (int i = 1; i <= nbus; ++i) {
        gridplan::Bus b;
        b.id = "n" + std::to_string(i);
        g.buses.push_back(b);
    }
    // Spanning chain of existing lines keeps the grid connected.
    for (int i = 1; i < nbus; ++i) {
        gridplan::TransmissionLine l;
        l.id = "e" + std::to_string(i);
        l.from_bus = "n" + std::to_string(i);
        l.to_bus = "n" + std::to_string(i + 1);
        l.reactance = x_d(rng);
        l.static_rating_mva = rate_d(rng);
        l.dlr.base_rating_mva = l.static_rating_mva;
        g.lines.push_back(l);
    }
    int ncand = big ? ncand_big(rng) : ncand_small(rng);
    std::uniform_int_distribution<int> bus_d(1, nbus);
    for (int c = 1; c <= ncand; ++c) {
        gridplan::TransmissionLine l;
        l.id = "c" + std::to_string(c);
        int a = bus_d(rng), b = bus_d(rng);
        if (a == b) b = a % nbus + 1;
        l.from_bus = "n" + std::to_string(a);
        l.to_bus = "n" + std::to_string(b);
        l.reactance = x_d(rng);
        l.static_rating_mva = rate_d(rng);
        l.dlr.base_rating_mva = l.static_rating_mva;
        l.candidate = true;
        l.construction_cost = cost_d(rng);
        g.lines.push_back(l);
    }
    // One cheap unit at bus 1, one expensive unit at the last bus, and a mid
    // unit somewhere in between when the draw allows.
    auto add_gen = [&](const std::string& id, const std::string& bus, double pmax, double cost) {
        gridplan::ThermalGenerator t;
        t.id = id;
        t.bus = bus;
        t.p_max_mw = pmax;
        t.marginal_cost = cost;
        t.ramp_mw = pmax;
        g.generators.push_back(t);
    };
    add_gen("gcheap", "n1", 250.0, gencost_d(rng) * 0.4);
    add_gen("gdear", "n" + std::to_string(nbus), 400.0, gencost_d(rng) + 40.0);
    if (nbus >= 3) add_gen("gmid", "n2", 120.0, gencost_d(rng));
    if (seed % 2 == 0) {
        gridplan::RenewablePlant r;
        r.id = "wind1";
        r.bus = "n1";
        r.kind = gridplan::RenewableKind::Wind;
        r.capacity_mw = 80.0;
        g.renewables.push_back(r);
    }
    g.validate_or_throw();

    gridplan::TepInstance inst;
    inst.grid = g;
    gridplan::RepresentativeProfileSet set(g.horizon);
    fill_profiles(set, g, seed * 7 + 1);
    inst.profiles = std::move(set);
    return inst;
}

// Dispatch LP for a fixed line set per epoch, built directly from the
// instance data (no shared structure with build_tep: active lines appear as
// plain DC lines, unbuilt candidates are absent).  Returns false when
// infeasible.
inline bool tep_dispatch_lp(const gridplan::TepInstance& inst,
                            const std::vector<int>& first_epoch,  // 0 = never, per candidate
                            const gridplan::milp::SolverConfig& cfg, double& cost) {
    using namespace gridplan;
    const GridModel& g = inst.grid;
    const PlanningHorizon& h = g.horizon;
    const double base = g.base_mva;
    std::vector<const TransmissionLine*> cands;
    for (const auto& l : g.lines)
        if (l.candidate) cands.push_back(&l);

    milp::Problem prob;
    bool traditional = inst.variant == TepVariant::Traditional;
    auto rating = [&](const std::string& id, int e, int q, int t) {
        if (!traditional) return inst.profiles.line_rating(id, e, q, t);
        double mn = milp::kInf;
        for (int tt = 0; tt < h.intervals_per_day; ++tt)
            mn = std::min(mn, inst.profiles.line_rating(id, e, q, tt));
        return mn;
    };
    auto avail = [&](const std::string& id, int e, int q, int t) {
        if (!traditional) return inst.profiles.renewable_max(id, e, q, t);
        double sum = 0.0;
        for (int tt = 0; tt < h.intervals_per_day; ++tt)
            sum += inst.profiles.renewable_max(id, e, q, tt);
        return sum / h.intervals_per_day;
    };

    int var_counter = 0;
    auto fresh = [&](double lo, double hi) {
        return prob.add_variable("z" + std::to_string(var_counter++), lo, hi);
    };
    int ref = 0;
    for (std::size_t i = 1; i < g.buses.size(); ++i)
        if (g.buses[i].id < g.buses[ref].id) ref = static_cast<int>(i);

    for (int e = 1; e <= h.num_epochs; ++e) {
        std::vector<const TransmissionLine*> active;
        for (const auto& l : g.lines)
            if (!l.candidate) active.push_back(&l);
        for (std::size_t c = 0; c < cands.size(); ++c)
            if (first_epoch[c] != 0 && e >= first_epoch[c]) active.push_back(cands[c]);
        for (int q = 1; q <= h.quarters_per_year; ++q) {
            for (int dt = 0; dt < h.day_types(); ++dt) {
                double weight = h.years_per_epoch *
                                (dt == 0 ? h.weekdays_per_quarter : h.weekend_days_per_quarter);
                for (int t = 0; t < h.intervals_per_day; ++t) {
                    std::vector<int> theta(g.buses.size());
                    for (std::size_t n = 0; n < g.buses.size(); ++n)
                        theta[n] = fresh(n == static_cast<std::size_t>(ref) ? 0 : -inst.theta_bound,
                                         n == static_cast<std::size_t>(ref) ? 0 : inst.theta_bound);
                    std::vector<int> rows(g.buses.size());
                    for (std::size_t n = 0; n < g.buses.size(); ++n) {
                        double load = inst.profiles.load(g.buses[n].id, e, q,
                                                         static_cast<DayType>(dt), t) / base;
                        rows[n] = prob.add_constraint(
                            "b" + std::to_string(var_counter) + "_" + std::to_string(n),
                            milp::Relation::Equal, load);
                    }
                    for (const auto* l : active) {
                        double r = rating(l->id, e, q, t) / base;
                        int f = fresh(-r, r);
                        int fd = prob.add_constraint("fd" + std::to_string(var_counter),
                                                     milp::Relation::Equal, 0.0);
                        int nf = g.bus_index(l->from_bus);
                        int nt = g.bus_index(l->to_bus);
                        prob.add_coeff(fd, f, 1.0);
                        prob.add_coeff(fd, theta[nf], -1.0 / l->reactance);
                        prob.add_coeff(fd, theta[nt], 1.0 / l->reactance);
                        prob.add_coeff(rows[nt], f, 1.0);
                        prob.add_coeff(rows[nf], f, -1.0);
                    }
                    for (const auto& gen : g.generators) {
                        int v = fresh(gen.p_min_in_epoch(e) / base, gen.p_max_in_epoch(e) / base);
                        prob.set_objective_coeff(
                            v, gen.marginal_cost * h.interval_hours * base * weight);
                        prob.add_coeff(rows[g.bus_index(gen.bus)], v, 1.0);
                    }
                    for (const auto& r : g.renewables) {
                        double hi = r.commissioned_by(e) ? avail(r.id, e, q, t) / base : 0.0;
                        double lo = r.commissioned_by(e) ? r.p_min_mw / base : 0.0;
                        int v = fresh(lo, hi);
                        prob.add_coeff(rows[g.bus_index(r.bus)], v, 1.0);
                    }
                }
            }
        }
    }
    auto sol = gridplan::milp::solve_lp(prob, cfg);
    if (sol.status != gridplan::milp::Status::Optimal) return false;
    std::vector<gridplan::BuiltLine> plan;
    for (std::size_t c = 0; c < cands.size(); ++c)
        if (first_epoch[c] != 0) plan.push_back({cands[c]->id, first_epoch[c]});
    cost = sol.objective + gridplan::capital_cost(plan, g);
    return true;
}

// Exhaustive enumeration over monotone build schedules, each evaluated by the
// independent dispatch LP above.  Returns false when no schedule is feasible.
inline bool tep_schedule_oracle(const gridplan::TepInstance& inst,
                                const gridplan::milp::SolverConfig& cfg, double& best) {
    int C = 0;
    for (const auto& l : inst.grid.lines) C += l.candidate;
    const int P = inst.grid.horizon.num_epochs;
    best = gridplan::milp::kInf;
    bool found = false;
    std::vector<int> code(C, 0);
    int total = 1;
    for (int c = 0; c < C; ++c) total *= (P + 1);
    for (int s = 0; s < total; ++s) {
        int v = s;
        for (int c = 0; c < C; ++c) {
            code[c] = v % (P + 1);
            v /= (P + 1);
        }
        double cost;
        if (tep_dispatch_lp(inst, code, cfg, cost)) {
            found = true;
            best = std::min(best, cost);
        }
    }
    return found;
}

// --- small SCUC instances --------------------------------------------------------

inline gridplan::ScucInstance small_scuc_instance(int units, int intervals,
                                                  const std::vector<double>& loads,
                                                  double shed_penalty = 10000.0) {
    gridplan::ScucInstance inst;
    gridplan::EpochView& view = inst.view;
    view.epoch = 1;
    view.base_mva = 100.0;
    view.horizon = small_horizon(1, intervals, false);
    view.horizon.interval_hours = 3.0;  // synthetic day slice, hand-value scale
    gridplan::Bus b;
    b.id = "n1";
    view.buses.push_back(b);
    for (int u = 0; u < units; ++u) {
        gridplan::ThermalGenerator t;
        t.id = "g" + std::to_string(u + 1);
        t.bus = "n1";
        t.p_min_mw = 10.0;
        t.p_max_mw = 100.0;
        t.marginal_cost = 20.0;
        t.online_cost = 50.0;
        t.startup_cost = 100.0;
        t.ramp_mw = 100.0;
        t.reserve_ramp_mw = 30.0;
        view.generators.push_back(t);
    }
    inst.load_mw.assign(1, loads);
    inst.shed_penalty = shed_penalty;
    return inst;
}

inline gridplan::ScucInstance random_scuc_instance(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> units_d(1, 3);
    std::uniform_int_distribution<int> intervals_d(2, 4);
    std::uniform_int_distribution<int> buses_d(1, 2);
    std::uniform_real_distribution<double> pmax_d(40.0, 120.0);
    std::uniform_real_distribution<double> pmin_frac(0.0, 0.3);
    std::uniform_real_distribution<double> cost_d(10.0, 80.0);
    std::uniform_real_distribution<double> fix_d(0.0, 300.0);
    std::uniform_real_distribution<double> load_d(20.0, 150.0);
    std::uniform_real_distribution<double> avail_d(0.0, 60.0);

    gridplan::ScucInstance inst;
    gridplan::EpochView& view = inst.view;
    view.epoch = 1;
    view.base_mva = 100.0;
    int T = intervals_d(rng);
    int B = buses_d(rng);
    int G = units_d(rng);
    view.horizon = small_horizon(1, T, false);
    view.horizon.interval_hours = 3.0;
    for (int n = 0; n < B; ++n) {
        gridplan::Bus b;
        b.id = "n" + std::to_string(n + 1);
        view.buses.push_back(b);
    }
    if (B == 2) {
        gridplan::TransmissionLine l;
        l.id = "e1";
        l.from_bus = "n1";
        l.to_bus = "n2";
        l.reactance = 0.1;
        l.static_rating_mva = 60.0;
        l.dlr.base_rating_mva = 60.0;
        view.lines.push_back(l);
        inst.rating_mva.assign(1, std::vector<double>(T, 60.0));
    }
    for (int u = 0; u < G; ++u) {
        gridplan::ThermalGenerator t;
        t.id = "g" + std::to_string(u + 1);
        t.bus = "n" + std::to_string(u % B + 1);
        t.p_max_mw = pmax_d(rng);
        t.p_min_mw = t.p_max_mw * pmin_frac(rng);
        t.marginal_cost = cost_d(rng);
        t.online_cost = fix_d(rng);
        t.startup_cost = fix_d(rng);
        t.ramp_mw = t.p_max_mw * 0.8;
        t.reserve_ramp_mw = t.p_max_mw * 0.3;
        view.generators.push_back(t);
    }
    if (seed % 2 == 0) {
        gridplan::RenewablePlant r;
        r.id = "w1";
        r.bus = "n1";
        r.kind = gridplan::RenewableKind::Wind;
        r.capacity_mw = 60.0;
        view.renewables.push_back(r);
        inst.avail_mw.assign(1, {});
        for (int t = 0; t < T; ++t) inst.avail_mw[0].push_back(avail_d(rng));
    }
    inst.load_mw.assign(B, {});
    for (int n = 0; n < B; ++n)
        for (int t = 0; t < T; ++t) inst.load_mw[n].push_back(load_d(rng) / B);
    inst.shed_penalty = 10000.0;
    return inst;
}

// Enumeration over all 2^(units x intervals) commitments with an LP for the
// continuous remainder.
inline bool scuc_commitment_oracle(const gridplan::ScucInstance& inst,
                                   const gridplan::milp::SolverConfig& cfg, double& best) {
    auto [prob, map] = gridplan::build_scuc(inst);
    const int G = static_cast<int>(map.commit.size());
    const int T = inst.intervals();
    best = gridplan::milp::kInf;
    bool found = false;
    const int bits = G * T;
    for (std::int64_t mask = 0; mask < (1LL << bits); ++mask) {
        gridplan::milp::Problem fixed = prob;
        for (int g = 0; g < G; ++g)
            for (int t = 0; t < T; ++t)
                fixed.fix_variable(map.commit[g][t], (mask >> (g * T + t)) & 1 ? 1.0 : 0.0);
        auto sol = gridplan::milp::solve_lp(fixed, cfg);
        if (sol.status == gridplan::milp::Status::Optimal) {
            found = true;
            best = std::min(best, sol.objective);
        }
    }
    return found;
}

}  // namespace testsupport
