#include "gridplan/tutorial.hpp"

#include <cmath>
#include <filesystem>
#include <map>

#include "json.hpp"

#include "gridplan/csv.hpp"
#include "gridplan/errors.hpp"
#include "gridplan/time_util.hpp"

namespace gridplan::tutorial {

namespace {

constexpr int kStartYear = 2031;

ThermalGenerator thermal(std::string id, std::string bus, double pmax, double cost,
                         double online, double startup) {
    ThermalGenerator g;
    g.id = std::move(id);
    g.bus = std::move(bus);
    g.p_min_mw = 0.0;
    g.p_max_mw = pmax;
    g.marginal_cost = cost;
    g.online_cost = online;
    g.startup_cost = startup;
    g.ramp_mw = pmax;  // 6-hour intervals: full-range ramping
    g.reserve_ramp_mw = 0.3 * pmax;
    return g;
}

TransmissionLine line(std::string id, std::string from, std::string to, double x, double rating,
                      bool candidate = false, double cost_musd = 0.0) {
    TransmissionLine l;
    l.id = std::move(id);
    l.from_bus = std::move(from);
    l.to_bus = std::move(to);
    l.reactance = x;
    l.static_rating_mva = rating;
    l.dlr.base_rating_mva = rating;
    l.candidate = candidate;
    l.construction_cost = cost_musd * 1e6;
    return l;
}

}  // namespace

GridModel five_bus_grid() {
    GridModel g;
    g.name = "five_bus_tutorial";
    g.base_mva = 100.0;
    g.maintenance_ratio = 0.02;
    g.horizon.num_epochs = 2;
    g.horizon.years_per_epoch = 1;
    g.horizon.weekdays_per_quarter = 65;
    g.horizon.weekend_days_per_quarter = 26;
    g.horizon.intervals_per_day = 4;
    g.horizon.interval_hours = 6.0;
    g.load_growth = {1.0, 1.1};

    for (int i = 1; i <= 5; ++i) {
        Bus b;
        b.id = "b" + std::to_string(i);
        b.latitude = 29.0 + 0.8 * i;
        b.longitude = -98.0 - 0.5 * i;
        b.load_profile_ref = b.id;
        g.buses.push_back(std::move(b));
    }

    g.lines.push_back(line("L12", "b1", "b2", 0.10, 70.0));
    g.lines.push_back(line("L23", "b2", "b3", 0.08, 70.0));
    g.lines.push_back(line("L34", "b3", "b4", 0.10, 60.0));
    g.lines.push_back(line("L45", "b4", "b5", 0.12, 60.0));
    // Candidate corridors; both derate sharply around noon.
    g.lines.push_back(line("c13", "b1", "b3", 0.09, 120.0, true, 4.0));
    g.lines.push_back(line("c35", "b3", "b5", 0.10, 100.0, true, 9.5));
    g.lines[4].dlr.solar_coeff = 0.30;
    g.lines[5].dlr.solar_coeff = 0.50;

    g.generators.push_back(thermal("g1", "b1", 200.0, 18.0, 200.0, 400.0));
    g.generators.push_back(thermal("g4", "b4", 150.0, 35.0, 150.0, 300.0));
    g.generators.push_back(thermal("g5", "b5", 200.0, 55.0, 100.0, 200.0));

    RenewablePlant wind;
    wind.id = "w1";
    wind.bus = "b1";
    wind.kind = RenewableKind::Wind;
    wind.capacity_mw = 160.0;
    g.renewables.push_back(wind);

    RenewablePlant solar;
    solar.id = "s2";
    solar.bus = "b2";
    solar.kind = RenewableKind::Solar;
    solar.capacity_mw = 60.0;
    g.renewables.push_back(solar);

    g.validate_or_throw();
    return g;
}

GenerationPlan five_bus_generation_plan() {
    GenerationPlan plan;
    GenerationInvestment wind;
    wind.asset_id = "w3new";
    wind.kind = "wind";
    wind.bus = "b3";
    wind.capacity_mw = 100.0;
    wind.commission_epoch = 2;
    plan.push_back(wind);
    return plan;
}

GridModel growth_grid() {
    GridModel g;
    g.name = "growth_fixture";
    g.base_mva = 100.0;
    g.maintenance_ratio = 0.02;
    g.horizon.num_epochs = 2;
    g.horizon.years_per_epoch = 1;
    g.horizon.weekdays_per_quarter = 65;
    g.horizon.weekend_days_per_quarter = 26;
    g.horizon.intervals_per_day = 4;
    g.horizon.interval_hours = 6.0;
    g.load_growth = {1.0, 2.1};

    for (int i = 1; i <= 2; ++i) {
        Bus b;
        b.id = "b" + std::to_string(i);
        b.latitude = 30.0 + i;
        b.longitude = -97.0 - i;
        b.load_profile_ref = b.id;
        g.buses.push_back(std::move(b));
    }
    // The candidate parallels e12 with lower impedance, so DC flow lets it
    // carry most of the added transfer.
    g.lines.push_back(line("e12", "b1", "b2", 0.10, 30.0));
    g.lines.push_back(line("c12", "b1", "b2", 0.05, 80.0, true, 2.0));

    g.generators.push_back(thermal("t1", "b1", 100.0, 20.0, 100.0, 200.0));
    g.generators.push_back(thermal("t2", "b2", 40.0, 45.0, 80.0, 160.0));

    RenewablePlant wind;
    wind.id = "w1";
    wind.bus = "b1";
    wind.kind = RenewableKind::Wind;
    wind.capacity_mw = 60.0;
    g.renewables.push_back(wind);

    g.validate_or_throw();
    return g;
}

GenerationPlan growth_generation_plan() {
    GenerationPlan plan;
    GenerationInvestment t3;
    t3.asset_id = "t3new";
    t3.kind = "thermal";
    t3.bus = "b2";
    t3.capacity_mw = 40.0;
    t3.commission_epoch = 2;
    t3.marginal_cost = 30.0;
    t3.online_cost = 90.0;
    t3.startup_cost = 180.0;
    t3.ramp_mw = 40.0;
    t3.reserve_ramp_mw = 12.0;
    plan.push_back(t3);

    GenerationInvestment w2;
    w2.asset_id = "w2new";
    w2.kind = "wind";
    w2.bus = "b1";
    w2.capacity_mw = 30.0;
    w2.commission_epoch = 2;
    plan.push_back(w2);
    return plan;
}

namespace {

// Seasonal baselines by quarter (Q1..Q4) and a 4-point diurnal shape sampled
// at 00/06/12/18h; finer horizons reuse the bucket of the hour.
constexpr double kTempBase[4] = {2.0, 12.0, 30.0, 14.0};
constexpr double kTempDiurnal[4] = {-3.0, 0.0, 8.0, 2.0};
constexpr double kWindBase[4] = {9.0, 7.5, 5.5, 8.0};
constexpr double kWindDiurnal[4] = {1.25, 1.15, 0.75, 0.95};
constexpr double kSolarPeak[4] = {500.0, 750.0, 950.0, 600.0};
constexpr double kSolarDiurnal[4] = {0.0, 0.45, 1.0, 0.05};
constexpr double kLoadQuarter[4] = {0.97, 1.0, 1.08, 1.0};
constexpr double kLoadDiurnal[4] = {0.6, 0.8, 1.0, 0.8};
// The five-bus system uses a flatter demand day so corridor limits, not the
// demand peak, set the dispatch pattern.
constexpr double kFiveBusLoadDiurnal[4] = {0.95, 1.0, 1.05, 1.0};
constexpr double kWeekendLoadFactor = 0.9;

int bucket_of_hour(double hour) { return static_cast<int>(hour / 6.0) % 4; }

double location_temp_offset(int loc_index) { return 0.5 * ((loc_index * 7) % 5 - 2); }
double location_wind_factor(int loc_index) { return 1.0 + 0.02 * ((loc_index * 3) % 5 - 2); }

std::map<std::string, double> base_loads(const GridModel& grid) {
    if (grid.name == "growth_fixture") return {{"b1", 10.0}, {"b2", 58.0}};
    return {{"b1", 20.0}, {"b2", 40.0}, {"b3", 120.0}, {"b4", 40.0}, {"b5", 80.0}};
}

std::vector<std::int64_t> horizon_days(const GridModel& grid, int days_per_quarter) {
    std::vector<std::int64_t> days;
    const int years = grid.horizon.num_epochs * grid.horizon.years_per_epoch;
    for (int y = 0; y < years; ++y) {
        for (int q = 0; q < 4; ++q) {
            int month = q * 3 + 1;
            std::int64_t first = days_from_civil(kStartYear + y, month, 1);
            std::int64_t last;
            if (days_per_quarter > 0) {
                last = first + days_per_quarter - 1;
            } else {
                int em = month + 3, ey = kStartYear + y;
                if (em > 12) {
                    em -= 12;
                    ++ey;
                }
                last = days_from_civil(ey, em, 1) - 1;
            }
            for (std::int64_t d = first; d <= last; ++d) days.push_back(d);
        }
    }
    return days;
}

int quarter_of_day(std::int64_t day) {
    int y, m, d;
    civil_from_days(day, y, m, d);
    return (m - 1) / 3;
}

}  // namespace

WeatherSeries synth_weather(const GridModel& grid, int days_per_quarter) {
    WeatherSeries series(grid.horizon.interval_hours);
    const int T = grid.horizon.intervals_per_day;
    auto days = horizon_days(grid, days_per_quarter);
    for (std::size_t li = 0; li < grid.buses.size(); ++li) {
        const std::string& loc = grid.buses[li].id;
        for (std::int64_t day : days) {
            int q = quarter_of_day(day);
            for (int t = 0; t < T; ++t) {
                double hour = t * grid.horizon.interval_hours;
                int b = bucket_of_hour(hour);
                WeatherSample s;
                s.time = day * 86400 + static_cast<std::int64_t>(hour * 3600.0);
                s.location_id = loc;
                s.temperature_c =
                    kTempBase[q] + kTempDiurnal[b] + location_temp_offset(static_cast<int>(li));
                s.wind_speed_10m = std::max(
                    0.0,
                    kWindBase[q] * kWindDiurnal[b] * location_wind_factor(static_cast<int>(li)));
                s.shortwave_wm2 = kSolarPeak[q] * kSolarDiurnal[b];
                s.longwave_wm2 = 350.0;
                series.add(s);
            }
        }
    }
    series.finalize();
    return series;
}

LoadSeries synth_loads(const GridModel& grid, int days_per_quarter) {
    LoadSeries series(grid.horizon.interval_hours);
    const int T = grid.horizon.intervals_per_day;
    auto days = horizon_days(grid, days_per_quarter);
    auto bases = base_loads(grid);
    const double* diurnal =
        grid.name == "growth_fixture" ? kLoadDiurnal : kFiveBusLoadDiurnal;
    for (const auto& bus : grid.buses) {
        auto it = bases.find(bus.load_profile_ref);
        double base = it == bases.end() ? 30.0 : it->second;
        for (std::int64_t day : days) {
            int q = quarter_of_day(day);
            double weekend = is_weekend(day) ? kWeekendLoadFactor : 1.0;
            for (int t = 0; t < T; ++t) {
                double hour = t * grid.horizon.interval_hours;
                int b = bucket_of_hour(hour);
                LoadSample s;
                s.time = day * 86400 + static_cast<std::int64_t>(hour * 3600.0);
                s.bus_ref = bus.load_profile_ref;
                s.load_mw = base * kLoadQuarter[q] * diurnal[b] * weekend;
                series.add(s);
            }
        }
    }
    series.finalize();
    return series;
}

void write_study(const std::string& name, const std::string& dir) {
    GridModel grid;
    GenerationPlan plan;
    if (name == "five_bus") {
        grid = five_bus_grid();
        plan = five_bus_generation_plan();
    } else if (name == "growth") {
        grid = growth_grid();
        plan = growth_generation_plan();
    } else {
        throw ParseError("unknown study '" + name + "' (expected five_bus or growth)");
    }
    std::filesystem::create_directories(dir);
    write_grid(grid, dir + "/grid.json");
    write_weather_csv(synth_weather(grid), dir + "/weather.csv");
    write_load_csv(synth_loads(grid), dir + "/loads.csv");

    nlohmann::json gp = nlohmann::json::array();
    for (const auto& inv : plan) {
        nlohmann::json e{{"asset_id", inv.asset_id},
                         {"kind", inv.kind},
                         {"bus", inv.bus},
                         {"capacity_mw", inv.capacity_mw},
                         {"commission_epoch", inv.commission_epoch}};
        if (inv.kind == "thermal") {
            e["marginal_cost_per_mwh"] = inv.marginal_cost;
            e["online_cost"] = inv.online_cost;
            e["startup_cost"] = inv.startup_cost;
            e["ramp_mw_per_interval"] = inv.ramp_mw;
            e["reserve_ramp_mw"] = inv.reserve_ramp_mw;
        }
        gp.push_back(std::move(e));
    }
    write_file_atomic(dir + "/gen_plan.json", gp.dump(2) + "\n");

    nlohmann::json cfg{
        {"grid", "grid.json"},
        {"weather", "weather.csv"},
        {"loads", "loads.csv"},
        {"generation_plan", "gen_plan.json"},
        {"output_dir", "out"},
        {"profiles", {{"terminal_weather_policy", "conservative"}}},
        {"tep", {{"variant", "ci"}, {"theta_bound", 0.6}}},
        {"scuc",
         {{"shed_penalty_per_mwh", 10000.0}, {"reserve", false}, {"initial_commitment", "off"}}},
        {"cases", {"FR", "FGI", "FGTI"}}};
    write_file_atomic(dir + "/study.json", cfg.dump(2) + "\n");
}

}  // namespace gridplan::tutorial
