#include "gridplan/grid_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "gridplan/csv.hpp"
#include "gridplan/errors.hpp"

namespace gridplan {

using nlohmann::json;

int PlanningHorizon::typical_days_per_year() const { return quarters_per_year * day_types(); }

std::string to_string(RenewableKind k) { return k == RenewableKind::Wind ? "wind" : "solar"; }

RenewableKind renewable_kind_from_string(const std::string& s) {
    if (s == "wind") return RenewableKind::Wind;
    if (s == "solar") return RenewableKind::Solar;
    throw ParseError("unknown renewable kind '" + s + "'");
}

std::string to_string(InvestmentCase c) {
    switch (c) {
        case InvestmentCase::FR: return "FR";
        case InvestmentCase::FGI: return "FGI";
        case InvestmentCase::FGTI: return "FGTI";
    }
    return "?";
}

InvestmentCase investment_case_from_string(const std::string& s) {
    if (s == "FR") return InvestmentCase::FR;
    if (s == "FGI") return InvestmentCase::FGI;
    if (s == "FGTI") return InvestmentCase::FGTI;
    throw ParseError("unknown case '" + s + "' (expected FR, FGI or FGTI)");
}

const Bus* GridModel::find_bus(const std::string& id) const {
    for (const auto& b : buses)
        if (b.id == id) return &b;
    return nullptr;
}

const TransmissionLine* GridModel::find_line(const std::string& id) const {
    for (const auto& l : lines)
        if (l.id == id) return &l;
    return nullptr;
}

int GridModel::bus_index(const std::string& id) const {
    for (std::size_t i = 0; i < buses.size(); ++i)
        if (buses[i].id == id) return static_cast<int>(i);
    return -1;
}

namespace {

bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (char c : id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '.' || c == '-';
        if (!ok) return false;
    }
    return true;
}

void check_id(std::vector<std::string>& issues, std::unordered_set<std::string>& seen,
              const std::string& id, const std::string& what) {
    if (!valid_id(id)) {
        issues.push_back(what + " '" + id + "': ids must match [A-Za-z0-9_.-]+");
        return;
    }
    if (!seen.insert(id).second) issues.push_back("duplicate " + what + " id '" + id + "'");
}

}  // namespace

std::vector<std::string> GridModel::validate() const {
    std::vector<std::string> issues;
    const auto& h = horizon;

    if (h.num_epochs < 1) issues.push_back("horizon: num_epochs must be >= 1");
    if (h.years_per_epoch < 1) issues.push_back("horizon: years_per_epoch must be >= 1");
    if (h.quarters_per_year != 4) issues.push_back("horizon: quarters_per_year is fixed at 4");
    if (h.weekdays_per_quarter < 0 || h.weekend_days_per_quarter < 0 ||
        h.weekdays_per_quarter + h.weekend_days_per_quarter > 92)
        issues.push_back("horizon: weekday/weekend day counts must be >= 0 and sum to <= 92");
    if (h.weekdays_per_quarter == 0)
        issues.push_back("horizon: weekdays_per_quarter must be positive");
    if (h.intervals_per_day < 1 || h.interval_hours <= 0.0 ||
        std::abs(h.interval_hours * h.intervals_per_day - 24.0) > 1e-9)
        issues.push_back("horizon: interval_hours * intervals_per_day must equal 24");

    if (!(base_mva > 0.0)) issues.push_back("base_mva must be positive");
    if (maintenance_ratio < 0.0 || maintenance_ratio >= 1.0)
        issues.push_back("maintenance_ratio must lie in [0,1)");
    if (!load_growth.empty() && static_cast<int>(load_growth.size()) != h.num_epochs)
        issues.push_back("load_growth must have one factor per epoch");
    for (double g : load_growth)
        if (!(g > 0.0) || !std::isfinite(g)) issues.push_back("load_growth factors must be positive");

    std::unordered_set<std::string> bus_ids;
    for (const auto& b : buses) {
        check_id(issues, bus_ids, b.id, "bus");
        if (!std::isfinite(b.latitude) || !std::isfinite(b.longitude))
            issues.push_back("bus '" + b.id + "': non-finite coordinates");
    }
    if (buses.empty()) issues.push_back("grid has no buses");

    std::unordered_set<std::string> line_ids;
    for (const auto& l : lines) {
        check_id(issues, line_ids, l.id, "line");
        if (!bus_ids.count(l.from_bus))
            issues.push_back("line '" + l.id + "': unknown from_bus '" + l.from_bus + "'");
        if (!bus_ids.count(l.to_bus))
            issues.push_back("line '" + l.id + "': unknown to_bus '" + l.to_bus + "'");
        if (l.from_bus == l.to_bus) issues.push_back("line '" + l.id + "': self loop");
        if (!(l.reactance > 0.0)) issues.push_back("line '" + l.id + "': nonpositive reactance");
        if (!(l.static_rating_mva > 0.0))
            issues.push_back("line '" + l.id + "': nonpositive rating");
        if (l.candidate && !(l.construction_cost > 0.0))
            issues.push_back("candidate line '" + l.id + "': construction cost must be positive");
        if (l.big_m && !(*l.big_m > 0.0))
            issues.push_back("line '" + l.id + "': big_m must be positive");
        if (l.dlr.base_rating_mva != l.static_rating_mva)
            issues.push_back("line '" + l.id + "': DLR base rating must equal the static rating");
        if (!(l.dlr.clip_lo >= 0.0 && l.dlr.clip_lo <= 1.0 && l.dlr.clip_hi >= 1.0))
            issues.push_back("line '" + l.id + "': DLR clip range must satisfy 0 <= lo <= 1 <= hi");
        if (l.dlr.temp_coeff < 0.0 || l.dlr.wind_coeff < 0.0 || l.dlr.solar_coeff < 0.0)
            issues.push_back("line '" + l.id + "': DLR coefficients must be >= 0");
    }

    std::unordered_set<std::string> asset_ids;
    for (const auto& g : generators) {
        check_id(issues, asset_ids, g.id, "generator");
        if (!bus_ids.count(g.bus)) issues.push_back("generator '" + g.id + "': unknown bus '" + g.bus + "'");
        if (!(g.p_min_mw >= 0.0 && g.p_min_mw <= g.p_max_mw))
            issues.push_back("generator '" + g.id + "': need 0 <= p_min <= p_max");
        if (g.marginal_cost < 0.0 || g.online_cost < 0.0 || g.startup_cost < 0.0)
            issues.push_back("generator '" + g.id + "': costs must be >= 0");
        if (g.ramp_mw < 0.0 || g.reserve_ramp_mw < 0.0)
            issues.push_back("generator '" + g.id + "': ramp limits must be >= 0");
        if (g.commission_epoch < 0 || g.commission_epoch > h.num_epochs)
            issues.push_back("generator '" + g.id + "': commission_epoch outside horizon");
    }
    for (const auto& r : renewables) {
        check_id(issues, asset_ids, r.id, "renewable");
        if (!bus_ids.count(r.bus)) issues.push_back("renewable '" + r.id + "': unknown bus '" + r.bus + "'");
        if (!(r.capacity_mw > 0.0)) issues.push_back("renewable '" + r.id + "': capacity must be positive");
        if (r.p_min_mw < 0.0 || r.p_min_mw > r.capacity_mw)
            issues.push_back("renewable '" + r.id + "': need 0 <= p_min <= capacity");
        if (!(r.roughness_m > 0.0 && r.roughness_m <= 2.0))
            issues.push_back("renewable '" + r.id + "': roughness z_0 must lie in (0, 2]");
        if (r.kind == RenewableKind::Wind &&
        !(0.0 < r.v_cutin && r.v_cutin < r.v_rated && r.v_rated < r.v_cutout))
            issues.push_back("renewable '" + r.id + "': need 0 < v_cutin < v_rated < v_cutout");
        if (r.kind == RenewableKind::Wind && !(r.hub_height_m > r.roughness_m))
            issues.push_back("renewable '" + r.id + "': hub height must exceed roughness length");
        if (r.kind == RenewableKind::Solar && !(r.g_ref_wm2 > 0.0))
            issues.push_back("renewable '" + r.id + "': g_ref must be positive");
        if (r.commission_epoch < 0 || r.commission_epoch > h.num_epochs)
            issues.push_back("renewable '" + r.id + "': commission_epoch outside horizon");
    }

    // Connectivity over existing lines only; candidates may connect islands.
    if (!buses.empty()) {
        std::unordered_map<std::string, int> comp;
        int n = static_cast<int>(buses.size());
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        for (std::size_t i = 0; i < buses.size(); ++i) comp[buses[i].id] = static_cast<int>(i);
        for (const auto& l : lines) {
            if (l.candidate) continue;
            auto itf = comp.find(l.from_bus);
            auto itt = comp.find(l.to_bus);
            if (itf == comp.end() || itt == comp.end()) continue;
            parent[find(itf->second)] = find(itt->second);
        }
        int root = find(0);
        for (int i = 1; i < n; ++i) {
            if (find(i) != root) {
                issues.push_back("bus '" + buses[i].id +
                                 "' is not connected to the grid by existing lines");
            }
        }
    }
    return issues;
}

void GridModel::validate_or_throw() const {
    auto issues = validate();
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

// --- JSON ------------------------------------------------------------------

namespace {

double get_num(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) throw ParseError(ctx + ": missing key '" + key + "'");
    if (!j[key].is_number()) throw ParseError(ctx + ": key '" + key + "' must be a number");
    return j[key].get<double>();
}

double get_num_or(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j[key].get<double>() : fallback;
}

std::string get_str(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) throw ParseError(ctx + ": missing key '" + key + "'");
    if (!j[key].is_string()) throw ParseError(ctx + ": key '" + key + "' must be a string");
    return j[key].get<std::string>();
}

int parse_commission(const json& j, const std::string& ctx) {
    if (!j.contains("commission_epoch")) return kExisting;
    const auto& v = j["commission_epoch"];
    if (v.is_string()) {
        if (v.get<std::string>() == "existing") return kExisting;
        throw ParseError(ctx + ": commission_epoch must be an epoch index or \"existing\"");
    }
    return v.get<int>();
}

DlrParams parse_dlr(const json& j, const DlrParams& defaults) {
    DlrParams d = defaults;
    d.temp_coeff = get_num_or(j, "temp_coeff", d.temp_coeff);
    d.temp_ref_c = get_num_or(j, "temp_ref_c", d.temp_ref_c);
    d.wind_coeff = get_num_or(j, "wind_coeff", d.wind_coeff);
    d.wind_ref_mps = get_num_or(j, "wind_ref_mps", d.wind_ref_mps);
    d.wind_cap_mps = get_num_or(j, "wind_cap_mps", d.wind_cap_mps);
    d.solar_coeff = get_num_or(j, "solar_coeff", d.solar_coeff);
    d.solar_ref_wm2 = get_num_or(j, "solar_ref_wm2", d.solar_ref_wm2);
    d.clip_lo = get_num_or(j, "clip_lo", d.clip_lo);
    d.clip_hi = get_num_or(j, "clip_hi", d.clip_hi);
    return d;
}

json dlr_to_json(const DlrParams& d) {
    return json{{"temp_coeff", d.temp_coeff},       {"temp_ref_c", d.temp_ref_c},
                {"wind_coeff", d.wind_coeff},       {"wind_ref_mps", d.wind_ref_mps},
                {"wind_cap_mps", d.wind_cap_mps},   {"solar_coeff", d.solar_coeff},
                {"solar_ref_wm2", d.solar_ref_wm2}, {"clip_lo", d.clip_lo},
                {"clip_hi", d.clip_hi}};
}

}  // namespace

GridModel parse_grid(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    GridModel g;
    try {
        g.name = j.value("name", "grid");
        g.base_mva = get_num(j, "base_mva", origin);

        const auto& h = j.at("horizon");
        g.horizon.num_epochs = static_cast<int>(get_num(h, "num_epochs", origin + " horizon"));
        g.horizon.years_per_epoch =
            static_cast<int>(get_num(h, "years_per_epoch", origin + " horizon"));
        g.horizon.weekdays_per_quarter =
            static_cast<int>(get_num(h, "weekdays_per_quarter", origin + " horizon"));
        g.horizon.weekend_days_per_quarter =
            static_cast<int>(get_num(h, "weekend_days_per_quarter", origin + " horizon"));
        g.horizon.intervals_per_day =
            static_cast<int>(get_num(h, "intervals_per_day", origin + " horizon"));
        g.horizon.interval_hours = get_num(h, "interval_hours", origin + " horizon");
        g.maintenance_ratio = get_num(h, "maintenance_ratio", origin + " horizon");

        if (j.contains("load_growth")) {
            for (const auto& v : j["load_growth"]) g.load_growth.push_back(v.get<double>());
        }

        DlrParams dlr_defaults;
        if (j.contains("dlr_defaults")) dlr_defaults = parse_dlr(j["dlr_defaults"], dlr_defaults);

        for (const auto& bj : j.value("buses", json::array())) {
            Bus b;
            b.id = get_str(bj, "id", origin + " bus");
            b.latitude = get_num_or(bj, "latitude", 0.0);
            b.longitude = get_num_or(bj, "longitude", 0.0);
            b.load_profile_ref = bj.value("load_profile_ref", b.id);
            g.buses.push_back(std::move(b));
        }
        for (const auto& lj : j.value("lines", json::array())) {
            TransmissionLine l;
            l.id = get_str(lj, "id", origin + " line");
            l.from_bus = get_str(lj, "from_bus", origin + " line " + l.id);
            l.to_bus = get_str(lj, "to_bus", origin + " line " + l.id);
            l.reactance = get_num(lj, "reactance", origin + " line " + l.id);
            l.static_rating_mva = get_num(lj, "static_rating_mva", origin + " line " + l.id);
            l.candidate = lj.value("candidate", false);
            if (lj.contains("construction_cost_musd"))
                l.construction_cost = lj["construction_cost_musd"].get<double>() * 1e6;
            if (lj.contains("big_m")) l.big_m = lj["big_m"].get<double>();
            l.dlr = lj.contains("dlr") ? parse_dlr(lj["dlr"], dlr_defaults) : dlr_defaults;
            l.dlr.base_rating_mva = l.static_rating_mva;
            g.lines.push_back(std::move(l));
        }
        for (const auto& gj : j.value("generators", json::array())) {
            ThermalGenerator t;
            t.id = get_str(gj, "id", origin + " generator");
            t.bus = get_str(gj, "bus", origin + " generator " + t.id);
            t.p_min_mw = get_num_or(gj, "p_min_mw", 0.0);
            t.p_max_mw = get_num(gj, "p_max_mw", origin + " generator " + t.id);
            t.marginal_cost = get_num(gj, "marginal_cost_per_mwh", origin + " generator " + t.id);
            t.online_cost = get_num_or(gj, "online_cost", 0.0);
            t.startup_cost = get_num_or(gj, "startup_cost", 0.0);
            t.ramp_mw = get_num_or(gj, "ramp_mw_per_interval", t.p_max_mw);
            t.reserve_ramp_mw = get_num_or(gj, "reserve_ramp_mw", 0.0);
            t.commission_epoch = parse_commission(gj, origin + " generator " + t.id);
            g.generators.push_back(std::move(t));
        }
        for (const auto& rj : j.value("renewables", json::array())) {
            RenewablePlant r;
            r.id = get_str(rj, "id", origin + " renewable");
            r.bus = get_str(rj, "bus", origin + " renewable " + r.id);
            r.kind = renewable_kind_from_string(get_str(rj, "kind", origin + " renewable " + r.id));
            r.capacity_mw = get_num(rj, "capacity_mw", origin + " renewable " + r.id);
            r.p_min_mw = get_num_or(rj, "p_min_mw", 0.0);
            r.hub_height_m = get_num_or(rj, "hub_height_m", r.hub_height_m);
            r.roughness_m = get_num_or(rj, "roughness_m", r.roughness_m);
            r.v_cutin = get_num_or(rj, "v_cutin", r.v_cutin);
            r.v_rated = get_num_or(rj, "v_rated", r.v_rated);
            r.v_cutout = get_num_or(rj, "v_cutout", r.v_cutout);
            r.f_shortwave = get_num_or(rj, "f_shortwave", r.f_shortwave);
            r.f_longwave = get_num_or(rj, "f_longwave", r.f_longwave);
            r.g_ref_wm2 = get_num_or(rj, "g_ref_wm2", r.g_ref_wm2);
            r.commission_epoch = parse_commission(rj, origin + " renewable " + r.id);
            g.renewables.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    g.validate_or_throw();
    return g;
}

GridModel load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open grid file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_grid(ss.str(), path);
}

std::string grid_to_json(const GridModel& g) {
    json j;
    j["name"] = g.name;
    j["base_mva"] = g.base_mva;
    j["horizon"] = json{{"num_epochs", g.horizon.num_epochs},
                        {"years_per_epoch", g.horizon.years_per_epoch},
                        {"weekdays_per_quarter", g.horizon.weekdays_per_quarter},
                        {"weekend_days_per_quarter", g.horizon.weekend_days_per_quarter},
                        {"intervals_per_day", g.horizon.intervals_per_day},
                        {"interval_hours", g.horizon.interval_hours},
                        {"maintenance_ratio", g.maintenance_ratio}};
    if (!g.load_growth.empty()) j["load_growth"] = g.load_growth;
    j["buses"] = json::array();
    for (const auto& b : g.buses) {
        j["buses"].push_back(json{{"id", b.id},
                                  {"latitude", b.latitude},
                                  {"longitude", b.longitude},
                                  {"load_profile_ref", b.load_profile_ref}});
    }
    j["lines"] = json::array();
    for (const auto& l : g.lines) {
        json lj{{"id", l.id},
                {"from_bus", l.from_bus},
                {"to_bus", l.to_bus},
                {"reactance", l.reactance},
                {"static_rating_mva", l.static_rating_mva},
                {"candidate", l.candidate},
                {"dlr", dlr_to_json(l.dlr)}};
        if (l.candidate) lj["construction_cost_musd"] = l.construction_cost / 1e6;
        if (l.big_m) lj["big_m"] = *l.big_m;
        j["lines"].push_back(std::move(lj));
    }
    j["generators"] = json::array();
    for (const auto& t : g.generators) {
        json gj{{"id", t.id},
                {"bus", t.bus},
                {"p_min_mw", t.p_min_mw},
                {"p_max_mw", t.p_max_mw},
                {"marginal_cost_per_mwh", t.marginal_cost},
                {"online_cost", t.online_cost},
                {"startup_cost", t.startup_cost},
                {"ramp_mw_per_interval", t.ramp_mw},
                {"reserve_ramp_mw", t.reserve_ramp_mw}};
        if (t.commission_epoch == kExisting) gj["commission_epoch"] = "existing";
        else gj["commission_epoch"] = t.commission_epoch;
        j["generators"].push_back(std::move(gj));
    }
    j["renewables"] = json::array();
    for (const auto& r : g.renewables) {
        json rj{{"id", r.id},
                {"bus", r.bus},
                {"kind", to_string(r.kind)},
                {"capacity_mw", r.capacity_mw},
                {"p_min_mw", r.p_min_mw},
                {"roughness_m", r.roughness_m},
                {"f_shortwave", r.f_shortwave},
                {"f_longwave", r.f_longwave},
                {"g_ref_wm2", r.g_ref_wm2}};
        rj["hub_height_m"] = r.hub_height_m;
        rj["v_cutin"] = r.v_cutin;
        rj["v_rated"] = r.v_rated;
        rj["v_cutout"] = r.v_cutout;
        if (r.commission_epoch == kExisting) rj["commission_epoch"] = "existing";
        else rj["commission_epoch"] = r.commission_epoch;
        j["renewables"].push_back(std::move(rj));
    }
    return j.dump(2) + "\n";
}

void write_grid(const GridModel& grid, const std::string& path) {
    write_file_atomic(path, grid_to_json(grid));
}

// --- Investment plans ------------------------------------------------------

GenerationPlan parse_generation_plan(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_array()) throw ParseError(origin + ": generation plan must be a JSON array");
    GenerationPlan plan;
    for (const auto& e : j) {
        GenerationInvestment inv;
        inv.asset_id = get_str(e, "asset_id", origin);
        inv.kind = get_str(e, "kind", origin + " " + inv.asset_id);
        if (inv.kind != "thermal" && inv.kind != "wind" && inv.kind != "solar")
            throw ParseError(origin + " " + inv.asset_id + ": kind must be thermal, wind or solar");
        inv.bus = get_str(e, "bus", origin + " " + inv.asset_id);
        inv.capacity_mw = get_num(e, "capacity_mw", origin + " " + inv.asset_id);
        inv.commission_epoch =
            static_cast<int>(get_num(e, "commission_epoch", origin + " " + inv.asset_id));
        inv.p_min_mw = get_num_or(e, "p_min_mw", 0.0);
        inv.marginal_cost = get_num_or(e, "marginal_cost_per_mwh", 0.0);
        inv.online_cost = get_num_or(e, "online_cost", 0.0);
        inv.startup_cost = get_num_or(e, "startup_cost", 0.0);
        inv.ramp_mw = get_num_or(e, "ramp_mw_per_interval", inv.capacity_mw);
        inv.reserve_ramp_mw = get_num_or(e, "reserve_ramp_mw", 0.0);
        auto opt = [&](const char* k) -> std::optional<double> {
            if (e.contains(k)) return e[k].get<double>();
            return std::nullopt;
        };
        inv.hub_height_m = opt("hub_height_m");
        inv.roughness_m = opt("roughness_m");
        inv.v_cutin = opt("v_cutin");
        inv.v_rated = opt("v_rated");
        inv.v_cutout = opt("v_cutout");
        inv.f_shortwave = opt("f_shortwave");
        inv.f_longwave = opt("f_longwave");
        inv.g_ref_wm2 = opt("g_ref_wm2");
        plan.push_back(std::move(inv));
    }
    return plan;
}

GenerationPlan load_generation_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open generation plan '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_generation_plan(ss.str(), path);
}

GridModel merge_generation_plan(const GridModel& grid, const GenerationPlan& plan) {
    GridModel out = grid;
    std::vector<std::string> issues;
    for (const auto& inv : plan) {
        if (!grid.find_bus(inv.bus))
            issues.push_back("plan asset '" + inv.asset_id + "': unknown bus '" + inv.bus + "'");
        if (inv.commission_epoch < 1 || inv.commission_epoch > grid.horizon.num_epochs)
            issues.push_back("plan asset '" + inv.asset_id + "': commission_epoch outside horizon");
        for (const auto& g : grid.generators)
            if (g.id == inv.asset_id) issues.push_back("plan asset id '" + inv.asset_id + "' already in grid");
        for (const auto& r : grid.renewables)
            if (r.id == inv.asset_id) issues.push_back("plan asset id '" + inv.asset_id + "' already in grid");
        if (!issues.empty()) continue;

        if (inv.kind == "thermal") {
            ThermalGenerator t;
            t.id = inv.asset_id;
            t.bus = inv.bus;
            t.p_min_mw = inv.p_min_mw;
            t.p_max_mw = inv.capacity_mw;
            t.marginal_cost = inv.marginal_cost;
            t.online_cost = inv.online_cost;
            t.startup_cost = inv.startup_cost;
            t.ramp_mw = inv.ramp_mw;
            t.reserve_ramp_mw = inv.reserve_ramp_mw;
            t.commission_epoch = inv.commission_epoch;
            out.generators.push_back(std::move(t));
        } else {
            RenewablePlant r;
            r.id = inv.asset_id;
            r.bus = inv.bus;
            r.kind = renewable_kind_from_string(inv.kind);
            r.capacity_mw = inv.capacity_mw;
            r.commission_epoch = inv.commission_epoch;
            if (inv.hub_height_m) r.hub_height_m = *inv.hub_height_m;
            if (inv.roughness_m) r.roughness_m = *inv.roughness_m;
            if (inv.v_cutin) r.v_cutin = *inv.v_cutin;
            if (inv.v_rated) r.v_rated = *inv.v_rated;
            if (inv.v_cutout) r.v_cutout = *inv.v_cutout;
            if (inv.f_shortwave) r.f_shortwave = *inv.f_shortwave;
            if (inv.f_longwave) r.f_longwave = *inv.f_longwave;
            if (inv.g_ref_wm2) r.g_ref_wm2 = *inv.g_ref_wm2;
            out.renewables.push_back(std::move(r));
        }
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
    out.validate_or_throw();
    return out;
}

CaseGrid apply_investments(const GridModel& grid, const GenerationPlan& gen_plan,
                           const std::vector<BuiltLine>& tep_plan) {
    GridModel merged = gen_plan.empty() ? grid : merge_generation_plan(grid, gen_plan);

    std::vector<std::string> issues;
    std::unordered_map<std::string, int> build_epoch;
    for (const auto& b : tep_plan) {
        const TransmissionLine* l = merged.find_line(b.line_id);
        if (!l) {
            issues.push_back("transmission plan: unknown line '" + b.line_id + "'");
            continue;
        }
        if (!l->candidate)
            issues.push_back("transmission plan: line '" + b.line_id + "' is not a candidate");
        if (b.construction_epoch < 1 || b.construction_epoch > merged.horizon.num_epochs)
            issues.push_back("transmission plan: line '" + b.line_id + "' epoch outside horizon");
        if (!build_epoch.emplace(b.line_id, b.construction_epoch).second)
            issues.push_back("transmission plan: line '" + b.line_id + "' built twice");
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));

    CaseGrid out;
    out.kind = !tep_plan.empty() ? InvestmentCase::FGTI
             : !gen_plan.empty() ? InvestmentCase::FGI
                                 : InvestmentCase::FR;
    for (int p = 1; p <= merged.horizon.num_epochs; ++p) {
        EpochView v;
        v.epoch = p;
        v.base_mva = merged.base_mva;
        v.horizon = merged.horizon;
        v.buses = merged.buses;
        for (const auto& l : merged.lines) {
            if (!l.candidate) {
                v.lines.push_back(l);
            } else {
                auto it = build_epoch.find(l.id);
                if (it != build_epoch.end() && it->second <= p) v.lines.push_back(l);
            }
        }
        for (const auto& g : merged.generators)
            if (g.commissioned_by(p)) v.generators.push_back(g);
        for (const auto& r : merged.renewables)
            if (r.commissioned_by(p)) v.renewables.push_back(r);
        out.epochs.push_back(std::move(v));
    }
    return out;
}

}  // namespace gridplan
