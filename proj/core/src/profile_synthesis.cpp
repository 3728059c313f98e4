#include "gridplan/profile_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "gridplan/csv.hpp"
#include "gridplan/errors.hpp"

namespace gridplan {

double extrapolate_wind_speed(double v_ref, double h_ref, double h_hub, double z0) {
    if (!(z0 > 0.0)) throw std::invalid_argument("roughness length must be positive");
    if (!(h_ref > z0) || !(h_hub > z0))
        throw std::invalid_argument("heights must exceed the roughness length");
    if (v_ref < 0.0) throw std::invalid_argument("negative reference wind speed");
    return v_ref * std::log(h_hub / z0) / std::log(h_ref / z0);
}

double wind_power(double v_hub, const WindPowerCurve& c) {
    if (!(0.0 < c.v_cutin && c.v_cutin < c.v_rated && c.v_rated < c.v_cutout))
        throw std::invalid_argument("wind power curve needs 0 < cutin < rated < cutout");
    if (v_hub < c.v_cutin || v_hub > c.v_cutout) return 0.0;
    if (v_hub >= c.v_rated) return c.capacity_mw;
    double num = v_hub * v_hub * v_hub - c.v_cutin * c.v_cutin * c.v_cutin;
    double den = c.v_rated * c.v_rated * c.v_rated - c.v_cutin * c.v_cutin * c.v_cutin;
    return c.capacity_mw * num / den;
}

double solar_power(double shortwave_wm2, double longwave_wm2, const SolarPanel& p) {
    if (shortwave_wm2 < 0.0 || longwave_wm2 < 0.0)
        throw std::invalid_argument("negative radiation");
    if (!(p.g_ref_wm2 > 0.0)) throw std::invalid_argument("g_ref must be positive");
    double effective = p.f_shortwave * shortwave_wm2 + p.f_longwave * longwave_wm2;
    return p.capacity_mw * std::min(1.0, effective / p.g_ref_wm2);
}

WeatherSample line_weather(const WeatherSample& from, const WeatherSample& to,
                           TerminalWeatherPolicy policy) {
    if (from.time != to.time)
        throw std::invalid_argument("terminal samples have different timestamps");
    WeatherSample e;
    e.time = from.time;
    e.location_id = from.location_id + "|" + to.location_id;
    if (policy == TerminalWeatherPolicy::Conservative) {
        e.temperature_c = std::max(from.temperature_c, to.temperature_c);
        e.wind_speed_10m = std::min(from.wind_speed_10m, to.wind_speed_10m);
        e.shortwave_wm2 = std::max(from.shortwave_wm2, to.shortwave_wm2);
        e.longwave_wm2 = std::max(from.longwave_wm2, to.longwave_wm2);
    } else {
        e.temperature_c = 0.5 * (from.temperature_c + to.temperature_c);
        e.wind_speed_10m = 0.5 * (from.wind_speed_10m + to.wind_speed_10m);
        e.shortwave_wm2 = 0.5 * (from.shortwave_wm2 + to.shortwave_wm2);
        e.longwave_wm2 = 0.5 * (from.longwave_wm2 + to.longwave_wm2);
    }
    return e;
}

double dynamic_rating(const WeatherSample& w, const DlrParams& p) {
    double temp_factor = 1.0 + p.temp_coeff * (p.temp_ref_c - w.temperature_c);
    double wind_factor =
        1.0 + p.wind_coeff * (std::min(w.wind_speed_10m, p.wind_cap_mps) - p.wind_ref_mps);
    double solar_factor = 1.0 - p.solar_coeff * w.shortwave_wm2 / p.solar_ref_wm2;
    double rating = p.base_rating_mva * temp_factor * wind_factor * solar_factor;
    return std::clamp(rating, p.clip_lo * p.base_rating_mva, p.clip_hi * p.base_rating_mva);
}

std::string to_string(DayType d) { return d == DayType::Weekday ? "WD" : "WE"; }

// --- RepresentativeProfileSet -------------------------------------------------

int RepresentativeProfileSet::eqidx(int epoch, int quarter, int interval, const char* what) const {
    const auto& h = horizon_;
    if (epoch < 1 || epoch > h.num_epochs || quarter < 1 || quarter > h.quarters_per_year ||
        interval < 0 || interval >= h.intervals_per_day) {
        std::ostringstream os;
        os << what << ": index (epoch " << epoch << ", quarter " << quarter << ", interval "
           << interval << ") outside horizon";
        throw std::out_of_range(os.str());
    }
    return ((epoch - 1) * h.quarters_per_year + (quarter - 1)) * h.intervals_per_day + interval;
}

int RepresentativeProfileSet::eqdidx(int epoch, int quarter, DayType day_type, int interval) const {
    int base = eqidx(epoch, quarter, interval, "load");
    int dt = static_cast<int>(day_type);
    if (dt >= horizon_.day_types())
        throw std::out_of_range("load: day type not modeled by this horizon");
    return base * horizon_.day_types() + dt;
}

std::size_t RepresentativeProfileSet::slab_size() const {
    const auto& h = horizon_;
    return static_cast<std::size_t>(h.num_epochs) * h.quarters_per_year * h.intervals_per_day;
}

double RepresentativeProfileSet::line_rating(const std::string& line, int epoch, int quarter,
                                             int interval) const {
    auto it = line_rating_.find(line);
    if (it == line_rating_.end()) throw std::out_of_range("no rating profile for line '" + line + "'");
    return it->second[eqidx(epoch, quarter, interval, "line_rating")];
}

double RepresentativeProfileSet::renewable_max(const std::string& plant, int epoch, int quarter,
                                               int interval) const {
    auto it = renewable_max_.find(plant);
    if (it == renewable_max_.end())
        throw std::out_of_range("no availability profile for renewable '" + plant + "'");
    return it->second[eqidx(epoch, quarter, interval, "renewable_max")];
}

double RepresentativeProfileSet::load(const std::string& bus, int epoch, int quarter,
                                      DayType day_type, int interval) const {
    auto it = load_.find(bus);
    if (it == load_.end()) throw std::out_of_range("no load profile for bus '" + bus + "'");
    return it->second[eqdidx(epoch, quarter, day_type, interval)];
}

void RepresentativeProfileSet::set_line_rating(const std::string& line, int epoch, int quarter,
                                               int interval, double v) {
    auto& vec = line_rating_[line];
    if (vec.empty()) vec.assign(slab_size(), std::nan(""));
    vec[eqidx(epoch, quarter, interval, "line_rating")] = v;
}

void RepresentativeProfileSet::set_renewable_max(const std::string& plant, int epoch, int quarter,
                                                 int interval, double v) {
    auto& vec = renewable_max_[plant];
    if (vec.empty()) vec.assign(slab_size(), std::nan(""));
    vec[eqidx(epoch, quarter, interval, "renewable_max")] = v;
}

void RepresentativeProfileSet::set_load(const std::string& bus, int epoch, int quarter,
                                        DayType day_type, int interval, double v) {
    auto& vec = load_[bus];
    if (vec.empty()) vec.assign(slab_size() * horizon_.day_types(), std::nan(""));
    vec[eqdidx(epoch, quarter, day_type, interval)] = v;
}

std::vector<std::string> RepresentativeProfileSet::line_ids() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : line_rating_) out.push_back(k);
    return out;
}

std::vector<std::string> RepresentativeProfileSet::renewable_ids() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : renewable_max_) out.push_back(k);
    return out;
}

std::vector<std::string> RepresentativeProfileSet::load_bus_ids() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : load_) out.push_back(k);
    return out;
}

std::vector<std::string> RepresentativeProfileSet::validate(const GridModel* grid) const {
    std::vector<std::string> issues;
    auto scan = [&](const auto& map, const char* what, auto check) {
        for (const auto& [id, vec] : map) {
            for (std::size_t i = 0; i < vec.size(); ++i) {
                if (std::isnan(vec[i])) {
                    issues.push_back(std::string(what) + " '" + id + "': incomplete coverage");
                    break;
                }
                check(id, vec[i]);
            }
        }
    };
    scan(line_rating_, "line rating", [&](const std::string& id, double v) {
        if (!(v > 0.0)) issues.push_back("line rating '" + id + "': nonpositive value");
    });
    scan(renewable_max_, "renewable availability", [&](const std::string& id, double v) {
        if (v < 0.0) issues.push_back("renewable availability '" + id + "': negative value");
        if (grid) {
            for (const auto& r : grid->renewables) {
                if (r.id == id && v > r.capacity_mw + 1e-9)
                    issues.push_back("renewable availability '" + id + "': exceeds capacity");
            }
        }
    });
    scan(load_, "load", [&](const std::string& id, double v) {
        if (v < 0.0) issues.push_back("load '" + id + "': negative value");
    });
    return issues;
}

void RepresentativeProfileSet::validate_or_throw(const GridModel* grid) const {
    auto issues = validate(grid);
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::vector<std::string> RepresentativeProfileSet::coverage_gaps() const {
    std::vector<std::string> gaps;
    const auto& h = horizon_;
    auto scan = [&](const auto& map, const char* what, int day_types) {
        for (const auto& [id, vec] : map) {
            for (int e = 1; e <= h.num_epochs; ++e) {
                for (int q = 1; q <= h.quarters_per_year; ++q) {
                    bool missing = false;
                    for (int t = 0; t < h.intervals_per_day && !missing; ++t) {
                        for (int dt = 0; dt < day_types; ++dt) {
                            std::size_t base =
                                static_cast<std::size_t>(((e - 1) * h.quarters_per_year + (q - 1)) *
                                                         h.intervals_per_day + t);
                            std::size_t i = day_types > 1 ? base * day_types + dt : base;
                            if (std::isnan(vec[i])) missing = true;
                        }
                    }
                    if (missing)
                        gaps.push_back(std::string(what) + " '" + id + "': missing slab (epoch " +
                                       std::to_string(e) + ", quarter " + std::to_string(q) + ")");
                }
            }
        }
    };
    scan(line_rating_, "line rating", 1);
    scan(renewable_max_, "renewable availability", 1);
    scan(load_, "load", h.day_types());
    return gaps;
}

void RepresentativeProfileSet::check_covers(const GridModel& grid) const {
    std::vector<std::string> gaps;
    for (const auto& l : grid.lines)
        if (!has_line(l.id)) gaps.push_back("no rating profile for line '" + l.id + "'");
    for (const auto& r : grid.renewables)
        if (!has_renewable(r.id)) gaps.push_back("no availability profile for renewable '" + r.id + "'");
    for (const auto& b : grid.buses)
        if (!has_bus_load(b.id)) gaps.push_back("no load profile for bus '" + b.id + "'");
    if (!gaps.empty()) throw CoverageError(std::move(gaps));
}

// --- build_representative ------------------------------------------------------

namespace {

struct DayKey {
    int epoch = 0;    // 1-based; 0 = outside horizon
    int quarter = 0;  // 1-based
    bool weekend = false;
};

DayKey classify_day(std::int64_t serial_day, int anchor_year, const PlanningHorizon& h) {
    int y, m, d;
    civil_from_days(serial_day, y, m, d);
    DayKey k;
    int year_index = y - anchor_year;
    if (year_index < 0) return k;
    int epoch = year_index / h.years_per_epoch + 1;
    if (epoch > h.num_epochs) return k;
    k.epoch = epoch;
    k.quarter = (m - 1) / 3 + 1;
    k.weekend = is_weekend(serial_day);
    return k;
}

// Groups a location's samples into complete days: serial day -> index of the
// first sample of that day.  Incomplete days are reported as gaps.
std::map<std::int64_t, std::size_t> complete_days(const std::vector<WeatherSample>& samples,
                                                  int intervals_per_day, double step_hours,
                                                  const std::string& name,
                                                  std::vector<std::string>& gaps) {
    std::map<std::int64_t, std::size_t> out;
    const std::int64_t step = static_cast<std::int64_t>(std::llround(step_hours * 3600.0));
    std::size_t i = 0;
    while (i < samples.size()) {
        std::int64_t day = samples[i].time / 86400 - (samples[i].time % 86400 < 0 ? 1 : 0);
        std::size_t j = i;
        int count = 0;
        bool aligned = true;
        while (j < samples.size() && samples[j].time / 86400 == day) {
            if (samples[j].time != day * 86400 + count * step) aligned = false;
            ++count;
            ++j;
        }
        if (count == intervals_per_day && aligned) {
            out[day] = i;
        } else {
            int y, m, d;
            civil_from_days(day, y, m, d);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
            gaps.push_back("'" + name + "': incomplete day " + buf + " (" +
                           std::to_string(count) + "/" + std::to_string(intervals_per_day) +
                           " samples)");
        }
        i = j;
    }
    return out;
}

std::map<std::int64_t, std::size_t> complete_load_days(const std::vector<LoadSample>& samples,
                                                       int intervals_per_day, double step_hours,
                                                       const std::string& name,
                                                       std::vector<std::string>& gaps) {
    // Same day-grouping rule as weather; kept separate for the value type.
    std::map<std::int64_t, std::size_t> out;
    const std::int64_t step = static_cast<std::int64_t>(std::llround(step_hours * 3600.0));
    std::size_t i = 0;
    while (i < samples.size()) {
        std::int64_t day = samples[i].time / 86400 - (samples[i].time % 86400 < 0 ? 1 : 0);
        std::size_t j = i;
        int count = 0;
        bool aligned = true;
        while (j < samples.size() && samples[j].time / 86400 == day) {
            if (samples[j].time != day * 86400 + count * step) aligned = false;
            ++count;
            ++j;
        }
        if (count == intervals_per_day && aligned) {
            out[day] = i;
        } else {
            int y, m, d;
            civil_from_days(day, y, m, d);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
            gaps.push_back("load '" + name + "': incomplete day " + buf);
        }
        i = j;
    }
    return out;
}

struct MeanAccumulator {
    std::vector<double> sum;
    std::vector<long> count;
    void init(std::size_t n) {
        sum.assign(n, 0.0);
        count.assign(n, 0);
    }
    void add(std::size_t i, double v) {
        sum[i] += v;
        count[i] += 1;
    }
};

}  // namespace

RepresentativeProfileSet build_representative(const WeatherSeries& weather,
                                              const LoadSeries& loads, const GridModel& grid,
                                              const ProfileOptions& options) {
    const PlanningHorizon& h = grid.horizon;
    if (std::abs(weather.step_hours() - h.interval_hours) > 1e-9)
        throw CoverageError({"weather step (" + format_double(weather.step_hours()) +
                             "h) does not match the horizon interval (" +
                             format_double(h.interval_hours) + "h)"});
    if (std::abs(loads.step_hours() - h.interval_hours) > 1e-9)
        throw CoverageError({"load step (" + format_double(loads.step_hours()) +
                             "h) does not match the horizon interval (" +
                             format_double(h.interval_hours) + "h)"});

    const int anchor = weather.anchor_year();
    const int T = h.intervals_per_day;
    const int n_day_types = h.day_types();
    std::vector<std::string> gaps;

    // Complete-day maps per weather location actually referenced by the grid.
    std::map<std::string, std::map<std::int64_t, std::size_t>> wdays;
    auto want_location = [&](const std::string& loc) {
        if (wdays.count(loc)) return;
        if (!weather.has_location(loc)) {
            gaps.push_back("no weather samples for location '" + loc + "'");
            wdays[loc] = {};
            return;
        }
        wdays[loc] = complete_days(weather.at(loc), T, weather.step_hours(), loc, gaps);
    };
    for (const auto& l : grid.lines) {
        want_location(l.from_bus);
        want_location(l.to_bus);
    }
    for (const auto& r : grid.renewables) want_location(r.bus);

    RepresentativeProfileSet set(h);
    const std::size_t slab = static_cast<std::size_t>(h.num_epochs) * h.quarters_per_year * T;
    auto flat = [&](int epoch, int quarter, int t) {
        return static_cast<std::size_t>(((epoch - 1) * h.quarters_per_year + (quarter - 1)) * T + t);
    };

    // Line ratings: days complete at both terminals.
    for (const auto& line : grid.lines) {
        MeanAccumulator acc;
        acc.init(slab);
        const auto& fd = wdays[line.from_bus];
        const auto& td = wdays[line.to_bus];
        if (weather.has_location(line.from_bus) && weather.has_location(line.to_bus)) {
            const auto& fs = weather.at(line.from_bus);
            const auto& ts = weather.at(line.to_bus);
            for (const auto& [day, fbase] : fd) {
                auto it = td.find(day);
                if (it == td.end()) continue;
                DayKey k = classify_day(day, anchor, h);
                if (k.epoch == 0) continue;
                for (int t = 0; t < T; ++t) {
                    WeatherSample eff =
                        line_weather(fs[fbase + t], ts[it->second + t], options.policy);
                    acc.add(flat(k.epoch, k.quarter, t), dynamic_rating(eff, line.dlr));
                }
            }
        }
        for (int e = 1; e <= h.num_epochs; ++e) {
            for (int q = 1; q <= h.quarters_per_year; ++q) {
                if (acc.count[flat(e, q, 0)] == 0) {
                    gaps.push_back("line '" + line.id + "': no complete days in epoch " +
                                   std::to_string(e) + " quarter " + std::to_string(q));
                    continue;
                }
                for (int t = 0; t < T; ++t) {
                    std::size_t i = flat(e, q, t);
                    set.set_line_rating(line.id, e, q, t, acc.sum[i] / acc.count[i]);
                }
            }
        }
    }

    // Renewable availability from the plant's bus location.
    for (const auto& plant : grid.renewables) {
        MeanAccumulator acc;
        acc.init(slab);
        if (weather.has_location(plant.bus)) {
            const auto& samples = weather.at(plant.bus);
            for (const auto& [day, base] : wdays[plant.bus]) {
                DayKey k = classify_day(day, anchor, h);
                if (k.epoch == 0) continue;
                for (int t = 0; t < T; ++t) {
                    const WeatherSample& s = samples[base + t];
                    double mw = 0.0;
                    if (plant.kind == RenewableKind::Wind) {
                        double v_hub = extrapolate_wind_speed(s.wind_speed_10m, 10.0,
                                                              plant.hub_height_m, plant.roughness_m);
                        mw = wind_power(v_hub, WindPowerCurve{plant.v_cutin, plant.v_rated,
                                                              plant.v_cutout, plant.capacity_mw});
                    } else {
                        mw = solar_power(s.shortwave_wm2, s.longwave_wm2,
                                         SolarPanel{plant.capacity_mw, plant.f_shortwave,
                                                    plant.f_longwave, plant.g_ref_wm2});
                    }
                    acc.add(flat(k.epoch, k.quarter, t), mw);
                }
            }
        }
        for (int e = 1; e <= h.num_epochs; ++e) {
            for (int q = 1; q <= h.quarters_per_year; ++q) {
                if (acc.count[flat(e, q, 0)] == 0) {
                    gaps.push_back("renewable '" + plant.id + "': no complete days in epoch " +
                                   std::to_string(e) + " quarter " + std::to_string(q));
                    continue;
                }
                for (int t = 0; t < T; ++t) {
                    std::size_t i = flat(e, q, t);
                    set.set_renewable_max(plant.id, e, q, t, acc.sum[i] / acc.count[i]);
                }
            }
        }
    }

    // Bus loads, split by day type when weekends are modeled.
    for (const auto& bus : grid.buses) {
        std::vector<MeanAccumulator> acc(n_day_types);
        for (auto& a : acc) a.init(slab);
        if (!loads.has_ref(bus.load_profile_ref)) {
            gaps.push_back("no load samples for reference '" + bus.load_profile_ref + "' (bus '" +
                           bus.id + "')");
        } else {
            const auto& samples = loads.at(bus.load_profile_ref);
            std::vector<std::string> local_gaps;
            auto days = complete_load_days(samples, T, loads.step_hours(), bus.load_profile_ref,
                                           local_gaps);
            gaps.insert(gaps.end(), local_gaps.begin(), local_gaps.end());
            for (const auto& [day, base] : days) {
                DayKey k = classify_day(day, anchor, h);
                if (k.epoch == 0) continue;
                int dt = (n_day_types == 2 && k.weekend) ? 1 : 0;
                for (int t = 0; t < T; ++t)
                    acc[dt].add(flat(k.epoch, k.quarter, t), samples[base + t].load_mw);
            }
        }
        for (int e = 1; e <= h.num_epochs; ++e) {
            double growth = grid.load_growth.empty() ? 1.0 : grid.load_growth[e - 1];
            for (int q = 1; q <= h.quarters_per_year; ++q) {
                for (int dt = 0; dt < n_day_types; ++dt) {
                    if (acc[dt].count[flat(e, q, 0)] == 0) {
                        gaps.push_back("bus '" + bus.id + "': no complete " +
                                       to_string(static_cast<DayType>(dt)) + " days in epoch " +
                                       std::to_string(e) + " quarter " + std::to_string(q));
                        continue;
                    }
                    for (int t = 0; t < T; ++t) {
                        std::size_t i = flat(e, q, t);
                        set.set_load(bus.id, e, q, static_cast<DayType>(dt), t,
                                     growth * acc[dt].sum[i] / acc[dt].count[i]);
                    }
                }
            }
        }
    }

    if (!gaps.empty()) throw CoverageError(std::move(gaps));
    set.validate_or_throw(&grid);
    return set;
}

// --- CSV round-trip -------------------------------------------------------------

namespace {

void export_one(const std::string& path, const std::vector<std::string>& ids,
                const PlanningHorizon& h, bool with_day_types,
                const std::function<double(const std::string&, int, int, DayType, int)>& get) {
    std::ostringstream os;
    os << "epoch,quarter,day_type,interval,entity_id,value\n";
    for (const auto& id : ids) {
        for (int e = 1; e <= h.num_epochs; ++e) {
            for (int q = 1; q <= h.quarters_per_year; ++q) {
                int ndt = with_day_types ? h.day_types() : 1;
                for (int dt = 0; dt < ndt; ++dt) {
                    std::string dts = with_day_types ? to_string(static_cast<DayType>(dt)) : "ALL";
                    for (int t = 0; t < h.intervals_per_day; ++t) {
                        os << e << ',' << q << ',' << dts << ',' << t << ',' << id << ','
                           << format_double(get(id, e, q, static_cast<DayType>(dt), t)) << '\n';
                    }
                }
            }
        }
    }
    write_file_atomic(path, os.str());
}

}  // namespace

void export_profiles(const RepresentativeProfileSet& set, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const auto& h = set.horizon();
    export_one(dir + "/line_ratings.csv", set.line_ids(), h, false,
               [&](const std::string& id, int e, int q, DayType, int t) {
                   return set.line_rating(id, e, q, t);
               });
    export_one(dir + "/renewable_availability.csv", set.renewable_ids(), h, false,
               [&](const std::string& id, int e, int q, DayType, int t) {
                   return set.renewable_max(id, e, q, t);
               });
    export_one(dir + "/loads.csv", set.load_bus_ids(), h, true,
               [&](const std::string& id, int e, int q, DayType dt, int t) {
                   return set.load(id, e, q, dt, t);
               });
}

RepresentativeProfileSet import_profiles(const std::string& dir, const PlanningHorizon& horizon) {
    RepresentativeProfileSet set(horizon);
    const std::vector<std::string> header = {"epoch", "quarter", "day_type",
                                             "interval", "entity_id", "value"};

    auto read_one = [&](const std::string& path, bool with_day_types, bool require_positive,
                        auto setter) {
        CsvReader reader(path, header);
        std::vector<std::string> f;
        while (reader.next(f)) {
            std::string ctx = path + ":" + std::to_string(reader.row_number());
            int e = static_cast<int>(parse_long(f[0], ctx));
            int q = static_cast<int>(parse_long(f[1], ctx));
            int t = static_cast<int>(parse_long(f[3], ctx));
            double v = parse_double(f[5], ctx);
            if (require_positive && !(v > 0.0))
                throw ParseError(ctx + ": value must be positive, got " + f[5]);
            if (!require_positive && v < 0.0)
                throw ParseError(ctx + ": value must be non-negative, got " + f[5]);
            DayType dt = DayType::Weekday;
            if (with_day_types) {
                if (f[2] == "WD") dt = DayType::Weekday;
                else if (f[2] == "WE") dt = DayType::Weekend;
                else throw ParseError(ctx + ": day_type must be WD or WE");
            } else if (f[2] != "ALL") {
                throw ParseError(ctx + ": day_type must be ALL for this quantity");
            }
            try {
                setter(f[4], e, q, dt, t, v);
            } catch (const std::out_of_range& ex) {
                throw ParseError(ctx + ": " + ex.what());
            }
        }
    };

    read_one(dir + "/line_ratings.csv", false, true,
             [&](const std::string& id, int e, int q, DayType, int t, double v) {
                 set.set_line_rating(id, e, q, t, v);
             });
    read_one(dir + "/renewable_availability.csv", false, false,
             [&](const std::string& id, int e, int q, DayType, int t, double v) {
                 set.set_renewable_max(id, e, q, t, v);
             });
    read_one(dir + "/loads.csv", true, false,
             [&](const std::string& id, int e, int q, DayType dt, int t, double v) {
                 set.set_load(id, e, q, dt, t, v);
             });
    auto gaps = set.coverage_gaps();
    if (!gaps.empty()) throw CoverageError(std::move(gaps));
    set.validate_or_throw();
    return set;
}

}  // namespace gridplan
