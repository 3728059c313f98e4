#include "gridplan/weather.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gridplan/csv.hpp"
#include "gridplan/errors.hpp"

namespace gridplan {

namespace {

void check_series(const std::string& location, std::vector<std::int64_t> times,
                  double step_hours) {
    const std::int64_t step = static_cast<std::int64_t>(std::llround(step_hours * 3600.0));
    std::vector<std::string> gaps;
    std::int64_t prev = -1;
    for (std::int64_t t : times) {
        if (t == prev)
            gaps.push_back("location '" + location + "': duplicate sample at " +
                           format_timestamp(from_unix_seconds(t)));
        if (t % step != 0)
            gaps.push_back("location '" + location + "': timestamp " +
                           format_timestamp(from_unix_seconds(t)) +
                           " is off the " + format_double(step_hours) + "h step grid");
        prev = t;
    }
    if (!gaps.empty()) throw CoverageError(std::move(gaps));
}

}  // namespace

void WeatherSeries::add(const WeatherSample& s) {
    by_location_[s.location_id].push_back(s);
    finalized_ = false;
}

void WeatherSeries::finalize() {
    for (auto& [loc, samples] : by_location_) {
        std::sort(samples.begin(), samples.end(),
                  [](const WeatherSample& a, const WeatherSample& b) { return a.time < b.time; });
        std::vector<std::int64_t> times;
        times.reserve(samples.size());
        for (const auto& s : samples) times.push_back(s.time);
        check_series(loc, std::move(times), step_hours_);
    }
    finalized_ = true;
}

const std::vector<WeatherSample>& WeatherSeries::at(const std::string& location) const {
    auto it = by_location_.find(location);
    if (it == by_location_.end())
        throw CoverageError({"no weather samples for location '" + location + "'"});
    return it->second;
}

bool WeatherSeries::has_location(const std::string& location) const {
    return by_location_.count(location) > 0;
}

std::vector<std::string> WeatherSeries::locations() const {
    std::vector<std::string> out;
    for (const auto& [loc, _] : by_location_) out.push_back(loc);
    return out;
}

int WeatherSeries::anchor_year() const {
    std::int64_t first = INT64_MAX;
    for (const auto& [loc, samples] : by_location_) {
        if (!samples.empty()) first = std::min(first, samples.front().time);
    }
    if (first == INT64_MAX) throw CoverageError({"weather series is empty"});
    return from_unix_seconds(first).year;
}

void LoadSeries::add(const LoadSample& s) {
    by_ref_[s.bus_ref].push_back(s);
    finalized_ = false;
}

void LoadSeries::finalize() {
    for (auto& [ref, samples] : by_ref_) {
        std::sort(samples.begin(), samples.end(),
                  [](const LoadSample& a, const LoadSample& b) { return a.time < b.time; });
        std::vector<std::int64_t> times;
        times.reserve(samples.size());
        for (const auto& s : samples) times.push_back(s.time);
        check_series(ref, std::move(times), step_hours_);
    }
    finalized_ = true;
}

const std::vector<LoadSample>& LoadSeries::at(const std::string& bus_ref) const {
    auto it = by_ref_.find(bus_ref);
    if (it == by_ref_.end())
        throw CoverageError({"no load samples for bus reference '" + bus_ref + "'"});
    return it->second;
}

bool LoadSeries::has_ref(const std::string& bus_ref) const { return by_ref_.count(bus_ref) > 0; }

std::vector<std::string> LoadSeries::refs() const {
    std::vector<std::string> out;
    for (const auto& [ref, _] : by_ref_) out.push_back(ref);
    return out;
}

WeatherSeries load_weather_csv(const std::string& path, double step_hours) {
    CsvReader reader(path, {"timestamp", "location_id", "temperature_c", "wind_speed_10m_mps",
                            "shortwave_wm2", "longwave_wm2"});
    WeatherSeries series(step_hours);
    std::vector<std::string> fields;
    std::vector<std::string> issues;
    while (reader.next(fields)) {
        std::string ctx = path + ":" + std::to_string(reader.row_number());
        WeatherSample s;
        s.time = to_unix_seconds(parse_timestamp(fields[0]));
        s.location_id = fields[1];
        s.temperature_c = parse_double(fields[2], ctx);
        s.wind_speed_10m = parse_double(fields[3], ctx);
        s.shortwave_wm2 = parse_double(fields[4], ctx);
        s.longwave_wm2 = parse_double(fields[5], ctx);
        if (s.wind_speed_10m < 0.0) issues.push_back(ctx + ": negative wind speed");
        if (s.shortwave_wm2 < 0.0 || s.longwave_wm2 < 0.0)
            issues.push_back(ctx + ": negative radiation");
        if (s.temperature_c < -60.0 || s.temperature_c > 60.0)
            issues.push_back(ctx + ": temperature outside [-60, 60] degC");
        series.add(s);
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
    series.finalize();
    return series;
}

void write_weather_csv(const WeatherSeries& series, const std::string& path) {
    std::ostringstream os;
    os << "timestamp,location_id,temperature_c,wind_speed_10m_mps,shortwave_wm2,longwave_wm2\n";
    for (const auto& loc : series.locations()) {
        for (const auto& s : series.at(loc)) {
            os << format_timestamp(from_unix_seconds(s.time)) << ',' << loc << ','
               << format_double(s.temperature_c) << ',' << format_double(s.wind_speed_10m) << ','
               << format_double(s.shortwave_wm2) << ',' << format_double(s.longwave_wm2) << '\n';
        }
    }
    write_file_atomic(path, os.str());
}

LoadSeries load_load_csv(const std::string& path, double step_hours) {
    CsvReader reader(path, {"timestamp", "bus_id", "load_mw"});
    LoadSeries series(step_hours);
    std::vector<std::string> fields;
    std::vector<std::string> issues;
    while (reader.next(fields)) {
        std::string ctx = path + ":" + std::to_string(reader.row_number());
        LoadSample s;
        s.time = to_unix_seconds(parse_timestamp(fields[0]));
        s.bus_ref = fields[1];
        s.load_mw = parse_double(fields[2], ctx);
        if (s.load_mw < 0.0) issues.push_back(ctx + ": negative load");
        series.add(s);
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
    series.finalize();
    return series;
}

void write_load_csv(const LoadSeries& series, const std::string& path) {
    std::ostringstream os;
    os << "timestamp,bus_id,load_mw\n";
    for (const auto& ref : series.refs()) {
        for (const auto& s : series.at(ref)) {
            os << format_timestamp(from_unix_seconds(s.time)) << ',' << ref << ','
               << format_double(s.load_mw) << '\n';
        }
    }
    write_file_atomic(path, os.str());
}

}  // namespace gridplan
