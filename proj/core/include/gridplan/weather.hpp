#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gridplan/time_util.hpp"

namespace gridplan {

struct WeatherSample {
    std::int64_t time = 0;  // unix seconds, UTC
    std::string location_id;
    double temperature_c = 0.0;
    double wind_speed_10m = 0.0;  // m/s
    double shortwave_wm2 = 0.0;
    double longwave_wm2 = 0.0;
};

// Uniform-step weather per location.  Samples are stored sorted by time; the
// step is declared and every timestamp must sit on the step grid.
class WeatherSeries {
public:
    explicit WeatherSeries(double step_hours = 3.0) : step_hours_(step_hours) {}

    double step_hours() const { return step_hours_; }
    void add(const WeatherSample& s);
    void finalize();  // sorts, checks duplicates/step alignment

    const std::vector<WeatherSample>& at(const std::string& location) const;
    bool has_location(const std::string& location) const;
    std::vector<std::string> locations() const;

    // Year of the earliest sample over all locations (horizon anchor).
    int anchor_year() const;
    bool empty() const { return by_location_.empty(); }

private:
    double step_hours_;
    std::map<std::string, std::vector<WeatherSample>> by_location_;
    bool finalized_ = false;
};

// Per-bus-reference demand series with the same layout rules.
struct LoadSample {
    std::int64_t time = 0;
    std::string bus_ref;
    double load_mw = 0.0;
};

class LoadSeries {
public:
    explicit LoadSeries(double step_hours = 3.0) : step_hours_(step_hours) {}

    double step_hours() const { return step_hours_; }
    void add(const LoadSample& s);
    void finalize();

    const std::vector<LoadSample>& at(const std::string& bus_ref) const;
    bool has_ref(const std::string& bus_ref) const;
    std::vector<std::string> refs() const;

private:
    double step_hours_;
    std::map<std::string, std::vector<LoadSample>> by_ref_;
    bool finalized_ = false;
};

// CSV schema: timestamp,location_id,temperature_c,wind_speed_10m_mps,shortwave_wm2,longwave_wm2
WeatherSeries load_weather_csv(const std::string& path, double step_hours);
void write_weather_csv(const WeatherSeries& series, const std::string& path);

// CSV schema: timestamp,bus_id,load_mw
LoadSeries load_load_csv(const std::string& path, double step_hours);
void write_load_csv(const LoadSeries& series, const std::string& path);

}  // namespace gridplan
