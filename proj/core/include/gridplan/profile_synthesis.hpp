#pragma once

#include <map>
#include <string>
#include <vector>

#include "gridplan/dlr_params.hpp"
#include "gridplan/grid_model.hpp"
#include "gridplan/weather.hpp"

namespace gridplan {

// --- Instantaneous weather-to-power models -----------------------------------

// Log wind profile: v_hub = v_ref * ln(h_hub/z0) / ln(h_ref/z0).
double extrapolate_wind_speed(double v_ref, double h_ref, double h_hub, double z0);

struct WindPowerCurve {
    double v_cutin = 3.0;
    double v_rated = 12.0;
    double v_cutout = 25.0;
    double capacity_mw = 0.0;
};

// Cubic between cut-in and rated, flat at capacity up to cut-out.
double wind_power(double v_hub, const WindPowerCurve& curve);

struct SolarPanel {
    double capacity_mw = 0.0;
    double f_shortwave = 0.85;
    double f_longwave = 0.05;
    double g_ref_wm2 = 1000.0;
};

// capacity * min(1, (f_sw*SW + f_lw*LW) / g_ref).
double solar_power(double shortwave_wm2, double longwave_wm2, const SolarPanel& panel);

enum class TerminalWeatherPolicy { Conservative, Average };

// Combines the two terminal-bus samples of a line into the effective sample
// used for its rating: conservative takes the rating-pessimal extreme of each
// component, average the element-wise mean.
WeatherSample line_weather(const WeatherSample& from, const WeatherSample& to,
                           TerminalWeatherPolicy policy);

// Weather-adjusted transfer limit, clipped to [clip_lo, clip_hi] * base.
double dynamic_rating(const WeatherSample& effective, const DlrParams& params);

// --- Representative profiles --------------------------------------------------

enum class DayType { Weekday = 0, Weekend = 1 };

std::string to_string(DayType d);

// Per (epoch, quarter, interval) means of ratings and renewable availability,
// and per (epoch, quarter, day-type, interval) means of bus loads.
class RepresentativeProfileSet {
public:
    RepresentativeProfileSet() = default;
    explicit RepresentativeProfileSet(const PlanningHorizon& horizon) : horizon_(horizon) {}

    const PlanningHorizon& horizon() const { return horizon_; }

    // epoch and quarter are 1-based, interval 0-based.
    double line_rating(const std::string& line, int epoch, int quarter, int interval) const;
    double renewable_max(const std::string& plant, int epoch, int quarter, int interval) const;
    double load(const std::string& bus, int epoch, int quarter, DayType day_type,
                int interval) const;

    void set_line_rating(const std::string& line, int epoch, int quarter, int interval, double v);
    void set_renewable_max(const std::string& plant, int epoch, int quarter, int interval,
                           double v);
    void set_load(const std::string& bus, int epoch, int quarter, DayType day_type, int interval,
                  double v);

    bool has_line(const std::string& line) const { return line_rating_.count(line) > 0; }
    bool has_renewable(const std::string& plant) const { return renewable_max_.count(plant) > 0; }
    bool has_bus_load(const std::string& bus) const { return load_.count(bus) > 0; }

    std::vector<std::string> line_ids() const;
    std::vector<std::string> renewable_ids() const;
    std::vector<std::string> load_bus_ids() const;

    // Invariant check: positive ratings, availability within capacity, loads
    // >= 0, complete index coverage for every entity present.
    std::vector<std::string> validate(const GridModel* grid = nullptr) const;
    void validate_or_throw(const GridModel* grid = nullptr) const;

    // (entity, epoch, quarter) slabs that have unset values.
    std::vector<std::string> coverage_gaps() const;

    // Every line, renewable and bus of `grid` must be present.
    void check_covers(const GridModel& grid) const;

private:
    int eqidx(int epoch, int quarter, int interval, const char* what) const;
    int eqdidx(int epoch, int quarter, DayType day_type, int interval) const;
    std::size_t slab_size() const;

    PlanningHorizon horizon_;
    std::map<std::string, std::vector<double>> line_rating_;
    std::map<std::string, std::vector<double>> renewable_max_;
    std::map<std::string, std::vector<double>> load_;  // with day-type axis
};

struct ProfileOptions {
    TerminalWeatherPolicy policy = TerminalWeatherPolicy::Conservative;
};

// Means over identical intervals across all complete days of each quarter of
// each epoch's years.  Ratings and renewables average every day; loads are
// split by day type (when the horizon models weekends).  Per-epoch load
// growth factors from the grid are applied.  Throws CoverageError naming
// every empty (entity, epoch, quarter) slab and malformed day.
RepresentativeProfileSet build_representative(const WeatherSeries& weather,
                                              const LoadSeries& loads, const GridModel& grid,
                                              const ProfileOptions& options = {});

// CSV round-trip: <dir>/line_ratings.csv, <dir>/renewable_availability.csv,
// <dir>/loads.csv with rows epoch,quarter,day_type,interval,entity_id,value.
void export_profiles(const RepresentativeProfileSet& set, const std::string& dir);
RepresentativeProfileSet import_profiles(const std::string& dir, const PlanningHorizon& horizon);

}  // namespace gridplan
