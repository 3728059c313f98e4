#include <cmath>
#include <random>

#include "doctest.h"
#include "gridplan/errors.hpp"
#include "gridplan/profile_synthesis.hpp"
#include "gridplan/tutorial.hpp"
#include "test_support.hpp"

using namespace gridplan;

TEST_CASE("wind speed extrapolation: log profile value") {
    CHECK(extrapolate_wind_speed(5.0, 10.0, 80.0, 0.03) == doctest::Approx(6.790).epsilon(1.5e-4));
    CHECK(extrapolate_wind_speed(0.0, 10.0, 80.0, 0.03) == 0.0);
    CHECK(extrapolate_wind_speed(7.2, 10.0, 10.0, 0.5) == doctest::Approx(7.2));
    CHECK_THROWS_AS(extrapolate_wind_speed(5.0, 0.02, 80.0, 0.03), std::invalid_argument);
    CHECK_THROWS_AS(extrapolate_wind_speed(5.0, 10.0, 0.01, 0.03), std::invalid_argument);
    CHECK_THROWS_AS(extrapolate_wind_speed(-1.0, 10.0, 80.0, 0.03), std::invalid_argument);
}

TEST_CASE("wind speed extrapolation is linear in the reference speed") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> v_d(0.0, 30.0), a_d(0.1, 5.0);
    std::uniform_real_distribution<double> z_d(0.01, 1.0), h_d(20.0, 150.0);
    for (int i = 0; i < 1000; ++i) {
        double v = v_d(rng), alpha = a_d(rng), z0 = z_d(rng), hub = h_d(rng);
        double lhs = extrapolate_wind_speed(alpha * v, 10.0, hub, z0);
        double rhs = alpha * extrapolate_wind_speed(v, 10.0, hub, z0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("wind power curve") {
    WindPowerCurve curve{3.0, 12.0, 25.0, 100.0};
    CHECK(wind_power(2.0, curve) == 0.0);
    CHECK(wind_power(12.0, curve) == 100.0);
    CHECK(wind_power(7.0, curve) == doctest::Approx(18.577).epsilon(1e-4));
    CHECK(wind_power(20.0, curve) == 100.0);
    CHECK(wind_power(26.0, curve) == 0.0);
    WindPowerCurve bad{12.0, 3.0, 25.0, 100.0};
    CHECK_THROWS_AS(wind_power(5.0, bad), std::invalid_argument);
}

TEST_CASE("wind power: continuity at cut-in and rated, bounded by capacity") {
    WindPowerCurve curve{3.0, 12.0, 25.0, 100.0};
    const double eps = 1e-10;
    CHECK(std::abs(wind_power(3.0 - eps, curve) - wind_power(3.0 + eps, curve)) < 1e-6);
    CHECK(std::abs(wind_power(12.0 - eps, curve) - wind_power(12.0 + eps, curve)) < 1e-6);
    // Left/right limits agree within 1e-9 analytically: p(cutin)=0, p(rated)=cap.
    CHECK(wind_power(3.0, curve) < 1e-9);
    CHECK(wind_power(12.0, curve) == doctest::Approx(100.0).epsilon(1e-12));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> v_d(0.0, 35.0);
    for (int i = 0; i < 2000; ++i) {
        double p = wind_power(v_d(rng), curve);
        CHECK(p >= 0.0);
        CHECK(p <= 100.0 + 1e-12);
    }
}

TEST_CASE("solar power") {
    SolarPanel plant{50.0, 0.85, 0.05, 1000.0};
    CHECK(solar_power(0.0, 0.0, plant) == 0.0);
    CHECK(solar_power(800.0, 400.0, plant) == doctest::Approx(35.0));
    CHECK(solar_power(1500.0, 0.0, plant) == 50.0);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> r_d(0.0, 1600.0);
    for (int i = 0; i < 2000; ++i) {
        double p = solar_power(r_d(rng), r_d(rng), plant);
        CHECK(p >= 0.0);
        CHECK(p <= 50.0);
    }
    CHECK_THROWS_AS(solar_power(-1.0, 0.0, plant), std::invalid_argument);
}

TEST_CASE("line weather combination") {
    WeatherSample a{0, "A", 30.0, 4.0, 800.0, 300.0};
    WeatherSample b{0, "B", 34.0, 2.0, 900.0, 320.0};
    WeatherSample cons = line_weather(a, b, TerminalWeatherPolicy::Conservative);
    CHECK(cons.temperature_c == 34.0);
    CHECK(cons.wind_speed_10m == 2.0);
    CHECK(cons.shortwave_wm2 == 900.0);
    WeatherSample avg = line_weather(a, b, TerminalWeatherPolicy::Average);
    CHECK(avg.temperature_c == 32.0);
    CHECK(avg.wind_speed_10m == 3.0);
    CHECK(avg.shortwave_wm2 == 850.0);
    for (auto policy : {TerminalWeatherPolicy::Conservative, TerminalWeatherPolicy::Average}) {
        WeatherSample same = line_weather(a, a, policy);
        CHECK(same.temperature_c == a.temperature_c);
        CHECK(same.wind_speed_10m == a.wind_speed_10m);
        CHECK(same.shortwave_wm2 == a.shortwave_wm2);
    }
    WeatherSample later = a;
    later.time = 3600;
    CHECK_THROWS_AS(line_weather(a, later, TerminalWeatherPolicy::Average),
                    std::invalid_argument);
}

TEST_CASE("dynamic rating: reference weather and worked values") {
    DlrParams p;
    p.base_rating_mva = 100.0;
    WeatherSample ref{0, "x", 25.0, 0.6, 0.0, 0.0};
    CHECK(dynamic_rating(ref, p) == doctest::Approx(100.0));
    WeatherSample hot{0, "x", 35.0, 0.6, 1000.0, 0.0};
    CHECK(dynamic_rating(hot, p) == doctest::Approx(90.25));
    WeatherSample cold{0, "x", 5.0, 5.0, 0.0, 0.0};
    CHECK(dynamic_rating(cold, p) == doctest::Approx(114.84).epsilon(1e-4));
}

TEST_CASE("dynamic rating: monotone responses and wind cap") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> t_d(-20.0, 45.0), v_d(0.0, 15.0), s_d(0.0, 1200.0);
    std::uniform_real_distribution<double> c_d(0.0, 0.02);
    for (int i = 0; i < 1000; ++i) {
        DlrParams p;
        p.base_rating_mva = 50.0 + 100.0 * c_d(rng) * 50.0;
        p.temp_coeff = c_d(rng);
        p.wind_coeff = c_d(rng);
        p.solar_coeff = c_d(rng) * 3.0;
        WeatherSample w{0, "x", t_d(rng), v_d(rng), s_d(rng), 0.0};
        double base = dynamic_rating(w, p);
        CHECK(base > 0.0);

        WeatherSample hotter = w;
        hotter.temperature_c += 3.0;
        CHECK(dynamic_rating(hotter, p) <= base + 1e-12);

        WeatherSample sunnier = w;
        sunnier.shortwave_wm2 += 150.0;
        CHECK(dynamic_rating(sunnier, p) <= base + 1e-12);

        WeatherSample windier = w;
        windier.wind_speed_10m = std::min(w.wind_speed_10m + 2.0, p.wind_cap_mps);
        if (windier.wind_speed_10m >= w.wind_speed_10m)
            CHECK(dynamic_rating(windier, p) >= base - 1e-12);

        WeatherSample capped = w;
        capped.wind_speed_10m = p.wind_cap_mps + 5.0;
        WeatherSample capped_more = w;
        capped_more.wind_speed_10m = p.wind_cap_mps + 25.0;
        CHECK(dynamic_rating(capped, p) == doctest::Approx(dynamic_rating(capped_more, p)));
    }
}

namespace {

// Two-bus grid with one line, one wind plant and one solar plant; used for
// hand-built weather series.
GridModel mini_grid(int intervals = 4) {
    GridModel g;
    g.name = "mini";
    g.base_mva = 100.0;
    g.horizon = testsupport::small_horizon(1, intervals, true);
    for (int i = 1; i <= 2; ++i) {
        Bus b;
        b.id = "m" + std::to_string(i);
        b.load_profile_ref = b.id;
        g.buses.push_back(b);
    }
    TransmissionLine l;
    l.id = "ml";
    l.from_bus = "m1";
    l.to_bus = "m2";
    l.reactance = 0.1;
    l.static_rating_mva = 50.0;
    l.dlr.base_rating_mva = 50.0;
    g.lines.push_back(l);
    ThermalGenerator t;
    t.id = "mg";
    t.bus = "m1";
    t.p_max_mw = 100.0;
    t.marginal_cost = 20.0;
    t.ramp_mw = 100.0;
    g.generators.push_back(t);
    RenewablePlant w;
    w.id = "mw";
    w.bus = "m1";
    w.kind = RenewableKind::Wind;
    w.capacity_mw = 80.0;
    g.renewables.push_back(w);
    RenewablePlant s;
    s.id = "ms";
    s.bus = "m2";
    s.kind = RenewableKind::Solar;
    s.capacity_mw = 40.0;
    g.renewables.push_back(s);
    g.validate_or_throw();
    return g;
}

void add_day(WeatherSeries& w, LoadSeries& lo, const GridModel& g, std::int64_t day,
             double scale) {
    const int T = g.horizon.intervals_per_day;
    const double dt = g.horizon.interval_hours;
    for (const auto& bus : g.buses) {
        for (int t = 0; t < T; ++t) {
            WeatherSample s;
            s.time = day * 86400 + static_cast<std::int64_t>(t * dt * 3600);
            s.location_id = bus.id;
            s.temperature_c = 20.0 + 2.0 * t + scale;
            s.wind_speed_10m = 4.0 + 0.5 * t + 0.3 * scale;
            s.shortwave_wm2 = 100.0 * t * scale;
            s.longwave_wm2 = 300.0;
            w.add(s);
            LoadSample ls;
            ls.time = s.time;
            ls.bus_ref = bus.id;
            ls.load_mw = 30.0 + 5.0 * t + 10.0 * scale;
            lo.add(ls);
        }
    }
}

}  // namespace

TEST_CASE("build_representative: mean of two days and single-day identity") {
    GridModel g = mini_grid();
    WeatherSeries w(g.horizon.interval_hours);
    LoadSeries lo(g.horizon.interval_hours);
    // First full week of each quarter of 2031; Jan 6/7 2031 are Mon/Tue.
    std::int64_t jan6 = days_from_civil(2031, 1, 6);
    add_day(w, lo, g, jan6, 1.0);
    add_day(w, lo, g, jan6 + 1, 2.0);
    std::int64_t sat = days_from_civil(2031, 1, 4);
    add_day(w, lo, g, sat, 1.5);
    // Single complete days in the other quarters (plus one weekend day each).
    for (int q = 2; q <= 4; ++q) {
        std::int64_t first = days_from_civil(2031, (q - 1) * 3 + 1, 1);
        std::int64_t d = first;
        std::int64_t wkend = first;
        while (is_weekend(d)) ++d;
        while (!is_weekend(wkend)) ++wkend;
        add_day(w, lo, g, d, 1.0);
        add_day(w, lo, g, wkend, 0.5);
    }
    w.finalize();
    lo.finalize();
    RepresentativeProfileSet set = build_representative(w, lo, g, {});

    // Q1 weekday loads: mean of the scale 1.0 and 2.0 days.
    CHECK(set.load("m1", 1, 1, DayType::Weekday, 0) == doctest::Approx((40.0 + 50.0) / 2.0));
    CHECK(set.load("m1", 1, 1, DayType::Weekend, 0) == doctest::Approx(45.0));
    // Q2 has a single weekday: representative equals that day.
    CHECK(set.load("m1", 1, 2, DayType::Weekday, 1) == doctest::Approx(30.0 + 5.0 + 10.0));
}

TEST_CASE("build_representative: scripted-mean oracle over a multi-day fixture") {
    GridModel g = mini_grid();
    WeatherSeries w(g.horizon.interval_hours);
    LoadSeries lo(g.horizon.interval_hours);
    std::vector<std::vector<std::int64_t>> weekdays_by_q(5), weekends_by_q(5);
    for (int q = 1; q <= 4; ++q) {
        std::int64_t first = days_from_civil(2031, (q - 1) * 3 + 1, 1);
        for (int k = 0; k < 7; ++k) {  // one full week: 5 weekdays, 2 weekend days
            add_day(w, lo, g, first + k, 0.5 + 0.25 * k + 0.1 * q);
            (is_weekend(first + k) ? weekends_by_q[q] : weekdays_by_q[q]).push_back(first + k);
        }
    }
    w.finalize();
    lo.finalize();
    RepresentativeProfileSet set = build_representative(w, lo, g, {});

    // Independent mean: reread the raw series and average per slab directly.
    const auto& samples = w.at("m1");
    const auto& samples2 = w.at("m2");
    const auto& line = g.lines[0];
    for (int q = 1; q <= 4; ++q) {
        for (int t = 0; t < g.horizon.intervals_per_day; ++t) {
            double sum = 0.0;
            int count = 0;
            for (std::size_t i = 0; i < samples.size(); ++i) {
                if (static_cast<int>((samples[i].time % 86400) / 3600 /
                                     g.horizon.interval_hours) != t)
                    continue;
                Timestamp ts = from_unix_seconds(samples[i].time);
                if ((ts.month - 1) / 3 + 1 != q) continue;
                sum += dynamic_rating(
                    line_weather(samples[i], samples2[i], TerminalWeatherPolicy::Conservative),
                    line.dlr);
                ++count;
            }
            REQUIRE(count > 0);
            CHECK(set.line_rating("ml", 1, q, t) == doctest::Approx(sum / count).epsilon(1e-12));
            // Representative values stay inside the source-day envelope.
            double lo_v = 1e30, hi_v = -1e30;
            for (std::size_t i = 0; i < samples.size(); ++i) {
                if (static_cast<int>((samples[i].time % 86400) / 3600 /
                                     g.horizon.interval_hours) != t)
                    continue;
                Timestamp ts = from_unix_seconds(samples[i].time);
                if ((ts.month - 1) / 3 + 1 != q) continue;
                double r = dynamic_rating(
                    line_weather(samples[i], samples2[i], TerminalWeatherPolicy::Conservative),
                    line.dlr);
                lo_v = std::min(lo_v, r);
                hi_v = std::max(hi_v, r);
            }
            CHECK(set.line_rating("ml", 1, q, t) >= lo_v - 1e-9);
            CHECK(set.line_rating("ml", 1, q, t) <= hi_v + 1e-9);
        }
    }
}

TEST_CASE("build_representative: missing slabs and partial days are named gaps") {
    GridModel g = mini_grid();
    WeatherSeries w(g.horizon.interval_hours);
    LoadSeries lo(g.horizon.interval_hours);
    std::int64_t jan6 = days_from_civil(2031, 1, 6);
    add_day(w, lo, g, jan6, 1.0);  // only quarter 1, weekdays only
    w.finalize();
    lo.finalize();
    try {
        build_representative(w, lo, g, {});
        FAIL("expected CoverageError");
    } catch (const CoverageError& e) {
        std::string all = e.what();
        CHECK(all.find("quarter 2") != std::string::npos);
        CHECK(all.find("ml") != std::string::npos);
    }
}

TEST_CASE("build_representative: step mismatch is rejected") {
    GridModel g = mini_grid();
    WeatherSeries w(1.0);  // declared hourly; horizon expects 6h
    LoadSeries lo(g.horizon.interval_hours);
    CHECK_THROWS_AS(build_representative(w, lo, g, {}), CoverageError);
}

TEST_CASE("profiles: export/import round-trip is the identity") {
    GridModel g = tutorial::five_bus_grid();
    RepresentativeProfileSet set = build_representative(tutorial::synth_weather(g),
                                                        tutorial::synth_loads(g), g, {});
    testsupport::TempDir dir("profiles");
    export_profiles(set, dir.path());
    RepresentativeProfileSet back = import_profiles(dir.path(), g.horizon);
    for (const auto& id : set.line_ids()) {
        for (int e = 1; e <= g.horizon.num_epochs; ++e)
            for (int q = 1; q <= 4; ++q)
                for (int t = 0; t < g.horizon.intervals_per_day; ++t)
                    CHECK(back.line_rating(id, e, q, t) == set.line_rating(id, e, q, t));
    }
    for (const auto& id : set.load_bus_ids()) {
        for (int e = 1; e <= g.horizon.num_epochs; ++e)
            for (int q = 1; q <= 4; ++q)
                for (int dt = 0; dt < 2; ++dt)
                    for (int t = 0; t < g.horizon.intervals_per_day; ++t)
                        CHECK(back.load(id, e, q, static_cast<DayType>(dt), t) ==
                              set.load(id, e, q, static_cast<DayType>(dt), t));
    }
}

TEST_CASE("profiles: negative rating in a file names the row") {
    GridModel g = mini_grid();
    testsupport::TempDir dir("badprof");
    RepresentativeProfileSet set(g.horizon);
    testsupport::fill_profiles(set, g, 99);
    export_profiles(set, dir.path());
    // Corrupt one rating row.
    std::string path = dir.file("line_ratings.csv");
    std::string text = testsupport::read_file(path);
    auto pos = text.find("\n1,1,ALL,1,");
    REQUIRE(pos != std::string::npos);
    auto comma = text.rfind(',', text.find('\n', pos + 1));
    text = text.substr(0, comma + 1) + "-5" + text.substr(text.find('\n', pos + 1));
    std::ofstream(path) << text;
    try {
        import_profiles(dir.path(), g.horizon);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line_ratings.csv:3") != std::string::npos);
    }
}

TEST_CASE("profiles: a missing slab is a coverage error") {
    GridModel g = mini_grid();
    testsupport::TempDir dir("gapprof");
    RepresentativeProfileSet set(g.horizon);
    testsupport::fill_profiles(set, g, 7);
    export_profiles(set, dir.path());
    std::string path = dir.file("renewable_availability.csv");
    std::string text = testsupport::read_file(path);
    // Drop every quarter-3 row for one plant.
    std::string out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("1,3,", 0) == 0 && line.find(",mw,") != std::string::npos) continue;
        out += line + "\n";
    }
    std::ofstream(path) << out;
    try {
        import_profiles(dir.path(), g.horizon);
        FAIL("expected CoverageError");
    } catch (const CoverageError& e) {
        std::string all = e.what();
        CHECK(all.find("mw") != std::string::npos);
        CHECK(all.find("quarter 3") != std::string::npos);
    }
}
