#pragma once

#include <string>

#include "gridplan/grid_model.hpp"
#include "gridplan/weather.hpp"

namespace gridplan::tutorial {

// Bundled study systems.  five_bus is the walkthrough grid with two candidate
// corridors and climate-sensitive ratings; growth is a two-bus system whose
// demand outruns local supply in the final epoch.
GridModel five_bus_grid();
GenerationPlan five_bus_generation_plan();
GridModel growth_grid();
GenerationPlan growth_generation_plan();

// Deterministic synthetic weather and demand covering the grid's horizon:
// seasonal quarter baselines, a fixed diurnal shape, small per-location
// offsets.  days_per_quarter = 0 covers every calendar day; the default picks
// the first full week of each quarter (always two weekend days).
WeatherSeries synth_weather(const GridModel& grid, int days_per_quarter = 7);
LoadSeries synth_loads(const GridModel& grid, int days_per_quarter = 7);

// Writes a ready-to-run study directory: grid.json, weather.csv, loads.csv,
// gen_plan.json and study.json.  `name` is "five_bus" or "growth".
void write_study(const std::string& name, const std::string& dir);

}  // namespace gridplan::tutorial
