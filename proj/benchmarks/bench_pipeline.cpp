#include <benchmark/benchmark.h>

#include "gridplan/milp/solver.hpp"
#include "gridplan/profile_synthesis.hpp"
#include "gridplan/scuc_model.hpp"
#include "gridplan/tep_model.hpp"
#include "gridplan/tutorial.hpp"

using namespace gridplan;

namespace {

void representative_build(benchmark::State& state) {
    GridModel g = tutorial::five_bus_grid();
    WeatherSeries w = tutorial::synth_weather(g, static_cast<int>(state.range(0)));
    LoadSeries lo = tutorial::synth_loads(g, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        RepresentativeProfileSet set = build_representative(w, lo, g, {});
        benchmark::DoNotOptimize(set.line_ids().size());
    }
}
BENCHMARK(representative_build)->Arg(7)->Arg(30)->Arg(0);  // 0 = every day

void tep_build(benchmark::State& state) {
    GridModel g = tutorial::five_bus_grid();
    TepInstance inst;
    inst.grid = g;
    inst.profiles = build_representative(tutorial::synth_weather(g), tutorial::synth_loads(g), g, {});
    for (auto _ : state) {
        auto [prob, map] = build_tep(inst);
        benchmark::DoNotOptimize(prob.num_constraints());
    }
}
BENCHMARK(tep_build);

void scuc_day_solve(benchmark::State& state) {
    GridModel g = tutorial::growth_grid();
    RepresentativeProfileSet profiles =
        build_representative(tutorial::synth_weather(g), tutorial::synth_loads(g), g, {});
    CaseGrid fr = apply_investments(g, {}, {});
    ScucOptions opt;
    for (auto _ : state) {
        auto results = run_batch(fr, profiles, opt);
        benchmark::DoNotOptimize(results.size());
    }
}
BENCHMARK(scuc_day_solve)->Unit(benchmark::kMillisecond);

void dynamic_rating_eval(benchmark::State& state) {
    DlrParams p;
    p.base_rating_mva = 100.0;
    WeatherSample w{0, "x", 31.5, 4.2, 740.0, 350.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(dynamic_rating(w, p));
        w.temperature_c += 1e-9;  // defeat constant folding
    }
}
BENCHMARK(dynamic_rating_eval);

}  // namespace
