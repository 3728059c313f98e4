#include <filesystem>

#include "doctest.h"
#include "gridplan/errors.hpp"
#include "gridplan/grid_model.hpp"
#include "gridplan/tutorial.hpp"
#include "test_support.hpp"

using namespace gridplan;

static std::string fixture(const std::string& name) {
    return std::string(GRIDPLAN_FIXTURE_DIR) + "/" + name;
}

TEST_CASE("load_grid: bundled tutorial file") {
    GridModel g = load_grid(fixture("tutorial_grid.json"));
    CHECK(g.buses.size() == 5);
    CHECK(g.lines.size() == 6);
    int candidates = 0;
    for (const auto& l : g.lines) candidates += l.candidate;
    CHECK(candidates == 2);
    // The checked-in file is the serialized form of the bundled builder.
    CHECK(g == tutorial::five_bus_grid());
}

TEST_CASE("load_grid: duplicate bus id names the offender") {
    std::string text = R"({
      "base_mva": 100,
      "horizon": {"num_epochs": 1, "years_per_epoch": 1, "weekdays_per_quarter": 65,
                  "weekend_days_per_quarter": 26, "intervals_per_day": 8,
                  "interval_hours": 3, "maintenance_ratio": 0.0},
      "buses": [{"id": "busA"}, {"id": "busA"}],
      "lines": [{"id": "l1", "from_bus": "busA", "to_bus": "busA",
                 "reactance": 0.1, "static_rating_mva": 10}],
      "generators": [], "renewables": []
    })";
    CHECK_THROWS_WITH_AS(parse_grid(text, "dup"), doctest::Contains("busA"), ValidationError);
}

TEST_CASE("load_grid: zero reactance is a nonpositive-reactance error") {
    std::string text = R"({
      "base_mva": 100,
      "horizon": {"num_epochs": 1, "years_per_epoch": 1, "weekdays_per_quarter": 65,
                  "weekend_days_per_quarter": 26, "intervals_per_day": 8,
                  "interval_hours": 3, "maintenance_ratio": 0.0},
      "buses": [{"id": "a"}, {"id": "b"}],
      "lines": [{"id": "l1", "from_bus": "a", "to_bus": "b",
                 "reactance": 0.0, "static_rating_mva": 10}],
      "generators": [], "renewables": []
    })";
    CHECK_THROWS_WITH_AS(parse_grid(text, "x0"), doctest::Contains("nonpositive reactance"),
                         ValidationError);
}

TEST_CASE("load_grid: validation reports every violation at once") {
    std::string text = R"({
      "base_mva": -5,
      "horizon": {"num_epochs": 1, "years_per_epoch": 1, "weekdays_per_quarter": 65,
                  "weekend_days_per_quarter": 26, "intervals_per_day": 8,
                  "interval_hours": 3, "maintenance_ratio": 0.0},
      "buses": [{"id": "a"}, {"id": "b"}],
      "lines": [{"id": "l1", "from_bus": "a", "to_bus": "b",
                 "reactance": -1, "static_rating_mva": 0}],
      "generators": [], "renewables": []
    })";
    try {
        parse_grid(text, "multi");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.issues().size() >= 3);  // base_mva, reactance, rating
    }
}

TEST_CASE("grid serialization round-trips field for field") {
    for (const GridModel& g : {tutorial::five_bus_grid(), tutorial::growth_grid()}) {
        GridModel back = parse_grid(grid_to_json(g), "roundtrip");
        CHECK(back == g);
    }
}

TEST_CASE("connectivity is required over existing lines only") {
    GridModel g = tutorial::growth_grid();
    // Demote the only existing line to a candidate: now nothing existing
    // connects b2.
    g.lines[0].candidate = true;
    g.lines[0].construction_cost = 1e6;
    auto issues = g.validate();
    bool found = false;
    for (const auto& s : issues) found = found || s.find("not connected") != std::string::npos;
    CHECK(found);
}

TEST_CASE("per-unit conversion") {
    CHECK(to_per_unit(100.0, 100.0) == 1.0);
    CHECK(to_per_unit(250.0, 100.0) == 2.5);
    double mw = 37.5;
    CHECK(from_per_unit(to_per_unit(mw, 100.0), 100.0) == mw);
    CHECK_THROWS_AS(to_per_unit(10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(from_per_unit(10.0, -1.0), std::invalid_argument);
}

TEST_CASE("apply_investments: empty plans are the identity (FR)") {
    GridModel g = tutorial::five_bus_grid();
    CaseGrid fr = apply_investments(g, {}, {});
    CHECK(fr.kind == InvestmentCase::FR);
    REQUIRE(fr.epochs.size() == 2);
    for (const auto& view : fr.epochs) {
        CHECK(view.buses == g.buses);
        CHECK(view.generators == g.generators);
        CHECK(view.renewables == g.renewables);
        // Only the existing lines appear.
        CHECK(view.lines.size() == 4);
        for (const auto& l : view.lines) CHECK(!l.candidate);
    }
}

TEST_CASE("apply_investments: commissioning semantics for new units (FGI)") {
    GridModel g = tutorial::five_bus_grid();
    GenerationPlan plan;
    GenerationInvestment wind;
    wind.asset_id = "w_new";
    wind.kind = "wind";
    wind.bus = "b2";
    wind.capacity_mw = 100.0;
    wind.commission_epoch = 2;
    plan.push_back(wind);
    CaseGrid fgi = apply_investments(g, plan, {});
    CHECK(fgi.kind == InvestmentCase::FGI);
    auto has_plant = [](const EpochView& v, const std::string& id) {
        for (const auto& r : v.renewables)
            if (r.id == id) return true;
        return false;
    };
    CHECK(!has_plant(fgi.epochs[0], "w_new"));
    CHECK(has_plant(fgi.epochs[1], "w_new"));
}

TEST_CASE("apply_investments: built candidate appears in every epoch from its build (FGTI)") {
    GridModel g = tutorial::five_bus_grid();
    CaseGrid fgti = apply_investments(g, {}, {BuiltLine{"c13", 1}});
    CHECK(fgti.kind == InvestmentCase::FGTI);
    for (const auto& view : fgti.epochs) {
        bool found = false;
        for (const auto& l : view.lines) found = found || l.id == "c13";
        CHECK(found);
    }
}

TEST_CASE("apply_investments: monotone commissioning across epochs") {
    GridModel g = tutorial::growth_grid();
    CaseGrid cg = apply_investments(g, tutorial::growth_generation_plan(), {BuiltLine{"c12", 2}});
    REQUIRE(cg.epochs.size() == 2);
    auto ids = [](const auto& entities) {
        std::vector<std::string> out;
        for (const auto& e : entities) out.push_back(e.id);
        return out;
    };
    auto subset = [](std::vector<std::string> a, std::vector<std::string> b) {
        for (const auto& x : a) {
            bool found = false;
            for (const auto& y : b) found = found || x == y;
            if (!found) return false;
        }
        return true;
    };
    CHECK(subset(ids(cg.epochs[0].generators), ids(cg.epochs[1].generators)));
    CHECK(subset(ids(cg.epochs[0].renewables), ids(cg.epochs[1].renewables)));
    CHECK(subset(ids(cg.epochs[0].lines), ids(cg.epochs[1].lines)));
}

TEST_CASE("apply_investments: unknown asset ids are rejected") {
    GridModel g = tutorial::growth_grid();
    CHECK_THROWS_WITH_AS(apply_investments(g, {}, {BuiltLine{"nope", 1}}),
                         doctest::Contains("nope"), ValidationError);
    GenerationPlan plan;
    GenerationInvestment inv;
    inv.asset_id = "t9";
    inv.kind = "thermal";
    inv.bus = "no_such_bus";
    inv.capacity_mw = 10.0;
    inv.commission_epoch = 1;
    plan.push_back(inv);
    CHECK_THROWS_WITH_AS(apply_investments(g, plan, {}), doctest::Contains("no_such_bus"),
                         ValidationError);
}

TEST_CASE("new-unit epoch limits are zero before commissioning") {
    ThermalGenerator t;
    t.p_min_mw = 10.0;
    t.p_max_mw = 50.0;
    t.commission_epoch = 2;
    CHECK(t.p_max_in_epoch(1) == 0.0);
    CHECK(t.p_min_in_epoch(1) == 0.0);
    CHECK(t.p_max_in_epoch(2) == 50.0);
    CHECK(t.p_min_in_epoch(2) == 10.0);
    CHECK(t.p_max_in_epoch(3) == 50.0);
}
