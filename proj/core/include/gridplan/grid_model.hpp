#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridplan/dlr_params.hpp"

namespace gridplan {

// Epochs are 1-based throughout; commission_epoch == 0 means "existing".
constexpr int kExisting = 0;

struct PlanningHorizon {
    int num_epochs = 1;             // N^P
    int years_per_epoch = 5;        // N^Y
    int quarters_per_year = 4;      // fixed
    int weekdays_per_quarter = 65;  // N^D (day-count weight, not calendar)
    int weekend_days_per_quarter = 26;  // N^E
    int intervals_per_day = 8;      // |T|
    double interval_hours = 3.0;    // dt

    int typical_days_per_year() const;  // quarters x modeled day types
    int day_types() const { return weekend_days_per_quarter > 0 ? 2 : 1; }

    bool operator==(const PlanningHorizon&) const = default;
};

struct Bus {
    std::string id;
    double latitude = 0.0;
    double longitude = 0.0;
    std::string load_profile_ref;  // key into the load CSV's bus_id column

    bool operator==(const Bus&) const = default;
};

struct TransmissionLine {
    std::string id;
    std::string from_bus;
    std::string to_bus;
    double reactance = 0.0;        // per-unit, > 0
    double static_rating_mva = 0.0;
    DlrParams dlr;                 // base_rating_mva kept equal to static_rating_mva
    bool candidate = false;
    double construction_cost = 0.0;          // $, candidates only
    std::optional<double> big_m;             // per-unit flow bound override

    bool operator==(const TransmissionLine&) const = default;
};

struct ThermalGenerator {
    std::string id;
    std::string bus;
    double p_min_mw = 0.0;
    double p_max_mw = 0.0;
    double marginal_cost = 0.0;     // $/MWh
    double online_cost = 0.0;       // $/interval
    double startup_cost = 0.0;      // $
    double ramp_mw = 0.0;           // MW per interval
    double reserve_ramp_mw = 0.0;   // R^10
    int commission_epoch = kExisting;

    // Effective limits in epoch p (1-based): zero before commissioning.
    double p_min_in_epoch(int epoch) const {
        return epoch >= required_epoch() ? p_min_mw : 0.0;
    }
    double p_max_in_epoch(int epoch) const {
        return epoch >= required_epoch() ? p_max_mw : 0.0;
    }
    bool commissioned_by(int epoch) const { return epoch >= required_epoch(); }

    bool operator==(const ThermalGenerator&) const = default;

private:
    int required_epoch() const { return commission_epoch == kExisting ? 1 : commission_epoch; }
};

enum class RenewableKind { Wind, Solar };

std::string to_string(RenewableKind k);
RenewableKind renewable_kind_from_string(const std::string& s);

struct RenewablePlant {
    std::string id;
    std::string bus;
    RenewableKind kind = RenewableKind::Wind;
    double capacity_mw = 0.0;
    double p_min_mw = 0.0;
    // Wind parameters (one turbine type per farm).
    double hub_height_m = 80.0;
    double roughness_m = 0.03;  // z_0
    double v_cutin = 3.0;
    double v_rated = 12.0;
    double v_cutout = 25.0;
    // Solar spectral response.
    double f_shortwave = 0.85;
    double f_longwave = 0.05;
    double g_ref_wm2 = 1000.0;
    int commission_epoch = kExisting;

    bool commissioned_by(int epoch) const {
        return commission_epoch == kExisting || epoch >= commission_epoch;
    }

    bool operator==(const RenewablePlant&) const = default;
};

struct GridModel {
    std::string name;
    double base_mva = 100.0;             // B^MVA
    double maintenance_ratio = 0.0;      // R^M, fraction of build cost per year
    PlanningHorizon horizon;
    std::vector<double> load_growth;     // per-epoch multiplier, size num_epochs
    std::vector<Bus> buses;
    std::vector<TransmissionLine> lines;
    std::vector<ThermalGenerator> generators;
    std::vector<RenewablePlant> renewables;

    const Bus* find_bus(const std::string& id) const;
    const TransmissionLine* find_line(const std::string& id) const;
    int bus_index(const std::string& id) const;  // -1 when absent

    std::vector<std::string> validate() const;
    void validate_or_throw() const;

    bool operator==(const GridModel&) const = default;
};

GridModel load_grid(const std::string& path);
GridModel parse_grid(const std::string& json_text, const std::string& origin = "<string>");
void write_grid(const GridModel& grid, const std::string& path);
std::string grid_to_json(const GridModel& grid);

inline double to_per_unit(double mw, double base_mva);
inline double from_per_unit(double pu, double base_mva);

// --- Investment cases ------------------------------------------------------

struct GenerationInvestment {
    std::string asset_id;
    std::string kind;  // "thermal" | "wind" | "solar"
    std::string bus;
    double capacity_mw = 0.0;
    int commission_epoch = 1;
    // Thermal cost/limit fields (ignored for renewables).
    double p_min_mw = 0.0;
    double marginal_cost = 0.0;
    double online_cost = 0.0;
    double startup_cost = 0.0;
    double ramp_mw = 0.0;
    double reserve_ramp_mw = 0.0;
    // Renewable model fields use RenewablePlant defaults unless overridden.
    std::optional<double> hub_height_m, roughness_m, v_cutin, v_rated, v_cutout;
    std::optional<double> f_shortwave, f_longwave, g_ref_wm2;
};

using GenerationPlan = std::vector<GenerationInvestment>;

GenerationPlan load_generation_plan(const std::string& path);
GenerationPlan parse_generation_plan(const std::string& json_text,
                                     const std::string& origin = "<string>");

// Grid with the planned units appended as new (commission-gated) assets.
GridModel merge_generation_plan(const GridModel& grid, const GenerationPlan& plan);

struct BuiltLine {
    std::string line_id;
    int construction_epoch = 1;
};

enum class InvestmentCase { FR, FGI, FGTI };
std::string to_string(InvestmentCase c);
InvestmentCase investment_case_from_string(const std::string& s);

// The grid as it stands in one epoch: only commissioned units and built lines.
struct EpochView {
    int epoch = 1;  // 1-based
    double base_mva = 100.0;
    PlanningHorizon horizon;
    std::vector<Bus> buses;
    std::vector<TransmissionLine> lines;  // existing + candidates built by now
    std::vector<ThermalGenerator> generators;
    std::vector<RenewablePlant> renewables;
};

struct CaseGrid {
    InvestmentCase kind = InvestmentCase::FR;
    std::vector<EpochView> epochs;
};

// Materializes per-epoch views for the case implied by the plans:
// both empty -> FR, generation only -> FGI, any transmission plan -> FGTI.
CaseGrid apply_investments(const GridModel& grid, const GenerationPlan& gen_plan,
                           const std::vector<BuiltLine>& tep_plan);

// --- inline ----------------------------------------------------------------

inline double to_per_unit(double mw, double base_mva) {
    if (!(base_mva > 0.0)) throw std::invalid_argument("nonpositive MVA base");
    return mw / base_mva;
}

inline double from_per_unit(double pu, double base_mva) {
    if (!(base_mva > 0.0)) throw std::invalid_argument("nonpositive MVA base");
    return pu * base_mva;
}

}  // namespace gridplan
