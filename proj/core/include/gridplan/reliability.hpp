#pragma once

#include <string>
#include <vector>

#include "gridplan/grid_model.hpp"
#include "gridplan/profile_synthesis.hpp"

namespace gridplan {

struct SheddingRecord {
    int epoch = 1;
    int quarter = 1;
    DayType day_type = DayType::Weekday;
    std::string bus;
    int interval = 0;
    double shed_mw = 0.0;
};

// Shed below this is solver noise, not an outage.
inline constexpr double kOutageThresholdMw = 1e-6;

// Unserved energy over one epoch's representative year set, day-count
// weighted: sum shed * dt * N^D (weekdays) + sum shed * dt * N^E (weekends).
double eue(const std::vector<SheddingRecord>& records, const PlanningHorizon& horizon, int epoch);

// Energy ratio: eue / total demand energy over the same scope.  Errors on
// zero demand.
double lolp(const std::vector<SheddingRecord>& records, const RepresentativeProfileSet& demand,
            const PlanningHorizon& horizon, int epoch);

// Outage duration per bus per year: shedding-interval hours, day-count
// weighted, divided by (bus count * years per epoch).
double lole(const std::vector<SheddingRecord>& records, const PlanningHorizon& horizon, int epoch,
            int num_buses);

struct EpochReliability {
    int epoch = 1;
    double eue_mwh = 0.0;          // per representative year set (raw)
    double eue_mwh_annual = 0.0;   // divided by years per epoch
    double lolp_value = 0.0;
    double lole_hours_per_bus = 0.0;
    double lole_fraction_8760 = 0.0;  // alternative normalization
};

struct ReliabilityReport {
    InvestmentCase kind = InvestmentCase::FR;
    std::vector<EpochReliability> epochs;
};

ReliabilityReport make_report(InvestmentCase kind, const std::vector<SheddingRecord>& records,
                              const RepresentativeProfileSet& demand,
                              const PlanningHorizon& horizon, int num_buses);

// Side-by-side table over the cases present, plus deltas against the first.
struct ComparisonRow {
    int epoch = 1;
    std::string metric;  // eue_mwh_annual | lolp | lole_hours_per_bus
    std::vector<double> values;  // one per case, report order
};

struct CaseComparison {
    std::vector<InvestmentCase> cases;
    std::vector<ComparisonRow> rows;
};

// Errors when the reports span different epoch sets.
CaseComparison compare_cases(const std::vector<ReliabilityReport>& reports);

// Report file: case,epoch,eue_mwh,lolp,lole_hours_per_bus (annualized values,
// raw totals appended as extra columns).
void write_reliability_report(const std::vector<ReliabilityReport>& reports,
                              const std::string& path);
void write_case_comparison(const CaseComparison& comparison, const std::string& path);

}  // namespace gridplan
