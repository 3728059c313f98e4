#include "gridplan/reliability.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "gridplan/csv.hpp"
#include "gridplan/errors.hpp"

namespace gridplan {

namespace {

double day_weight(const PlanningHorizon& h, DayType dt) {
    return dt == DayType::Weekday ? static_cast<double>(h.weekdays_per_quarter)
                                  : static_cast<double>(h.weekend_days_per_quarter);
}

}  // namespace

double eue(const std::vector<SheddingRecord>& records, const PlanningHorizon& h, int epoch) {
    double total = 0.0;
    for (const auto& r : records) {
        if (r.epoch != epoch) continue;
        total += r.shed_mw * h.interval_hours * day_weight(h, r.day_type);
    }
    return total;
}

double lolp(const std::vector<SheddingRecord>& records, const RepresentativeProfileSet& demand,
            const PlanningHorizon& h, int epoch) {
    double demand_energy = 0.0;
    for (const auto& bus : demand.load_bus_ids()) {
        for (int q = 1; q <= h.quarters_per_year; ++q) {
            for (int dt = 0; dt < h.day_types(); ++dt) {
                for (int t = 0; t < h.intervals_per_day; ++t) {
                    demand_energy += demand.load(bus, epoch, q, static_cast<DayType>(dt), t) *
                                     h.interval_hours * day_weight(h, static_cast<DayType>(dt));
                }
            }
        }
    }
    double unserved = eue(records, h, epoch);
    if (unserved == 0.0) return 0.0;
    if (!(demand_energy > 0.0))
        throw ValidationError({"lolp: total demand energy is zero in epoch " +
                               std::to_string(epoch) + " (undefined ratio)"});
    return unserved / demand_energy;
}

double lole(const std::vector<SheddingRecord>& records, const PlanningHorizon& h, int epoch,
            int num_buses) {
    if (num_buses < 1) throw ValidationError({"lole: bus count must be positive"});
    // Shedding hours per (quarter, day-type, bus): count of intervals with
    // shed above the noise threshold, times the interval length.
    std::map<std::tuple<int, int, std::string>, double> hours;
    for (const auto& r : records) {
        if (r.epoch != epoch || r.shed_mw <= kOutageThresholdMw) continue;
        hours[{r.quarter, static_cast<int>(r.day_type), r.bus}] += h.interval_hours;
    }
    double weighted = 0.0;
    for (const auto& [key, hrs] : hours)
        weighted += hrs * day_weight(h, static_cast<DayType>(std::get<1>(key)));
    return weighted / (static_cast<double>(num_buses) * h.years_per_epoch);
}

ReliabilityReport make_report(InvestmentCase kind, const std::vector<SheddingRecord>& records,
                              const RepresentativeProfileSet& demand, const PlanningHorizon& h,
                              int num_buses) {
    ReliabilityReport report;
    report.kind = kind;
    for (int p = 1; p <= h.num_epochs; ++p) {
        EpochReliability e;
        e.epoch = p;
        e.eue_mwh = eue(records, h, p);
        e.eue_mwh_annual = e.eue_mwh / h.years_per_epoch;
        e.lolp_value = lolp(records, demand, h, p);
        e.lole_hours_per_bus = lole(records, h, p, num_buses);
        e.lole_fraction_8760 = e.lole_hours_per_bus / 8760.0;
        report.epochs.push_back(e);
    }
    return report;
}

CaseComparison compare_cases(const std::vector<ReliabilityReport>& reports) {
    if (reports.empty()) throw ValidationError({"compare_cases: no reports"});
    const std::size_t n_epochs = reports.front().epochs.size();
    for (const auto& r : reports) {
        if (r.epochs.size() != n_epochs)
            throw ValidationError({"compare_cases: reports span different horizons"});
        for (std::size_t i = 0; i < n_epochs; ++i) {
            if (r.epochs[i].epoch != reports.front().epochs[i].epoch)
                throw ValidationError({"compare_cases: epoch labels differ between reports"});
        }
    }
    CaseComparison cmp;
    for (const auto& r : reports) cmp.cases.push_back(r.kind);
    const char* metrics[] = {"eue_mwh_annual", "lolp", "lole_hours_per_bus"};
    for (std::size_t i = 0; i < n_epochs; ++i) {
        for (const char* m : metrics) {
            ComparisonRow row;
            row.epoch = reports.front().epochs[i].epoch;
            row.metric = m;
            for (const auto& r : reports) {
                const auto& e = r.epochs[i];
                double v = row.metric == "eue_mwh_annual" ? e.eue_mwh_annual
                         : row.metric == "lolp" ? e.lolp_value
                                                : e.lole_hours_per_bus;
                row.values.push_back(v);
            }
            cmp.rows.push_back(std::move(row));
        }
    }
    return cmp;
}

void write_reliability_report(const std::vector<ReliabilityReport>& reports,
                              const std::string& path) {
    std::ostringstream os;
    os << "case,epoch,eue_mwh,lolp,lole_hours_per_bus,eue_mwh_epoch_total,lole_fraction_8760\n";
    for (const auto& r : reports) {
        for (const auto& e : r.epochs) {
            os << to_string(r.kind) << ',' << e.epoch << ',' << format_double(e.eue_mwh_annual)
               << ',' << format_double(e.lolp_value) << ','
               << format_double(e.lole_hours_per_bus) << ',' << format_double(e.eue_mwh) << ','
               << format_double(e.lole_fraction_8760) << '\n';
        }
    }
    write_file_atomic(path, os.str());
}

void write_case_comparison(const CaseComparison& cmp, const std::string& path) {
    std::ostringstream os;
    os << "epoch,metric";
    for (auto c : cmp.cases) os << ',' << to_string(c);
    for (std::size_t i = 1; i < cmp.cases.size(); ++i)
        os << ",delta_" << to_string(cmp.cases[i]) << "_vs_" << to_string(cmp.cases.front());
    os << '\n';
    for (const auto& row : cmp.rows) {
        os << row.epoch << ',' << row.metric;
        for (double v : row.values) os << ',' << format_double(v);
        for (std::size_t i = 1; i < row.values.size(); ++i)
            os << ',' << format_double(row.values[i] - row.values.front());
        os << '\n';
    }
    write_file_atomic(path, os.str());
}

}  // namespace gridplan
