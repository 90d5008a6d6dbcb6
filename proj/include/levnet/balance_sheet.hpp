#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace levnet {

using TimeIndex = std::int64_t;

struct Observation {
    TimeIndex time_index = 0;
    double assets = 0.0;
    double liabilities = 0.0;

    friend bool operator==(const Observation&, const Observation&) = default;
};

/// One bank's balance-sheet history, ordered by time_index.
struct BankSeries {
    std::string bank_id;
    std::vector<Observation> observations;

    friend bool operator==(const BankSeries&, const BankSeries&) = default;
};

/// Throws ValidationError (or DegenerateEquityError) if the series breaks
/// ordering, positivity, or positive-equity rules.
void validate(const BankSeries& series);

/// A collection of banks over a shared grid. The grid is the union of the
/// members' time indices; grid_dates, when present, labels each grid point
/// (ISO dates from ingestion).
struct Panel {
    std::string label;
    std::vector<TimeIndex> grid;
    std::vector<std::string> grid_dates;
    std::vector<BankSeries> members;

    TimeIndex period_start() const;
    TimeIndex period_end() const;

    /// True iff the member has an observation at every grid point.
    bool is_complete(const BankSeries& member) const;

    const BankSeries* find(const std::string& bank_id) const;

    friend bool operator==(const Panel&, const Panel&) = default;
};

/// Builds a panel whose grid is the sorted union of the members' time
/// indices. Members must have distinct ids.
Panel make_panel(std::string label, std::vector<BankSeries> members);

struct LeverageSeries {
    std::string bank_id;
    std::vector<std::pair<TimeIndex, double>> values;

    std::vector<double> ratios() const;
};

struct CensusReport {
    std::size_t n_start = 0;
    std::size_t n_end = 0;
    std::size_t n_birth = 0;
    std::size_t n_death = 0;
    std::size_t n_complete = 0;

    friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

/// Free-form warnings collected by operations that can succeed with caveats.
struct Diagnostics {
    std::vector<std::string> warnings;
};

/// liabilities / (assets - liabilities).
double leverage_of(double assets, double liabilities);

LeverageSeries leverage_series(const BankSeries& series);

std::vector<LeverageSeries> leverage_series(const Panel& panel);

/// Keeps only members observed at every grid point. The grid is unchanged.
/// Pushes a warning into diag when nothing survives.
Panel filter_complete(const Panel& panel, Diagnostics* diag = nullptr);

CensusReport census(const Panel& panel);

enum class CentralStatistic { median, mean };

/// Median of a sample; even counts average the two middle order statistics.
double median_of(std::vector<double> values);

/// Per-grid-point median (or mean) of member leverage. Requires a panel in
/// which every member is complete.
std::vector<std::pair<TimeIndex, double>> central_leverage(const Panel& panel,
                                                           CentralStatistic statistic);

}  // namespace levnet
