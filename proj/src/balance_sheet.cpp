#include "levnet/balance_sheet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "levnet/errors.hpp"

namespace levnet {

double leverage_of(double assets, double liabilities) {
    if (!std::isfinite(assets) || !std::isfinite(liabilities)) {
        throw DomainError("leverage: non-finite balance-sheet value");
    }
    if (assets <= 0.0) {
        throw DomainError("leverage: assets must be positive");
    }
    if (liabilities < 0.0) {
        throw DomainError("leverage: liabilities must be nonnegative");
    }
    if (liabilities >= assets) {
        throw DegenerateEquityError("leverage: liabilities >= assets (non-positive equity)");
    }
    return liabilities / (assets - liabilities);
}

void validate(const BankSeries& series) {
    for (std::size_t k = 0; k < series.observations.size(); ++k) {
        const auto& obs = series.observations[k];
        if (k > 0 && obs.time_index <= series.observations[k - 1].time_index) {
            throw ValidationError("bank " + series.bank_id +
                                  ": time indices not strictly increasing at " +
                                  std::to_string(obs.time_index));
        }
        if (!std::isfinite(obs.assets) || obs.assets <= 0.0) {
            throw DomainError("bank " + series.bank_id + ": non-positive assets at time " +
                              std::to_string(obs.time_index));
        }
        if (!std::isfinite(obs.liabilities) || obs.liabilities < 0.0) {
            throw DomainError("bank " + series.bank_id + ": negative liabilities at time " +
                              std::to_string(obs.time_index));
        }
        if (obs.liabilities >= obs.assets) {
            throw DegenerateEquityError("bank " + series.bank_id +
                                            ": liabilities >= assets at time " +
                                            std::to_string(obs.time_index),
                                        obs.time_index);
        }
    }
}

TimeIndex Panel::period_start() const {
    if (grid.empty()) {
        throw ValidationError("panel has an empty grid");
    }
    return grid.front();
}

TimeIndex Panel::period_end() const {
    if (grid.empty()) {
        throw ValidationError("panel has an empty grid");
    }
    return grid.back();
}

bool Panel::is_complete(const BankSeries& member) const {
    if (member.observations.size() != grid.size()) {
        return false;
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (member.observations[k].time_index != grid[k]) {
            return false;
        }
    }
    return true;
}

const BankSeries* Panel::find(const std::string& bank_id) const {
    auto it = std::find_if(members.begin(), members.end(),
                           [&](const BankSeries& m) { return m.bank_id == bank_id; });
    return it == members.end() ? nullptr : &*it;
}

Panel make_panel(std::string label, std::vector<BankSeries> members) {
    std::set<std::string> ids;
    std::set<TimeIndex> times;
    for (const auto& m : members) {
        if (!ids.insert(m.bank_id).second) {
            throw ValidationError("duplicate bank id in panel: " + m.bank_id);
        }
        for (const auto& obs : m.observations) {
            times.insert(obs.time_index);
        }
    }
    Panel panel;
    panel.label = std::move(label);
    panel.grid.assign(times.begin(), times.end());
    panel.members = std::move(members);
    return panel;
}

std::vector<double> LeverageSeries::ratios() const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& [t, lev] : values) {
        out.push_back(lev);
    }
    return out;
}

LeverageSeries leverage_series(const BankSeries& series) {
    LeverageSeries out;
    out.bank_id = series.bank_id;
    out.values.reserve(series.observations.size());
    for (const auto& obs : series.observations) {
        try {
            out.values.emplace_back(obs.time_index, leverage_of(obs.assets, obs.liabilities));
        } catch (const DegenerateEquityError&) {
            throw DegenerateEquityError("bank " + series.bank_id +
                                            ": liabilities >= assets at time " +
                                            std::to_string(obs.time_index),
                                        obs.time_index);
        }
    }
    return out;
}

std::vector<LeverageSeries> leverage_series(const Panel& panel) {
    std::vector<LeverageSeries> out;
    out.reserve(panel.members.size());
    for (const auto& m : panel.members) {
        out.push_back(leverage_series(m));
    }
    return out;
}

Panel filter_complete(const Panel& panel, Diagnostics* diag) {
    if (panel.members.empty()) {
        throw ValidationError("filter_complete: empty panel");
    }
    Panel out;
    out.label = panel.label;
    out.grid = panel.grid;
    out.grid_dates = panel.grid_dates;
    for (const auto& m : panel.members) {
        if (panel.is_complete(m)) {
            out.members.push_back(m);
        }
    }
    if (out.members.empty() && diag != nullptr) {
        diag->warnings.push_back("no complete members in panel '" + panel.label + "'");
    }
    return out;
}

CensusReport census(const Panel& panel) {
    if (panel.members.empty()) {
        throw ValidationError("census: empty panel");
    }
    const TimeIndex start = panel.period_start();
    const TimeIndex end = panel.period_end();
    CensusReport report;
    for (const auto& m : panel.members) {
        if (m.observations.empty()) {
            continue;
        }
        const TimeIndex first = m.observations.front().time_index;
        const TimeIndex last = m.observations.back().time_index;
        report.n_start += first == start ? 1 : 0;
        report.n_end += last == end ? 1 : 0;
        report.n_birth += first > start ? 1 : 0;
        report.n_death += last < end ? 1 : 0;
        report.n_complete += panel.is_complete(m) ? 1 : 0;
    }
    return report;
}

double median_of(std::vector<double> values) {
    if (values.empty()) {
        throw ComputationError("median of an empty sample");
    }
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), values.begin() + mid);
    return 0.5 * (lower + upper);
}

std::vector<std::pair<TimeIndex, double>> central_leverage(const Panel& panel,
                                                           CentralStatistic statistic) {
    for (const auto& m : panel.members) {
        if (!panel.is_complete(m)) {
            throw ValidationError("central_leverage: bank " + m.bank_id +
                                  " is incomplete; filter the panel first");
        }
    }
    const auto levs = leverage_series(panel);
    std::vector<std::pair<TimeIndex, double>> out;
    if (levs.empty()) {
        return out;
    }
    out.reserve(panel.grid.size());
    std::vector<double> column(levs.size());
    for (std::size_t k = 0; k < panel.grid.size(); ++k) {
        for (std::size_t b = 0; b < levs.size(); ++b) {
            column[b] = levs[b].values[k].second;
        }
        double value = 0.0;
        if (statistic == CentralStatistic::median) {
            value = median_of(column);
        } else {
            value = std::accumulate(column.begin(), column.end(), 0.0) /
                    static_cast<double>(column.size());
        }
        out.emplace_back(panel.grid[k], value);
    }
    return out;
}

}  // namespace levnet
