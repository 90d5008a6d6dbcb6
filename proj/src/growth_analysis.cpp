#include "levnet/growth_analysis.hpp"

#include <algorithm>

#include "levnet/errors.hpp"

namespace levnet {

CorrelatedPair most_correlated_pair(const CorrelationMatrix& matrix) {
    const std::size_t n = matrix.size();
    bool found = false;
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!matrix.defined(i, j)) {
                continue;
            }
            const double r = matrix.at(i, j);
            if (!found || r > best) {
                found = true;
                best = r;
                best_i = i;
                best_j = j;
            }
        }
    }
    if (!found) {
        throw ComputationError("most_correlated_pair: no defined pairs");
    }
    return {matrix.bank_ids()[best_i], matrix.bank_ids()[best_j], best};
}

GrowthRecord growth_record(const BankSeries& series) {
    if (series.observations.empty()) {
        throw ValidationError("growth_record: bank " + series.bank_id + " has no observations");
    }
    const auto& first = series.observations.front();
    const auto& last = series.observations.back();
    const double lev0 = leverage_of(first.assets, first.liabilities);
    const double lev1 = leverage_of(last.assets, last.liabilities);
    if (lev0 == 0.0) {
        throw ComputationError("growth_record: bank " + series.bank_id + " has zero initial leverage");
    }
    return {series.bank_id, lev1 / lev0, last.assets / first.assets};
}

RunRecord analyze_panel(const Panel& panel) {
    const auto matrix = correlation_matrix(leverage_series(panel));
    RunRecord rec;
    rec.pair = most_correlated_pair(matrix);
    rec.population.reserve(panel.members.size());
    std::vector<double> assets;
    std::vector<double> leverage;
    for (const auto& m : panel.members) {
        rec.population.push_back(growth_record(m));
        assets.push_back(rec.population.back().assets_growth);
        leverage.push_back(rec.population.back().leverage_growth);
        if (m.bank_id == rec.pair.first) {
            rec.first = rec.population.back();
        }
        if (m.bank_id == rec.pair.second) {
            rec.second = rec.population.back();
        }
    }
    rec.median_assets_growth = median_of(std::move(assets));
    rec.median_leverage_growth = median_of(std::move(leverage));
    return rec;
}

RunRecord replicate(const SimConfig& config, std::size_t run_index) {
    SimConfig cfg = config;
    cfg.seed = stream_seed(config.seed, run_index);
    const SimOutput out = run(cfg);
    RunRecord rec = analyze_panel(out.panel);
    rec.run = run_index;
    rec.seed = cfg.seed;
    return rec;
}

ReplicationStudy replication_study(const SimConfig& config, std::size_t runs) {
    if (runs < 1) {
        throw ValidationError("replication_study: runs must be >= 1");
    }
    validate(config);
    ReplicationStudy study;
    study.runs = runs;
    study.base_seed = config.seed;
    study.records.reserve(runs);
    for (std::size_t r = 0; r < runs; ++r) {
        study.records.push_back(replicate(config, r));
    }
    return study;
}

}  // namespace levnet
