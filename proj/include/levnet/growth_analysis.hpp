#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levnet/balance_sheet.hpp"
#include "levnet/correlation_network.hpp"
#include "levnet/interbank_sim.hpp"

namespace levnet {

struct CorrelatedPair {
    std::string first;
    std::string second;
    double r = 0.0;
};

/// Largest defined off-diagonal coefficient. Ties go to the first pair in
/// row-major (i < j) order.
CorrelatedPair most_correlated_pair(const CorrelationMatrix& matrix);

struct GrowthRecord {
    std::string bank_id;
    double leverage_growth = 0.0;  // final / initial
    double assets_growth = 0.0;    // final / initial
};

GrowthRecord growth_record(const BankSeries& series);

struct RunRecord {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    CorrelatedPair pair;
    std::vector<GrowthRecord> population;  // every bank, panel order
    GrowthRecord first;
    GrowthRecord second;
    double median_assets_growth = 0.0;
    double median_leverage_growth = 0.0;

    bool pair_exceeds_assets_median() const {
        return first.assets_growth > median_assets_growth &&
               second.assets_growth > median_assets_growth;
    }
    bool pair_exceeds_leverage_median() const {
        return first.leverage_growth > median_leverage_growth &&
               second.leverage_growth > median_leverage_growth;
    }
};

struct ReplicationStudy {
    std::size_t runs = 0;
    std::uint64_t base_seed = 0;
    std::vector<RunRecord> records;
};

/// Pair and growth statistics for one complete panel.
RunRecord analyze_panel(const Panel& panel);

/// Simulates runs replications; replication r uses stream_seed(config.seed, r).
ReplicationStudy replication_study(const SimConfig& config, std::size_t runs);

/// A single replication, identical to record r of replication_study.
RunRecord replicate(const SimConfig& config, std::size_t run_index);

}  // namespace levnet
