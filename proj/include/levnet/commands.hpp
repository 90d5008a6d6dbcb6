#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "levnet/correlation_network.hpp"
#include "levnet/growth_analysis.hpp"
#include "levnet/interbank_sim.hpp"
#include "levnet/panel_io.hpp"

namespace levnet::cli {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,        // bad command line
    exit_validation = 2,   // invalid data or configuration
    exit_io = 3,           // unreadable input or unwritable output
    exit_computation = 4,  // no defined result (e.g. too few defined pairs)
};

/// JSON report for an ingestion: census, dropped banks, warnings.
std::string ingest_report_json(const IngestResult& result);

struct NetworkRequest {
    std::optional<double> rho;
    std::optional<double> avg_degree;
    std::optional<std::size_t> edges;
    LinkMode mode = LinkMode::signed_value;
};

struct NetworkOutputs {
    std::string edges_csv;       // bank_a,bank_b,r
    std::string components_csv;  // bank_id,component_id,component_size
    std::string summary_json;
};

/// Correlation network of a complete panel's leverage series. Exactly one
/// of rho, avg_degree, edges must be set; top-M builds are signed only.
NetworkOutputs network_outputs(const Panel& complete, const NetworkRequest& request);

struct CurveRequest {
    double rho_min = 0.0;
    double rho_max = 1.0;
    double rho_step = 0.01;
    LinkMode mode = LinkMode::signed_value;
};

/// `rho,largest_fraction` rows for a complete panel.
std::string curve_csv(const Panel& complete, const CurveRequest& request);

struct SimulationOutputs {
    std::string panel_csv;
    std::string adjacency_csv;  // period,lender_id,borrower_id,amount
    std::string events_csv;     // period,event,bank_id,counterparty_id,amount,borrowed
    std::string summary_json;
};

SimulationOutputs simulation_outputs(const SimOutput& output);

/// One row per bank per run; the most correlated pair is tagged pair1 and
/// pair2, every other bank population.
std::string study_csv(const ReplicationStudy& study);

/// Full command-line entry point; returns an ExitCode.
int run_cli(const std::vector<std::string>& args);

}  // namespace levnet::cli
