#include "levnet/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>

#include "levnet/config_io.hpp"
#include "levnet/errors.hpp"
#include "levnet/number_format.hpp"
#include "levnet/sim_metrics.hpp"

namespace levnet::cli {

using nlohmann::json;

namespace {

const char* mode_name(LinkMode mode) {
    return mode == LinkMode::absolute_value ? "absolute" : "signed";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json census_json(const CensusReport& c) {
    return {{"n_start", c.n_start},   {"n_end", c.n_end},          {"n_birth", c.n_birth},
            {"n_death", c.n_death},   {"n_complete", c.n_complete}};
}

void require_complete(const Panel& panel) {
    if (panel.members.size() < 2) {
        throw ValidationError("need at least 2 complete banks, found " +
                              std::to_string(panel.members.size()));
    }
    for (const auto& m : panel.members) {
        if (!panel.is_complete(m)) {
            throw ValidationError("bank " + m.bank_id + " is incomplete");
        }
    }
}

}  // namespace

std::string ingest_report_json(const IngestResult& result) {
    json dropped = json::array();
    for (const auto& d : result.report.dropped) {
        dropped.push_back({{"bank_id", d.bank_id}, {"line", d.line}, {"reason", d.reason}});
    }
    json j = {
        {"rows", result.report.rows},
        {"banks_retained", result.panel.members.size()},
        {"grid_points", result.panel.grid.size()},
        {"census", census_json(result.census)},
        {"dropped", dropped},
        {"mixed_frequency", result.report.mixed_frequency},
        {"warnings", result.report.warnings},
    };
    if (!result.panel.grid_dates.empty()) {
        j["period_start"] = result.panel.grid_dates.front();
        j["period_end"] = result.panel.grid_dates.back();
    }
    return dump(j);
}

NetworkOutputs network_outputs(const Panel& complete, const NetworkRequest& request) {
    const int chosen = (request.rho ? 1 : 0) + (request.avg_degree ? 1 : 0) + (request.edges ? 1 : 0);
    if (chosen != 1) {
        throw ValidationError("choose exactly one of --rho, --avg-degree, --edges");
    }
    if (request.rho && !(*request.rho >= 0.0 && *request.rho <= 1.0)) {
        throw ValidationError("--rho must lie in [0, 1]");
    }
    if (!request.rho && request.mode == LinkMode::absolute_value) {
        throw ValidationError("top-M networks rank signed coefficients; use --rho with absolute mode");
    }
    require_complete(complete);
    const auto matrix = correlation_matrix(leverage_series(complete));
    const std::size_t n = matrix.size();

    LeverageNetwork net;
    if (request.rho) {
        net = threshold_network(matrix, *request.rho, request.mode);
    } else {
        const std::size_t m =
            request.edges ? *request.edges : edges_for_average_degree(*request.avg_degree, n);
        net = top_m_network(matrix, m);
    }
    const auto part = components(net);

    NetworkOutputs out;
    std::ostringstream edges;
    edges << "bank_a,bank_b,r\n";
    for (const auto& e : net.edges) {
        edges << csv_escape(net.nodes[e.a]) << ',' << csv_escape(net.nodes[e.b]) << ','
              << format_double(e.r) << '\n';
    }
    out.edges_csv = edges.str();

    std::ostringstream comps;
    comps << "bank_id,component_id,component_size\n";
    for (std::size_t v = 0; v < n; ++v) {
        comps << csv_escape(net.nodes[v]) << ',' << part.assignment[v] << ','
              << part.sizes[part.assignment[v]] << '\n';
    }
    out.components_csv = comps.str();

    json summary = {
        {"n", n},
        {"edges", net.edges.size()},
        {"average_degree", net.average_degree()},
        {"mode", mode_name(net.mode)},
        {"largest_fraction", part.largest_fraction},
        {"largest_size", part.largest_size()},
        {"components", part.sizes.size()},
        {"isolated", part.isolated_count()},
        {"defined_pairs", matrix.defined_pair_count()},
        {"constant_banks", matrix.constant_banks()},
    };
    summary["threshold"] = std::isfinite(net.threshold) ? json(net.threshold) : json(nullptr);
    if (net.target_edges) {
        summary["target_edges"] = *net.target_edges;
    }
    if (request.avg_degree) {
        summary["requested_average_degree"] = *request.avg_degree;
    }
    out.summary_json = dump(summary);
    return out;
}

std::string curve_csv(const Panel& complete, const CurveRequest& request) {
    const auto grid = make_rho_grid(request.rho_min, request.rho_max, request.rho_step);
    require_complete(complete);
    const auto matrix = correlation_matrix(leverage_series(complete));
    const auto curve = cluster_curve(matrix, grid, request.mode);
    std::ostringstream out;
    out << "rho,largest_fraction\n";
    for (const auto& p : curve) {
        out << format_double(p.rho) << ',' << format_double(p.largest_fraction) << '\n';
    }
    return out.str();
}

SimulationOutputs simulation_outputs(const SimOutput& output) {
    SimulationOutputs out;
    std::ostringstream panel;
    write_panel_csv(panel, output.panel);
    out.panel_csv = panel.str();

    std::ostringstream adjacency;
    adjacency << "period,lender_id,borrower_id,amount\n";
    for (const auto& l : output.adjacency.links) {
        adjacency << l.period << ',' << sim_bank_id(l.lender) << ',' << sim_bank_id(l.borrower) << ','
                  << format_double(l.amount) << '\n';
    }
    out.adjacency_csv = adjacency.str();

    std::ostringstream events;
    events << "period,event,bank_id,counterparty_id,amount,borrowed\n";
    std::map<EventKind, std::size_t> counts;
    for (const auto& e : output.events) {
        ++counts[e.kind];
        events << e.period << ',' << to_string(e.kind) << ',' << sim_bank_id(e.bank) << ','
               << (e.counterparty ? sim_bank_id(*e.counterparty) : std::string()) << ','
               << format_double(e.amount) << ',' << format_double(e.borrowed) << '\n';
    }
    out.events_csv = events.str();

    const std::size_t window = std::min<std::size_t>(1000, output.mean_leverage.size());
    json summary = {
        {"seed", output.config.seed},
        {"n_banks", output.config.n_banks},
        {"n_periods", output.config.n_periods},
        {"final_mean_leverage", output.mean_leverage.back()},
        {"initial_mean_leverage", output.mean_leverage.front()},
        {"mean_assets_growth", output.mean_assets_growth()},
        {"loans_granted", counts[EventKind::loan_granted]},
        {"loans_failed", counts[EventKind::loan_failed]},
        {"interbank_loans", output.adjacency.links.size()},
        {"shocks", counts[EventKind::shock]},
        {"repayments", counts[EventKind::repayment]},
    };
    if (window >= 2) {
        const auto stats = plateau(output.mean_leverage, window);
        summary["plateau_window"] = window;
        summary["plateau_mean_leverage"] = stats.mean;
        summary["plateau_slope"] = stats.slope;
    }
    out.summary_json = dump(summary);
    return out;
}

std::string study_csv(const ReplicationStudy& study) {
    std::ostringstream out;
    out << "run,bank_id,role,leverage_growth,assets_growth,population_median_assets_growth,"
           "population_median_leverage_growth\n";
    for (const auto& rec : study.records) {
        for (const auto& g : rec.population) {
            const char* role = g.bank_id == rec.pair.first    ? "pair1"
                               : g.bank_id == rec.pair.second ? "pair2"
                                                               : "population";
            out << rec.run << ',' << csv_escape(g.bank_id) << ',' << role << ','
                << format_double(g.leverage_growth) << ',' << format_double(g.assets_growth) << ','
                << format_double(rec.median_assets_growth) << ','
                << format_double(rec.median_leverage_growth) << '\n';
        }
    }
    return out.str();
}

namespace {

struct IngestFlags {
    std::string input;
    std::string mode = "strict";
    ColumnMapping columns;

    void attach(CLI::App* cmd) {
        cmd->add_option("--input,-i", input, "Balance-sheet CSV (bank_id,date,assets,liabilities)")
            ->required();
        cmd->add_option("--mode", mode, "Validation mode")
            ->check(CLI::IsMember({"strict", "lenient"}));
        cmd->add_option("--col-bank-id", columns.bank_id, "Bank id column name");
        cmd->add_option("--col-date", columns.date, "Date column name");
        cmd->add_option("--col-assets", columns.assets, "Assets column name");
        cmd->add_option("--col-liabilities", columns.liabilities, "Liabilities column name");
    }

    IngestResult load() const {
        IngestSpec spec;
        spec.input = input;
        spec.columns = columns;
        spec.mode = mode == "lenient" ? ValidationMode::lenient : ValidationMode::strict;
        return ingest(spec);
    }
};

LinkMode parse_link_mode(const std::string& s) {
    return s == "absolute" ? LinkMode::absolute_value : LinkMode::signed_value;
}

struct SimFlags {
    std::string config_path;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> overrides;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config,-c", config_path, "Flat key = value config file");
        cmd->add_option("--seed", seed, "Base RNG seed")->required();
        for (const auto& key : sim_config_keys()) {
            if (key == "seed") {
                continue;
            }
            cmd->add_option("--" + key, overrides[key], "Override config field " + key);
        }
    }

    SimConfig resolve() const {
        SimConfig config;
        if (!config_path.empty()) {
            config = load_sim_config(config_path);
        }
        for (const auto& [key, value] : overrides) {
            if (!value.empty()) {
                apply_setting(config, key, value);
            }
        }
        config.seed = seed;
        validate(config);
        return config;
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Leverage-dependence networks and interbank loan simulation", "levnet"};
    app.require_subcommand(1);

    // ingest
    IngestFlags ingest_flags;
    std::string ingest_out;
    std::string ingest_report;
    auto* ingest_cmd = app.add_subcommand("ingest", "Validate a balance-sheet CSV and keep complete banks");
    ingest_flags.attach(ingest_cmd);
    ingest_cmd->add_option("--out,-o", ingest_out, "Complete-member panel CSV")->required();
    ingest_cmd->add_option("--report", ingest_report, "Validation report JSON");

    // network
    IngestFlags network_flags;
    std::optional<double> net_rho;
    std::optional<double> net_degree;
    std::optional<std::size_t> net_edges;
    std::string net_mode = "signed";
    std::string net_out;
    auto* network_cmd = app.add_subcommand("network", "Threshold or top-M leverage correlation network");
    network_flags.attach(network_cmd);
    network_cmd->add_option("--rho", net_rho, "Correlation threshold");
    network_cmd->add_option("--avg-degree", net_degree, "Target average degree <k> = 2M/n");
    network_cmd->add_option("--edges", net_edges, "Target edge count M");
    network_cmd->add_option("--link-mode", net_mode, "Link rule")
        ->check(CLI::IsMember({"signed", "absolute"}));
    network_cmd->add_option("--out-dir,-o", net_out, "Directory for edges.csv, components.csv, summary.json")
        ->required();

    // curve
    IngestFlags curve_flags;
    CurveRequest curve_req;
    std::string curve_mode = "signed";
    std::string curve_out;
    auto* curve_cmd = app.add_subcommand("curve", "Largest-cluster fraction over a threshold grid");
    curve_flags.attach(curve_cmd);
    curve_cmd->add_option("--rho-min", curve_req.rho_min, "First threshold");
    curve_cmd->add_option("--rho-max", curve_req.rho_max, "Last threshold");
    curve_cmd->add_option("--rho-step", curve_req.rho_step, "Grid step");
    curve_cmd->add_option("--link-mode", curve_mode, "Link rule")
        ->check(CLI::IsMember({"signed", "absolute"}));
    curve_cmd->add_option("--out,-o", curve_out, "Curve CSV")->required();

    // simulate
    SimFlags sim_flags;
    std::string sim_out;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run the interbank loan model");
    sim_flags.attach(simulate_cmd);
    simulate_cmd->add_option("--out-dir,-o", sim_out,
                             "Directory for panel.csv, adjacency.csv, events.csv, summary.json")
        ->required();

    // study
    SimFlags study_flags;
    std::size_t study_runs = 40;
    std::string study_out;
    auto* study_cmd = app.add_subcommand("study", "Most-correlated-pair growth over replications");
    study_flags.attach(study_cmd);
    study_cmd->add_option("--runs", study_runs, "Number of replications");
    study_cmd->add_option("--out,-o", study_out, "Study CSV")->required();

    // defaults
    auto* defaults_cmd = app.add_subcommand("defaults", "Print the built-in simulation config");

    std::vector<const char*> argv;
    argv.push_back("levnet");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*ingest_cmd) {
            const auto result = ingest_flags.load();
            std::ostringstream panel;
            write_panel_csv(panel, result.complete);
            write_text_file(ingest_out, panel.str());
            const std::string report = ingest_report_json(result);
            if (!ingest_report.empty()) {
                write_text_file(ingest_report, report);
            }
            std::cout << report;
        } else if (*network_cmd) {
            const auto result = network_flags.load();
            NetworkRequest req{net_rho, net_degree, net_edges, parse_link_mode(net_mode)};
            const auto out = network_outputs(result.complete, req);
            const std::filesystem::path dir = net_out;
            write_text_file(dir / "edges.csv", out.edges_csv);
            write_text_file(dir / "components.csv", out.components_csv);
            write_text_file(dir / "summary.json", out.summary_json);
            std::cout << out.summary_json;
        } else if (*curve_cmd) {
            curve_req.mode = parse_link_mode(curve_mode);
            const auto result = curve_flags.load();
            write_text_file(curve_out, curve_csv(result.complete, curve_req));
        } else if (*simulate_cmd) {
            const SimConfig config = sim_flags.resolve();
            const auto out = simulation_outputs(run(config));
            const std::filesystem::path dir = sim_out;
            write_text_file(dir / "panel.csv", out.panel_csv);
            write_text_file(dir / "adjacency.csv", out.adjacency_csv);
            write_text_file(dir / "events.csv", out.events_csv);
            write_text_file(dir / "summary.json", out.summary_json);
            std::cout << out.summary_json;
        } else if (*study_cmd) {
            const SimConfig config = study_flags.resolve();
            write_text_file(study_out, study_csv(replication_study(config, study_runs)));
        } else if (*defaults_cmd) {
            std::cout << format_sim_config(SimConfig{});
        }
    } catch (const ValidationError& e) {
        std::cerr << "levnet: validation error: " << e.what() << '\n';
        return exit_validation;
    } catch (const IoError& e) {
        std::cerr << "levnet: I/O error: " << e.what() << '\n';
        return exit_io;
    } catch (const ComputationError& e) {
        std::cerr << "levnet: computation error: " << e.what() << '\n';
        return exit_computation;
    }
    return exit_ok;
}

}  // namespace levnet::cli
