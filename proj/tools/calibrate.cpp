// Calibration sweep for the simulator defaults: runs a config over a block
// of seeds and reports the plateau, growth, cluster-curve and pair-growth
// statistics the default configuration is tuned against.
//
//   levnet_calibrate [--seeds N] [--first-seed S] [--pairs] [key=value ...]

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "levnet/config_io.hpp"
#include "levnet/correlation_network.hpp"
#include "levnet/growth_analysis.hpp"
#include "levnet/interbank_sim.hpp"
#include "levnet/sim_metrics.hpp"

using namespace levnet;

int main(int argc, char** argv) {
    SimConfig config;
    std::size_t seeds = 10;
    std::uint64_t first_seed = 1;
    bool pairs = false;
    for (int k = 1; k < argc; ++k) {
        std::string arg = argv[k];
        if (arg == "--seeds" && k + 1 < argc) {
            seeds = std::stoul(argv[++k]);
        } else if (arg == "--first-seed" && k + 1 < argc) {
            first_seed = std::stoull(argv[++k]);
        } else if (arg == "--pairs") {
            pairs = true;
        } else if (auto eq = arg.find('='); eq != std::string::npos) {
            apply_setting(config, arg.substr(0, eq), arg.substr(eq + 1));
        } else {
            std::fprintf(stderr, "unrecognized argument %s\n", arg.c_str());
            return 1;
        }
    }
    validate(config);

    const auto grid = make_rho_grid(0.0, 1.0, 0.01);
    int ok_level = 0, ok_slope = 0, ok_growth = 0, ok_curve = 0, ok_jump = 0, ok_topo = 0;
    int pair_assets = 0, pair_lev = 0;
    std::printf("seed  plateau   slope      growth  jump@   f(.35) f(.5) f(.65) lc@.8 iso@.8 pairA pairL\n");
    for (std::size_t s = 0; s < seeds; ++s) {
        SimConfig cfg = config;
        cfg.seed = first_seed + s;
        const auto out = run(cfg);
        const auto stats = plateau(out.mean_leverage, std::min<std::size_t>(1000, out.mean_leverage.size()));
        const double growth = out.mean_assets_growth();
        const auto matrix = correlation_matrix(out.leverage);
        const auto curve = cluster_curve(matrix, grid);
        const auto jump = largest_jump(curve);
        const auto topo = topology(matrix, 0.8);
        bool high = false, low_after = false;
        for (std::size_t i = 0; i < curve.size(); ++i) {
            if (curve[i].rho >= 0.35 - 1e-12 && curve[i].largest_fraction >= 0.8) {
                for (std::size_t j = i + 1; j < curve.size(); ++j) {
                    if (curve[j].rho <= 0.65 + 1e-12 && curve[j].largest_fraction <= 0.5) {
                        high = low_after = true;
                    }
                }
            }
        }
        const auto rec = analyze_panel(out.panel);
        ok_level += stats.mean >= 4 && stats.mean <= 8;
        ok_slope += std::fabs(stats.slope) < 0.0005;
        ok_growth += growth >= 3 && growth <= 6;
        ok_curve += high && low_after;
        ok_jump += jump.rho_low >= 0.3 && jump.rho_high <= 0.7;
        ok_topo += topo.largest_fraction >= 0.1 && topo.largest_fraction <= 0.6 && topo.isolated_fraction >= 0.2;
        pair_assets += rec.pair_exceeds_assets_median();
        pair_lev += rec.pair_exceeds_leverage_median();
        std::printf("%4llu  %7.3f  %+.2e  %6.3f  %.2f   %.3f  %.3f %.3f  %.3f %.3f  %d     %d\n",
                    static_cast<unsigned long long>(cfg.seed), stats.mean, stats.slope, growth,
                    jump.rho_low, curve[35].largest_fraction, curve[50].largest_fraction,
                    curve[65].largest_fraction, topo.largest_fraction, topo.isolated_fraction,
                    rec.pair_exceeds_assets_median(), rec.pair_exceeds_leverage_median());
    }
    std::printf("level %d slope %d growth %d curve %d jump %d topo %d pairA %d pairL %d  (of %zu)\n",
                ok_level, ok_slope, ok_growth, ok_curve, ok_jump, ok_topo, pair_assets, pair_lev, seeds);
    if (pairs) {
        const auto study = replication_study(config, 40);
        int a = 0, l = 0;
        for (const auto& rec : study.records) {
            a += rec.pair_exceeds_assets_median();
            l += rec.pair_exceeds_leverage_median();
        }
        std::printf("pair study (40 runs): assets %d leverage %d\n", a, l);
    }
    return 0;
}
