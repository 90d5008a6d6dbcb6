#pragma once

#include <span>

#include "levnet/correlation_network.hpp"

namespace levnet {

/// Ordinary least-squares slope of values against their index.
double least_squares_slope(std::span<const double> values);

struct PlateauStats {
    double mean = 0.0;
    double slope = 0.0;  // per period
};

/// Mean and OLS slope over the last `window` entries of a trace.
PlateauStats plateau(std::span<const double> trace, std::size_t window);

struct CurveJump {
    double rho_low = 0.0;   // lower end of the grid step with the largest change
    double rho_high = 0.0;
    double size = 0.0;      // largest_fraction(rho_low) - largest_fraction(rho_high)
};

/// The single grid step over which the largest-cluster fraction drops most.
/// Ties resolve to the lowest rho.
CurveJump largest_jump(const ClusterCurve& curve);

struct TopologySummary {
    double largest_fraction = 0.0;
    double isolated_fraction = 0.0;
    std::size_t component_count = 0;
};

TopologySummary topology(const CorrelationMatrix& matrix, double rho,
                         LinkMode mode = LinkMode::signed_value);

}  // namespace levnet
