#include "levnet/sim_metrics.hpp"

#include <algorithm>

#include "levnet/errors.hpp"

namespace levnet {

double least_squares_slope(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw ComputationError("least_squares_slope: need at least 2 points");
    }
    const double x_mean = static_cast<double>(n - 1) / 2.0;
    double y_mean = 0.0;
    for (double v : values) {
        y_mean += v;
    }
    y_mean /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = static_cast<double>(k) - x_mean;
        sxy += dx * (values[k] - y_mean);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

PlateauStats plateau(std::span<const double> trace, std::size_t window) {
    if (window < 2 || window > trace.size()) {
        throw ComputationError("plateau: window must be in [2, trace length]");
    }
    const auto tail = trace.last(window);
    PlateauStats stats;
    for (double v : tail) {
        stats.mean += v;
    }
    stats.mean /= static_cast<double>(window);
    stats.slope = least_squares_slope(tail);
    return stats;
}

CurveJump largest_jump(const ClusterCurve& curve) {
    CurveJump jump;
    for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
        const double drop = curve[k].largest_fraction - curve[k + 1].largest_fraction;
        if (k == 0 || drop > jump.size) {
            jump = {curve[k].rho, curve[k + 1].rho, drop};
        }
    }
    return jump;
}

TopologySummary topology(const CorrelationMatrix& matrix, double rho, LinkMode mode) {
    const auto part = components(threshold_network(matrix, rho, mode));
    TopologySummary s;
    s.largest_fraction = part.largest_fraction;
    s.component_count = part.sizes.size();
    s.isolated_fraction = matrix.size() == 0
                              ? 0.0
                              : static_cast<double>(part.isolated_count()) /
                                    static_cast<double>(matrix.size());
    return s;
}

}  // namespace levnet
