#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levnet/balance_sheet.hpp"

namespace levnet {

/// Marker for a coefficient that is undefined because one of the two
/// series has zero variance.
inline constexpr double undefined_coefficient = std::numeric_limits<double>::quiet_NaN();

inline bool is_defined(double coefficient) { return !std::isnan(coefficient); }

/// Pearson correlation of two equal-length series (length >= 2). Returns
/// undefined_coefficient when either series is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// Symmetric n x n matrix of pairwise coefficients with a unit diagonal.
class CorrelationMatrix {
public:
    CorrelationMatrix() = default;

    /// entries is row-major n x n. Validates symmetry, the unit diagonal,
    /// and the [-1, 1] range of defined entries.
    CorrelationMatrix(std::vector<std::string> bank_ids, std::vector<double> entries);

    std::size_t size() const noexcept { return bank_ids_.size(); }
    const std::vector<std::string>& bank_ids() const noexcept { return bank_ids_; }

    double at(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }
    bool defined(std::size_t i, std::size_t j) const { return is_defined(at(i, j)); }

    std::size_t pair_count() const noexcept { return size() * (size() - (size() > 0 ? 1 : 0)) / 2; }
    std::size_t defined_pair_count() const;

    /// Banks whose series had zero variance (never linked).
    const std::vector<std::string>& constant_banks() const noexcept { return constant_banks_; }
    void set_constant_banks(std::vector<std::string> ids) { constant_banks_ = std::move(ids); }

private:
    std::vector<std::string> bank_ids_;
    std::vector<double> entries_;
    std::vector<std::string> constant_banks_;
};

/// Pairwise Pearson over leverage series sharing one grid.
CorrelationMatrix correlation_matrix(const std::vector<LeverageSeries>& series_set);

enum class LinkMode { signed_value, absolute_value };

struct Edge {
    std::size_t a = 0;  // a < b
    std::size_t b = 0;
    double r = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct LeverageNetwork {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;  // sorted by (a, b)
    double threshold = 0.0;
    LinkMode mode = LinkMode::signed_value;
    std::optional<std::size_t> target_edges;  // requested M for top-M builds

    double average_degree() const {
        return nodes.empty() ? 0.0 : 2.0 * static_cast<double>(edges.size()) / static_cast<double>(nodes.size());
    }
};

/// Links every defined pair with r >= rho (signed) or |r| >= rho (absolute).
LeverageNetwork threshold_network(const CorrelationMatrix& matrix, double rho,
                                  LinkMode mode = LinkMode::signed_value);

/// Round-half-up of avg_degree * n / 2.
std::size_t edges_for_average_degree(double avg_degree, std::size_t n);

/// Links the M largest defined coefficients (signed order). Pairs tied with
/// the M-th coefficient are all linked, so the edge count can exceed M.
/// The resulting threshold is the M-th largest coefficient.
LeverageNetwork top_m_network(const CorrelationMatrix& matrix, std::size_t m);

struct ComponentPartition {
    std::vector<std::size_t> assignment;  // node -> component id
    std::vector<std::size_t> sizes;       // component id -> size
    double largest_fraction = 0.0;

    std::size_t largest_size() const;
    std::size_t isolated_count() const;
};

/// Connected components. Component ids are numbered in order of each
/// component's lowest node index.
ComponentPartition components(const LeverageNetwork& network);
ComponentPartition components(std::size_t n, std::span<const Edge> edges);

struct CurvePoint {
    double rho = 0.0;
    double largest_fraction = 0.0;
};

using ClusterCurve = std::vector<CurvePoint>;

/// Largest-cluster fraction for every threshold in a strictly increasing
/// grid inside [0, 1].
ClusterCurve cluster_curve(const CorrelationMatrix& matrix, std::span<const double> rho_grid,
                           LinkMode mode = LinkMode::signed_value);

/// rho_min, rho_min + step, ... up to rho_max (inclusive within 1e-9),
/// each value rounded to 12 decimals.
std::vector<double> make_rho_grid(double rho_min, double rho_max, double step);

}  // namespace levnet
