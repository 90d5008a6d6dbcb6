#include "levnet/correlation_network.hpp"

#include <algorithm>
#include <numeric>

#include "levnet/errors.hpp"

namespace levnet {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns true if two distinct sets were merged.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (rank_[a] < rank_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        if (rank_[a] == rank_[b]) {
            ++rank_[a];
        }
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

double link_key(double r, LinkMode mode) {
    return mode == LinkMode::absolute_value ? std::fabs(r) : r;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ValidationError("pearson: series lengths differ (" + std::to_string(x.size()) +
                              " vs " + std::to_string(y.size()) + ")");
    }
    if (x.size() < 2) {
        throw ValidationError("pearson: series must have at least 2 points");
    }
    const auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
    };
    if (constant(x) || constant(y)) {
        return undefined_coefficient;
    }
    const double n = static_cast<double>(x.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mean_x += x[k];
        mean_y += y[k];
    }
    mean_x /= n;
    mean_y /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mean_x;
        const double dy = y[k] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        return undefined_coefficient;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> bank_ids, std::vector<double> entries)
    : bank_ids_(std::move(bank_ids)), entries_(std::move(entries)) {
    const std::size_t n = bank_ids_.size();
    if (entries_.size() != n * n) {
        throw ValidationError("correlation matrix: expected " + std::to_string(n * n) +
                              " entries, got " + std::to_string(entries_.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (at(i, i) != 1.0) {
            throw ValidationError("correlation matrix: diagonal entry " + std::to_string(i) +
                                  " is not 1");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = at(i, j);
            const double b = at(j, i);
            const bool same = (is_defined(a) && a == b) || (!is_defined(a) && !is_defined(b));
            if (!same) {
                throw ValidationError("correlation matrix: asymmetric entry (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
            }
            if (is_defined(a) && (a < -1.0 || a > 1.0)) {
                throw ValidationError("correlation matrix: entry outside [-1, 1]");
            }
        }
    }
}

std::size_t CorrelationMatrix::defined_pair_count() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            count += defined(i, j) ? 1 : 0;
        }
    }
    return count;
}

CorrelationMatrix correlation_matrix(const std::vector<LeverageSeries>& series_set) {
    const std::size_t n = series_set.size();
    if (n < 2) {
        throw ValidationError("correlation_matrix: need at least 2 banks");
    }
    const auto& reference = series_set.front().values;
    std::vector<std::vector<double>> columns;
    columns.reserve(n);
    std::vector<std::string> ids;
    ids.reserve(n);
    for (const auto& s : series_set) {
        if (s.values.size() != reference.size()) {
            throw ValidationError("correlation_matrix: bank " + s.bank_id +
                                  " has a different grid length");
        }
        for (std::size_t k = 0; k < reference.size(); ++k) {
            if (s.values[k].first != reference[k].first) {
                throw ValidationError("correlation_matrix: bank " + s.bank_id +
                                      " is not on the shared grid");
            }
        }
        columns.push_back(s.ratios());
        ids.push_back(s.bank_id);
    }

    std::vector<std::string> constant;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = columns[i];
        if (std::all_of(c.begin(), c.end(), [&](double v) { return v == c.front(); })) {
            constant.push_back(ids[i]);
        }
    }

    std::vector<double> entries(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = pearson(columns[i], columns[j]);
            entries[i * n + j] = r;
            entries[j * n + i] = r;
        }
    }
    CorrelationMatrix matrix(std::move(ids), std::move(entries));
    matrix.set_constant_banks(std::move(constant));
    return matrix;
}

LeverageNetwork threshold_network(const CorrelationMatrix& matrix, double rho, LinkMode mode) {
    LeverageNetwork net;
    net.nodes = matrix.bank_ids();
    net.threshold = rho;
    net.mode = mode;
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = matrix.at(i, j);
            if (is_defined(r) && link_key(r, mode) >= rho) {
                net.edges.push_back({i, j, r});
            }
        }
    }
    return net;
}

std::size_t edges_for_average_degree(double avg_degree, std::size_t n) {
    if (!(avg_degree >= 0.0)) {
        throw ValidationError("average degree must be nonnegative");
    }
    return static_cast<std::size_t>(std::floor(avg_degree * static_cast<double>(n) / 2.0 + 0.5));
}

LeverageNetwork top_m_network(const CorrelationMatrix& matrix, std::size_t m) {
    if (m > matrix.pair_count()) {
        throw ValidationError("top_m_network: M = " + std::to_string(m) + " exceeds " +
                              std::to_string(matrix.pair_count()) + " pairs");
    }
    std::vector<double> coefficients;
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (matrix.defined(i, j)) {
                coefficients.push_back(matrix.at(i, j));
            }
        }
    }
    if (m > coefficients.size()) {
        throw ComputationError("top_m_network: only " + std::to_string(coefficients.size()) +
                               " defined pairs for M = " + std::to_string(m));
    }
    if (m == 0) {
        LeverageNetwork empty;
        empty.nodes = matrix.bank_ids();
        empty.threshold = std::numeric_limits<double>::infinity();
        empty.target_edges = 0;
        return empty;
    }
    std::nth_element(coefficients.begin(), coefficients.begin() + static_cast<std::ptrdiff_t>(m - 1),
                     coefficients.end(), std::greater<>());
    const double cutoff = coefficients[m - 1];
    LeverageNetwork net = threshold_network(matrix, cutoff, LinkMode::signed_value);
    net.target_edges = m;
    return net;
}

std::size_t ComponentPartition::largest_size() const {
    return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

std::size_t ComponentPartition::isolated_count() const {
    return static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), std::size_t{1}));
}

ComponentPartition components(std::size_t n, std::span<const Edge> edges) {
    DisjointSets sets(n);
    for (const auto& e : edges) {
        if (e.a >= n || e.b >= n) {
            throw ValidationError("components: edge endpoint out of range");
        }
        sets.unite(e.a, e.b);
    }
    ComponentPartition part;
    part.assignment.assign(n, 0);
    std::vector<std::size_t> root_to_id(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t root = sets.find(v);
        if (root_to_id[root] == n) {
            root_to_id[root] = part.sizes.size();
            part.sizes.push_back(0);
        }
        part.assignment[v] = root_to_id[root];
        ++part.sizes[root_to_id[root]];
    }
    part.largest_fraction =
        n == 0 ? 0.0 : static_cast<double>(part.largest_size()) / static_cast<double>(n);
    return part;
}

ComponentPartition components(const LeverageNetwork& network) {
    return components(network.nodes.size(), network.edges);
}

ClusterCurve cluster_curve(const CorrelationMatrix& matrix, std::span<const double> rho_grid,
                           LinkMode mode) {
    for (std::size_t k = 0; k < rho_grid.size(); ++k) {
        if (!(rho_grid[k] >= 0.0 && rho_grid[k] <= 1.0)) {
            throw ValidationError("cluster_curve: thresholds must lie in [0, 1]");
        }
        if (k > 0 && !(rho_grid[k] > rho_grid[k - 1])) {
            throw ValidationError("cluster_curve: thresholds must be strictly increasing");
        }
    }
    const std::size_t n = matrix.size();
    std::vector<Edge> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (matrix.defined(i, j)) {
                pairs.push_back({i, j, link_key(matrix.at(i, j), mode)});
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Edge& x, const Edge& y) { return x.r > y.r; });

    // Sweep thresholds from high to low, adding edges as they qualify.
    ClusterCurve curve(rho_grid.size());
    DisjointSets sets(n);
    std::vector<std::size_t> size_of(n, 1);
    std::size_t largest = n > 0 ? 1 : 0;
    std::size_t next = 0;
    for (std::size_t k = rho_grid.size(); k-- > 0;) {
        const double rho = rho_grid[k];
        while (next < pairs.size() && pairs[next].r >= rho) {
            const std::size_t ra = sets.find(pairs[next].a);
            const std::size_t rb = sets.find(pairs[next].b);
            if (ra != rb) {
                sets.unite(ra, rb);
                const std::size_t root = sets.find(ra);
                size_of[root] = size_of[ra] + size_of[rb];
                largest = std::max(largest, size_of[root]);
            }
            ++next;
        }
        curve[k].rho = rho;
        curve[k].largest_fraction =
            n == 0 ? 0.0 : static_cast<double>(largest) / static_cast<double>(n);
    }
    return curve;
}

std::vector<double> make_rho_grid(double rho_min, double rho_max, double step) {
    if (!(step > 0.0) || !(rho_min >= 0.0) || !(rho_max <= 1.0) || !(rho_min < rho_max)) {
        throw ValidationError("rho grid: need 0 <= rho_min < rho_max <= 1 and step > 0");
    }
    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        const double value = rho_min + static_cast<double>(k) * step;
        if (value > rho_max + 1e-9) {
            break;
        }
        grid.push_back(std::min(std::round(value * 1e12) / 1e12, 1.0));
    }
    return grid;
}

}  // namespace levnet
