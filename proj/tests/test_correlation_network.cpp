#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "levnet/correlation_network.hpp"
#include "levnet/errors.hpp"
#include "levnet/sim_metrics.hpp"
#include "oracles.hpp"

using namespace levnet;

namespace {

std::vector<double> random_series(std::mt19937_64& gen, std::size_t n) {
    std::normal_distribution<double> z;
    std::vector<double> v(n);
    for (auto& x : v) x = z(gen);
    return v;
}

// Random symmetric matrix from a few shared factors, so coefficients span
// a useful range; some banks are optionally constant (undefined rows).
CorrelationMatrix random_matrix(std::mt19937_64& gen, std::size_t n, bool with_constant) {
    const std::size_t len = 30;
    std::vector<std::vector<double>> factors;
    for (int f = 0; f < 3; ++f) factors.push_back(random_series(gen, len));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<LeverageSeries> set;
    for (std::size_t i = 0; i < n; ++i) {
        LeverageSeries s;
        s.bank_id = "b" + std::to_string(i);
        const auto noise = random_series(gen, len);
        const double w0 = u(gen), w1 = u(gen), w2 = u(gen), wn = 0.2 + std::fabs(u(gen));
        const bool flat = with_constant && gen() % 7 == 0;
        for (std::size_t t = 0; t < len; ++t) {
            const double x = flat ? 1.0 : 5 + w0 * factors[0][t] + w1 * factors[1][t] + w2 * factors[2][t] + wn * noise[t];
            s.values.emplace_back(static_cast<TimeIndex>(t), x);
        }
        set.push_back(std::move(s));
    }
    return correlation_matrix(set);
}

std::vector<std::pair<std::size_t, std::size_t>> edge_pairs(const LeverageNetwork& net) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& e : net.edges) out.emplace_back(e.a, e.b);
    return out;
}

LeverageSeries lev(std::string id, std::vector<double> v) {
    LeverageSeries s;
    s.bank_id = std::move(id);
    for (std::size_t t = 0; t < v.size(); ++t) s.values.emplace_back(static_cast<TimeIndex>(t), v[t]);
    return s;
}

}  // namespace

TEST_CASE("pearson basics") {
    const std::vector<double> x = {1, 4, 2, 8, 5, 7};
    std::vector<double> y;
    for (double v : x) y.push_back(-v + 3);
    CHECK(pearson(x, x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pearson(x, y) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK_FALSE(is_defined(pearson(x, std::vector<double>(6, 2.0))));
    CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), ValidationError);
    CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}), ValidationError);
}

TEST_CASE("pearson matches the direct formula and its symmetries") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 2 + gen() % 59;
        const auto x = random_series(gen, n);
        auto y = random_series(gen, n);
        for (std::size_t i = 0; i < n; ++i) y[i] += 0.5 * x[i];
        const double r = pearson(x, y);
        CHECK(std::fabs(r - oracle::pearson(x, y)) <= 1e-12);
        CHECK(r == pearson(y, x));
        const double a = 0.1 + std::fabs(u(gen)), b = u(gen);
        std::vector<double> ax, nx;
        for (double v : x) {
            ax.push_back(a * v + b);
            nx.push_back(-a * v + b);
        }
        CHECK(std::fabs(pearson(ax, y) - r) <= 1e-12);
        CHECK(std::fabs(pearson(nx, y) + r) <= 1e-12);
    }
}

TEST_CASE("CorrelationMatrix construction") {
    CHECK_THROWS_AS(CorrelationMatrix({"a", "b"}, {1, 0.5, 0.4, 1}), ValidationError);
    CHECK_THROWS_AS(CorrelationMatrix({"a", "b"}, {0.9, 0.5, 0.5, 1}), ValidationError);
    CHECK_THROWS_AS(CorrelationMatrix({"a", "b"}, {1, 1.5, 1.5, 1}), ValidationError);
    CHECK_NOTHROW(CorrelationMatrix({"a", "b"}, {1, undefined_coefficient, undefined_coefficient, 1}));

    const auto same = correlation_matrix({lev("a", {1, 2, 4}), lev("b", {1, 2, 4}), lev("c", {1, 2, 4})});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(same.at(i, j) == doctest::Approx(1.0));

    const auto flat = correlation_matrix({lev("a", {1, 2, 4}), lev("k", {3, 3, 3}), lev("c", {2, 1, 0})});
    CHECK_FALSE(flat.defined(0, 1));
    CHECK(flat.defined(0, 2));
    CHECK(flat.at(1, 1) == 1.0);
    CHECK(flat.constant_banks() == std::vector<std::string>{"k"});
    CHECK(flat.defined_pair_count() == 1);

    LeverageSeries shifted = lev("s", {1, 2, 3});
    shifted.values[2].first = 5;
    CHECK_THROWS_AS(correlation_matrix({lev("a", {1, 2, 4}), shifted}), ValidationError);
    CHECK_THROWS_AS(correlation_matrix({lev("a", {1, 2, 4})}), ValidationError);

    const auto r75 = fixture::ingest_text(fixture::modular75_csv());
    const auto m75 = correlation_matrix(leverage_series(r75.complete));
    CHECK(m75.size() == 75);
    CHECK(m75.pair_count() == 2775);
    CHECK(m75.defined_pair_count() == 2775);
    for (std::size_t i = 0; i < 75; ++i)
        for (std::size_t j = 0; j < 75; ++j) CHECK(m75.at(i, j) == m75.at(j, i));
}

TEST_CASE("threshold_network") {
    const auto m = fixture::abcdef_matrix();
    const auto net = threshold_network(m, 0.8);
    REQUIRE(net.edges.size() == 3);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& e : net.edges) got.emplace(net.nodes[e.a], net.nodes[e.b]);
    CHECK(got == std::set<std::pair<std::string, std::string>>{{"A", "B"}, {"C", "D"}, {"E", "F"}});

    const auto abs_net = threshold_network(m, 0.65, LinkMode::absolute_value);
    CHECK(std::any_of(abs_net.edges.begin(), abs_net.edges.end(),
                      [](const Edge& e) { return e.a == 0 && e.b == 3 && e.r == -0.65; }));
    CHECK(threshold_network(m, 0.85).edges.empty());

    const auto ones = CorrelationMatrix({"a", "b", "c"}, std::vector<double>(9, 1.0));
    CHECK(threshold_network(ones, 0.0).edges.size() == 3);

    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 50; ++rep) {
        const auto rm = random_matrix(gen, 25, true);
        const double r1 = std::uniform_real_distribution<double>(0, 1)(gen);
        const double r2 = std::uniform_real_distribution<double>(r1, 1)(gen);
        for (auto mode : {LinkMode::signed_value, LinkMode::absolute_value}) {
            const auto e1 = edge_pairs(threshold_network(rm, r1, mode));
            const auto e2 = edge_pairs(threshold_network(rm, r2, mode));
            CHECK(std::includes(e1.begin(), e1.end(), e2.begin(), e2.end()));
            for (const auto& e : threshold_network(rm, r1, mode).edges) {
                CHECK(e.a < e.b);
                CHECK(is_defined(e.r));
                CHECK((mode == LinkMode::signed_value ? e.r : std::fabs(e.r)) >= r1);
            }
        }
    }
}

TEST_CASE("top_m_network") {
    CHECK(edges_for_average_degree(2.5, 75) == 94);
    CHECK(edges_for_average_degree(1.0, 3) == 2);  // 1.5 rounds up
    CHECK(edges_for_average_degree(0.0, 10) == 0);

    const auto m = fixture::abcdef_matrix();
    const auto one = top_m_network(m, 1);
    REQUIRE(one.edges.size() == 1);
    CHECK(one.nodes[one.edges[0].a] == "C");
    CHECK(one.nodes[one.edges[0].b] == "D");
    CHECK(one.threshold == 0.84);

    const auto ties = CorrelationMatrix({"a", "b", "c"}, {1, 0.5, 0.5, 0.5, 1, 0.5, 0.5, 0.5, 1});
    const auto tied = top_m_network(ties, 1);
    CHECK(tied.edges.size() == 3);
    CHECK(tied.target_edges == 1u);

    CHECK(top_m_network(m, 0).edges.empty());
    CHECK_THROWS_AS(top_m_network(m, 16), ValidationError);

    std::mt19937_64 gen(29);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + gen() % 40;
        const auto rm = random_matrix(gen, n, false);
        const std::size_t k = gen() % (rm.pair_count() + 1);
        CHECK(edge_pairs(top_m_network(rm, k)) == oracle::top_m(rm, k));
        if (k == rm.pair_count() && k > 0) {
            const auto all = top_m_network(rm, k);
            CHECK(edge_pairs(all) == edge_pairs(threshold_network(rm, all.threshold)));
        }
    }

    const auto with_flat = CorrelationMatrix({"a", "b", "c"}, {1, 0.3, undefined_coefficient, 0.3, 1,
                                                               undefined_coefficient, undefined_coefficient,
                                                               undefined_coefficient, 1});
    CHECK_THROWS_AS(top_m_network(with_flat, 2), ComputationError);
}

TEST_CASE("components") {
    const std::vector<Edge> none;
    const auto singles = components(4, none);
    CHECK(singles.sizes.size() == 4);
    CHECK(singles.largest_fraction == 0.25);
    CHECK(singles.isolated_count() == 4);

    std::mt19937_64 gen(31);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + gen() % 200;
        const std::size_t m = gen() % (2 * n + 1);
        std::vector<Edge> edges;
        std::vector<std::pair<std::size_t, std::size_t>> plain;
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (std::size_t k = 0; k < m && n > 1; ++k) {
            std::size_t a = gen() % n, b = gen() % n;
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (!seen.insert({a, b}).second) continue;
            edges.push_back({a, b, 1.0});
            plain.emplace_back(a, b);
        }
        const auto part = components(n, edges);
        const auto expect = oracle::bfs_components(n, plain);
        CHECK(part.assignment == expect);
        std::size_t total = 0;
        for (auto s : part.sizes) total += s;
        CHECK(total == n);
        CHECK(part.largest_fraction >= 1.0 / static_cast<double>(n));
        CHECK(part.largest_fraction <= 1.0);
    }
}

TEST_CASE("modular fixture: 41 of 75 isolated at average degree 2.5") {
    const auto r = fixture::ingest_text(fixture::modular75_csv());
    const auto m = correlation_matrix(leverage_series(r.complete));
    const auto net = top_m_network(m, edges_for_average_degree(2.5, m.size()));
    CHECK(net.edges.size() == 94);
    const auto part = components(net);
    CHECK(part.isolated_count() == 41);
    CHECK(part.largest_size() == 10);
}

TEST_CASE("cluster_curve") {
    const auto grid = make_rho_grid(0.0, 1.0, 0.01);
    REQUIRE(grid.size() == 101);
    CHECK(grid[50] == 0.5);
    CHECK(grid.back() == 1.0);
    CHECK_THROWS_AS(make_rho_grid(0.5, 0.4, 0.01), ValidationError);
    CHECK_THROWS_AS(make_rho_grid(0.0, 1.0, 0.0), ValidationError);

    const auto ones = CorrelationMatrix({"a", "b", "c"}, std::vector<double>(9, 1.0));
    for (const auto& p : cluster_curve(ones, grid)) CHECK(p.largest_fraction == 1.0);

    std::vector<double> eye(16, 0.0);
    for (int i = 0; i < 4; ++i) eye[static_cast<std::size_t>(i * 5)] = 1.0;
    const auto zero = CorrelationMatrix({"a", "b", "c", "d"}, eye);
    for (const auto& p : cluster_curve(zero, grid))
        CHECK(p.largest_fraction == (p.rho > 0 ? 0.25 : 1.0));

    const std::vector<double> bad = {0.2, 0.1};
    CHECK_THROWS_AS(cluster_curve(ones, bad), ValidationError);

    std::mt19937_64 gen(37);
    for (int rep = 0; rep < 30; ++rep) {
        const auto rm = random_matrix(gen, 30, true);
        for (auto mode : {LinkMode::signed_value, LinkMode::absolute_value}) {
            const auto curve = cluster_curve(rm, grid, mode);
            for (std::size_t k = 0; k < curve.size(); k += 7)
                CHECK(curve[k].largest_fraction == components(threshold_network(rm, grid[k], mode)).largest_fraction);
        }
    }
}

TEST_CASE("curve metrics") {
    ClusterCurve c = {{0.3, 1.0}, {0.4, 0.9}, {0.5, 0.4}, {0.6, 0.3}};
    const auto j = largest_jump(c);
    CHECK(j.rho_low == 0.4);
    CHECK(j.rho_high == 0.5);
    CHECK(j.size == doctest::Approx(0.5));

    const std::vector<double> line = {1, 3, 5, 7};
    CHECK(least_squares_slope(line) == doctest::Approx(2.0));
    const auto pl = plateau(line, 2);
    CHECK(pl.mean == 6.0);
    CHECK(pl.slope == doctest::Approx(2.0));

    const auto topo = topology(fixture::abcdef_matrix(), 0.8);
    CHECK(topo.largest_fraction == doctest::Approx(2.0 / 6));
    CHECK(topo.isolated_fraction == 0.0);
    CHECK(topo.component_count == 3);
}
