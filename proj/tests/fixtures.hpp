#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "levnet/balance_sheet.hpp"
#include "levnet/correlation_network.hpp"
#include "levnet/number_format.hpp"
#include "levnet/panel_io.hpp"

namespace fixture {

inline std::string month_date(int k) {
    return levnet::format_iso_date(levnet::days_from_civil(2000 + k / 12, static_cast<unsigned>(k % 12 + 1), 1));
}

inline std::string bank_name(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%03zu", prefix, i);
    return buf;
}

// Rows for a bank with constant equity 100 and the given leverage path.
inline void append_rows(std::ostringstream& out, const std::string& id, int first_month,
                        const std::vector<double>& leverage) {
    for (std::size_t k = 0; k < leverage.size(); ++k) {
        const double liabilities = 100.0 * leverage[k];
        out << id << ',' << month_date(first_month + static_cast<int>(k)) << ','
            << levnet::format_double(liabilities + 100.0) << ',' << levnet::format_double(liabilities)
            << '\n';
    }
}

// 24 monthly dates: 75 banks present throughout, 6 that stop reporting
// early, 3 that start late. Census (81, 78, 3, 6, 75).
inline std::string argentina_csv() {
    constexpr int months = 24;
    std::mt19937_64 gen(81);
    std::uniform_real_distribution<double> level(3.0, 12.0), wiggle(-0.3, 0.3);
    const auto path = [&](int len) {
        std::vector<double> v(static_cast<std::size_t>(len));
        double x = level(gen);
        for (auto& e : v) {
            x = std::max(1.0, x + wiggle(gen));
            e = x;
        }
        return v;
    };
    std::ostringstream out;
    out << "bank_id,date,assets,liabilities\n";
    for (std::size_t i = 0; i < 75; ++i) append_rows(out, bank_name("AR", i), 0, path(months));
    for (std::size_t i = 0; i < 6; ++i) append_rows(out, bank_name("ARX", i), 0, path(6 + 2 * static_cast<int>(i)));
    for (std::size_t i = 0; i < 3; ++i) append_rows(out, bank_name("ARN", i), 5 + 4 * static_cast<int>(i), path(months - 5 - 4 * static_cast<int>(i)));
    return out.str();
}

// 75 complete banks over 84 months whose leverage correlations are built
// from mutually orthogonal zero-mean Fourier vectors: 34 banks in seven
// groups of sizes 10, 8, 5, 4, 3, 2, 2 (45+28+10+6+3+1+1 = 94 in-group
// pairs, each r = 0.9) and 41 banks uncorrelated with every other bank.
// The top-94 network is exactly the in-group pairs, so 41 nodes are isolated.
inline std::string modular75_csv() {
    constexpr int months = 84;
    const auto basis = [&](std::size_t k) {
        // k = 0..81 -> cos/sin harmonics 1..41
        std::vector<double> v(months);
        const double h = static_cast<double>(k / 2 + 1);
        for (int t = 0; t < months; ++t) {
            const double arg = 2.0 * std::numbers::pi * h * t / months;
            v[static_cast<std::size_t>(t)] = (k % 2 ? std::sin(arg) : std::cos(arg));
        }
        return v;
    };
    const std::vector<std::size_t> groups = {10, 8, 5, 4, 3, 2, 2};
    std::size_t next_basis = 0;
    std::ostringstream out;
    out << "bank_id,date,assets,liabilities\n";
    std::size_t bank = 0;
    const double f = 3.0, e = 1.0;  // r = f^2 / (f^2 + e^2) = 0.9
    for (std::size_t size : groups) {
        const auto factor = basis(next_basis++);
        for (std::size_t s = 0; s < size; ++s) {
            const auto noise = basis(next_basis++);
            std::vector<double> lev(months);
            for (int t = 0; t < months; ++t) {
                const auto u = static_cast<std::size_t>(t);
                lev[u] = 10.0 + 0.5 * (f * factor[u] + e * noise[u]);
            }
            append_rows(out, bank_name("MB", bank++), 0, lev);
        }
    }
    // 41 directions used so far; the remaining 41 go to isolated banks.
    while (bank < 75) {
        const auto own = basis(next_basis++);
        std::vector<double> lev(months);
        for (int t = 0; t < months; ++t) lev[static_cast<std::size_t>(t)] = 10.0 + 0.5 * own[static_cast<std::size_t>(t)];
        append_rows(out, bank_name("MB", bank++), 0, lev);
    }
    return out.str();
}

inline levnet::IngestResult ingest_text(const std::string& csv,
                                        levnet::ValidationMode mode = levnet::ValidationMode::strict) {
    std::istringstream in(csv);
    return levnet::ingest(in, levnet::ColumnMapping{}, mode, "fixture");
}

// Five banks whose leverage median is 16.4 at every one of 12 points.
inline levnet::Panel taiwan_panel() {
    const double liabilities_median = 1640.0;  // with equity 100 -> 16.4
    const std::vector<double> spread = {-900.0, -300.0, 0.0, 250.0, 1100.0};
    std::vector<levnet::BankSeries> members;
    for (std::size_t b = 0; b < spread.size(); ++b) {
        levnet::BankSeries s;
        s.bank_id = bank_name("TW", b);
        for (int t = 0; t < 12; ++t) {
            // Off-median banks drift but never cross the median bank.
            const double l = liabilities_median + spread[b] * (1.0 + 0.05 * (t % 4));
            s.observations.push_back({t, l + 100.0, l});
        }
        members.push_back(std::move(s));
    }
    return levnet::make_panel("taiwan", std::move(members));
}

// Six banks A..F: A-B 0.81, C-D 0.84, E-F 0.83 and everything else below 0.8.
inline levnet::CorrelationMatrix abcdef_matrix() {
    const std::vector<std::string> ids = {"A", "B", "C", "D", "E", "F"};
    std::vector<double> m = {
        1.00,  0.81,  0.12,  -0.65, 0.30,  0.05,
        0.81,  1.00,  0.44,  0.20,  -0.10, 0.79,
        0.12,  0.44,  1.00,  0.84,  0.62,  -0.33,
        -0.65, 0.20,  0.84,  1.00,  0.15,  0.41,
        0.30,  -0.10, 0.62,  0.15,  1.00,  0.83,
        0.05,  0.79,  -0.33, 0.41,  0.83,  1.00,
    };
    return levnet::CorrelationMatrix(ids, m);
}

}  // namespace fixture
