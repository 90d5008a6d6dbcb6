#include "levnet/interbank_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "levnet/errors.hpp"

namespace levnet {

namespace {

void require(bool ok, const std::string& field, const std::string& rule) {
    if (!ok) {
        throw ValidationError("config field '" + field + "': " + rule);
    }
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

// Partial Fisher-Yates: the k-th call moves a uniformly chosen, not yet
// drawn element of pool to position k and returns it.
std::size_t draw_without_replacement(std::vector<std::size_t>& pool, std::size_t k, Rng& rng) {
    const std::size_t pick = k + static_cast<std::size_t>(rng.index(pool.size() - k));
    std::swap(pool[k], pool[pick]);
    return pool[k];
}

}  // namespace

void validate(const SimConfig& c) {
    require(c.n_banks >= 2, "n_banks", "must be >= 2");
    require(c.n_periods >= 0, "n_periods", "must be >= 0");
    require(finite_nonneg(c.assets_low) && c.assets_low > 0.0, "assets_low", "must be finite and > 0");
    require(std::isfinite(c.assets_high) && c.assets_high >= c.assets_low, "assets_high",
            "must be finite and >= assets_low");
    require(c.equity_ratio_low > 0.0 && c.equity_ratio_low < 1.0, "equity_ratio_low",
            "must lie in (0, 1)");
    require(c.equity_ratio_high > 0.0 && c.equity_ratio_high < 1.0, "equity_ratio_high",
            "must lie in (0, 1)");
    require(c.equity_ratio_low <= c.equity_ratio_high, "equity_ratio_high",
            "must be >= equity_ratio_low");
    require(c.liquidity_share > 0.0 && c.liquidity_share < 1.0, "liquidity_share",
            "must lie in (0, 1)");
    require(finite_nonneg(c.lambda), "lambda", "must be finite and >= 0");
    require(finite_nonneg(c.loan_size), "loan_size", "must be finite and >= 0");
    require(finite_nonneg(c.r_interbank), "r_interbank", "must be finite and >= 0");
    require(std::isfinite(c.r_corporate) && c.r_corporate > c.r_interbank, "r_corporate",
            "must be finite and > r_interbank");
    require(c.maturity >= 1, "maturity", "must be >= 1");
    require(c.deposit_bank_count >= 1 && c.deposit_bank_count < c.n_banks, "deposit_bank_count",
            "must satisfy 1 <= deposit_bank_count < n_banks");
    require(c.shock_probability >= 0.0 && c.shock_probability <= 1.0, "shock_probability",
            "must lie in [0, 1]");
    require(finite_nonneg(c.shock_factor), "shock_factor", "must be finite and >= 0");
}

double SimBank::identity_residual() const {
    const double a = assets();
    return std::fabs(a - (liabilities() + equity)) / a;
}

std::vector<AdjacencyLink> AdjacencyHistory::links_at(std::int64_t period) const {
    std::vector<AdjacencyLink> out;
    auto lo = std::lower_bound(links.begin(), links.end(), period,
                               [](const AdjacencyLink& l, std::int64_t p) { return l.period < p; });
    for (; lo != links.end() && lo->period == period; ++lo) {
        out.push_back(*lo);
    }
    return out;
}

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::loan_granted: return "loan_granted";
        case EventKind::loan_failed: return "loan_failed";
        case EventKind::shock: return "shock";
        case EventKind::repayment: return "repayment";
    }
    return "unknown";
}

SimState init(const SimConfig& config, Rng& rng) {
    validate(config);
    SimState state;
    state.config = config;
    state.banks.resize(static_cast<std::size_t>(config.n_banks));
    for (auto& bank : state.banks) {
        const double assets = rng.uniform(config.assets_low, config.assets_high);
        const double ratio = rng.uniform(config.equity_ratio_low, config.equity_ratio_high);
        bank.equity = ratio * assets;
        bank.liquidity = config.liquidity_share * assets;
        bank.illiquid = assets - bank.liquidity;
        bank.deposits = assets - bank.equity;
        // Strictly positive so re-scaled weights are always defined.
        do {
            bank.deposit_weight = rng.uniform01();
        } while (bank.deposit_weight == 0.0);
    }
    return state;
}

std::optional<LoanRecord> grant_loan(SimState& state, Rng& rng) {
    const SimConfig& cfg = state.config;
    const double loan = cfg.loan_size;
    const std::size_t n = state.banks.size();
    const std::size_t origin = static_cast<std::size_t>(rng.index(n));
    SimBank& borrower = state.banks[origin];

    double borrowed = 0.0;
    std::optional<std::size_t> lender;
    if (borrower.liquidity < loan) {
        const double shortfall = loan - borrower.liquidity;
        std::vector<std::size_t> pool;
        pool.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != origin) {
                pool.push_back(j);
            }
        }
        for (std::size_t k = 0; k < pool.size(); ++k) {
            const std::size_t candidate = draw_without_replacement(pool, k, rng);
            if (state.banks[candidate].liquidity >= shortfall) {
                lender = candidate;
                break;
            }
        }
        if (!lender) {
            state.events.push_back({state.period, EventKind::loan_failed, origin, std::nullopt, loan, shortfall});
            return std::nullopt;
        }
        borrowed = shortfall;
    }

    // A borrowing originator commits all of its liquidity; setting it to
    // zero avoids a negative residue from loan - (loan - liquidity).
    borrower.liquidity = lender ? 0.0 : borrower.liquidity - loan;
    borrower.corporate_loans += loan;
    borrower.interbank_debt += borrowed;
    if (lender) {
        SimBank& source = state.banks[*lender];
        source.liquidity -= borrowed;
        source.interbank_claims += borrowed;
        state.adjacency.links.push_back({state.period, *lender, origin, borrowed});
    }

    // Household deposits: the loan returns to deposit_bank_count random banks,
    // split by their fixed weights re-scaled over the drawn set.
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    const auto m = static_cast<std::size_t>(cfg.deposit_bank_count);
    double weight_sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        weight_sum += state.banks[draw_without_replacement(pool, k, rng)].deposit_weight;
    }
    for (std::size_t k = 0; k < m; ++k) {
        SimBank& bank = state.banks[pool[k]];
        const double inflow = bank.deposit_weight / weight_sum * loan;
        bank.liquidity += inflow;
        bank.deposits += inflow;
    }

    LoanRecord record{origin, lender, loan, borrowed, state.period, state.period + cfg.maturity};
    state.outstanding.push_back(record);
    state.events.push_back({state.period, EventKind::loan_granted, origin, lender, loan, borrowed});
    return record;
}

void apply_shock(SimState& state, Rng& rng) {
    const std::size_t k = static_cast<std::size_t>(rng.index(state.banks.size()));
    SimBank& bank = state.banks[k];
    const double amount =
        std::min({state.config.shock_factor * state.config.loan_size, bank.liquidity, bank.deposits});
    bank.liquidity -= amount;
    bank.deposits -= amount;
    state.events.push_back({state.period, EventKind::shock, k, std::nullopt, amount, 0.0});
}

void settle_repayments(SimState& state, std::int64_t period) {
    const double rc = state.config.r_corporate;
    const double rb = state.config.r_interbank;
    std::deque<LoanRecord> remaining;
    for (const LoanRecord& loan : state.outstanding) {
        if (loan.due != period) {
            remaining.push_back(loan);
            continue;
        }
        SimBank& origin = state.banks[loan.originator];
        const double principal = loan.corporate_amount;
        const double borrowed = loan.borrowed_amount;
        origin.liquidity += principal * (1.0 + rc) - borrowed * (1.0 + rb);
        // Outstanding balances are sums of the open loans; clamp the
        // rounding residue left when the last one closes.
        origin.corporate_loans = std::max(0.0, origin.corporate_loans - principal);
        origin.interbank_debt = std::max(0.0, origin.interbank_debt - borrowed);
        origin.equity += principal * rc - borrowed * rb;
        if (loan.lender) {
            SimBank& lender = state.banks[*loan.lender];
            lender.liquidity += borrowed * (1.0 + rb);
            lender.interbank_claims = std::max(0.0, lender.interbank_claims - borrowed);
            lender.equity += borrowed * rb;
        }
        state.events.push_back(
            {period, EventKind::repayment, loan.originator, loan.lender, principal, borrowed});
    }
    state.outstanding = std::move(remaining);
}

void step(SimState& state, Rng& rng) {
    ++state.period;
    settle_repayments(state, state.period);
    const std::uint64_t arrivals = rng.poisson(state.config.lambda);
    for (std::uint64_t k = 0; k < arrivals; ++k) {
        grant_loan(state, rng);
    }
    if (state.config.shock_probability > 0.0 && rng.bernoulli(state.config.shock_probability)) {
        apply_shock(state, rng);
    }
}

double SimOutput::mean_assets_growth() const {
    if (mean_assets.empty()) {
        throw ComputationError("mean_assets_growth: empty run");
    }
    return mean_assets.back() / mean_assets.front();
}

std::string sim_bank_id(std::size_t index) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "bank_%03zu", index);
    return buffer;
}

SimOutput run(const SimConfig& config) {
    validate(config);
    Rng rng(config.seed);
    SimState state = init(config, rng);

    const std::size_t n = state.banks.size();
    const auto points = static_cast<std::size_t>(config.n_periods) + 1;
    std::vector<BankSeries> members(n);
    for (std::size_t i = 0; i < n; ++i) {
        members[i].bank_id = sim_bank_id(i);
        members[i].observations.reserve(points);
    }
    const auto record = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            const SimBank& b = state.banks[i];
            members[i].observations.push_back({state.period, b.assets(), b.liabilities()});
        }
    };

    record();
    for (int t = 0; t < config.n_periods; ++t) {
        step(state, rng);
        record();
    }

    SimOutput out;
    out.config = config;
    out.panel.label = "sim_seed_" + std::to_string(config.seed);
    out.panel.grid.resize(points);
    std::iota(out.panel.grid.begin(), out.panel.grid.end(), TimeIndex{0});
    out.panel.members = std::move(members);
    out.leverage = leverage_series(out.panel);

    out.mean_leverage.assign(points, 0.0);
    out.mean_assets.assign(points, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < points; ++k) {
            out.mean_leverage[k] += out.leverage[i].values[k].second;
            out.mean_assets[k] += out.panel.members[i].observations[k].assets;
        }
    }
    for (std::size_t k = 0; k < points; ++k) {
        out.mean_leverage[k] /= static_cast<double>(n);
        out.mean_assets[k] /= static_cast<double>(n);
    }
    out.adjacency = std::move(state.adjacency);
    out.events = std::move(state.events);
    return out;
}

}  // namespace levnet
