#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "levnet/balance_sheet.hpp"
#include "levnet/rng.hpp"

namespace levnet {

/// Parameters of the corporate/interbank loan model. Defaults are the
/// calibrated values shipped in config/default.conf.
struct SimConfig {
    int n_banks = 80;
    int n_periods = 5000;
    double assets_low = 5000.0;
    double assets_high = 50000.0;
    double equity_ratio_low = 0.10;
    double equity_ratio_high = 0.35;
    double liquidity_share = 0.5;
    double lambda = 1.7;           // expected loan requests per period
    double loan_size = 2000.0;     // fixed corporate loan amount
    double r_corporate = 0.10;     // simple interest over the loan's life
    double r_interbank = 0.02;
    int maturity = 3;              // periods until repayment
    int deposit_bank_count = 70;   // banks receiving each loan's deposits
    double shock_probability = 0.25;
    double shock_factor = 4.0;     // shock size as a multiple of loan_size
    std::uint64_t seed = 1;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Throws ValidationError naming the offending field.
void validate(const SimConfig& config);

struct SimBank {
    double liquidity = 0.0;
    double illiquid = 0.0;
    double corporate_loans = 0.0;
    double interbank_claims = 0.0;
    double deposits = 0.0;
    double interbank_debt = 0.0;
    double equity = 0.0;
    double deposit_weight = 0.0;

    double assets() const { return liquidity + illiquid + corporate_loans + interbank_claims; }
    double liabilities() const { return deposits + interbank_debt; }

    /// |assets - (liabilities + equity)| relative to assets.
    double identity_residual() const;
};

struct LoanRecord {
    std::size_t originator = 0;
    std::optional<std::size_t> lender;
    double corporate_amount = 0.0;
    double borrowed_amount = 0.0;
    std::int64_t origination = 0;
    std::int64_t due = 0;
};

struct AdjacencyLink {
    std::int64_t period = 0;
    std::size_t lender = 0;
    std::size_t borrower = 0;
    double amount = 0.0;

    friend bool operator==(const AdjacencyLink&, const AdjacencyLink&) = default;
};

/// Directed lender -> borrower interbank links, in period order.
struct AdjacencyHistory {
    std::vector<AdjacencyLink> links;

    std::vector<AdjacencyLink> links_at(std::int64_t period) const;

    friend bool operator==(const AdjacencyHistory&, const AdjacencyHistory&) = default;
};

enum class EventKind { loan_granted, loan_failed, shock, repayment };

const char* to_string(EventKind kind);

struct SimEvent {
    std::int64_t period = 0;
    EventKind kind = EventKind::loan_granted;
    std::size_t bank = 0;                 // originator, or shocked bank
    std::optional<std::size_t> counterparty;  // interbank lender
    double amount = 0.0;                  // loan size, borrowed amount, or shock amount
    double borrowed = 0.0;

    friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct SimState {
    SimConfig config;
    std::int64_t period = 0;
    std::vector<SimBank> banks;
    std::deque<LoanRecord> outstanding;
    AdjacencyHistory adjacency;
    std::vector<SimEvent> events;
};

SimState init(const SimConfig& config, Rng& rng);

/// One period: repayments due, Poisson(lambda) loan requests, then a shock
/// with probability shock_probability. Advances the period counter first,
/// so all events of the step carry the new period.
void step(SimState& state, Rng& rng);

/// One corporate loan request at state.period. Returns nullopt when the
/// originator is short of liquidity and no single lender can cover the
/// shortfall; the state is then unchanged apart from the event log.
std::optional<LoanRecord> grant_loan(SimState& state, Rng& rng);

/// Withdraws min(shock_factor * loan_size, liquidity, deposits) from a
/// uniformly chosen bank.
void apply_shock(SimState& state, Rng& rng);

/// Settles every outstanding loan whose due period equals period.
void settle_repayments(SimState& state, std::int64_t period);

struct SimOutput {
    SimConfig config;
    Panel panel;  // grid 0..n_periods, one member per bank
    std::vector<LeverageSeries> leverage;
    std::vector<double> mean_leverage;  // across banks, per period
    std::vector<double> mean_assets;    // across banks, per period
    AdjacencyHistory adjacency;
    std::vector<SimEvent> events;

    /// mean_assets.back() / mean_assets.front().
    double mean_assets_growth() const;
};

/// Identifier of simulated bank i ("bank_000", ...).
std::string sim_bank_id(std::size_t index);

SimOutput run(const SimConfig& config);

}  // namespace levnet
