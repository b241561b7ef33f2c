#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tournament/auction.hpp"
#include "tournament/random.hpp"
#include "tournament/strategy.hpp"

namespace tourney {

/// Bid rules for one tournament: the n symmetric first-stage bidders, the
/// stage-two rule of the first-stage winner (ignored in the commitment
/// modes, where the first-stage bid carries over), and the extra bidder.
struct StrategyProfile {
    BidStrategy first_stage;
    BidStrategy winner_second_stage;
    BidStrategy entrant;
};

/// Equilibrium profile for the mechanism: option-value bidding without
/// commitment, the linear/cutoff rules with commitment (the symmetric
/// cutoff is solved on demand), truthful bidding in the one-shot benchmark.
StrategyProfile equilibrium_profile(const AuctionSpec& spec);

enum class Winner { FirstStageBidder, Entrant };

struct TrialOutcome {
    std::vector<double> values;      // first-stage values
    double entrant_value = 0.0;
    std::vector<double> stage1_bids;
    int stage1_winner = 0;           // index into values; ties split by lottery
    double stage1_price = 0.0;       // paid only without commitment
    double winner_stage2_bid = 0.0;
    Winner final_winner = Winner::FirstStageBidder;
    double stage2_price = 0.0;
    double revenue = 0.0;
    bool efficient = true;           // highest-value bidder ended up winning
};

/// One tournament from explicit draws: `values` are the n first-stage
/// values, `entrant_value` the extra bidder's, `tie_u` the lottery draw for
/// first-stage bid ties. In the one-shot mode all n + 1 bidders meet at
/// once and revenue is the second-highest value.
TrialOutcome run_trial_from_draws(const AuctionSpec& spec, const StrategyProfile& profile,
                                  std::span<const double> values, double entrant_value,
                                  double tie_u);

/// One tournament from a random stream. Consumes exactly n + 2 doubles
/// (n values, the entrant value, the tie draw) so streams stay aligned
/// across modes with equal n.
TrialOutcome run_trial(const AuctionSpec& spec, const StrategyProfile& profile,
                       RandomStream& rng);

enum class Estimator {
    /// Average of realized trial revenue.
    Realized,
    /// Averages E[revenue | first-stage draws], integrating the entrant
    /// value out in closed form. Same estimand, much smaller variance.
    Conditional,
};

struct RevenueEstimate {
    Mode mode = Mode::NoCommitment;
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Estimator estimator = Estimator::Realized;
    double mean = 0.0;
    double std_error = 0.0;
};

struct SimulationSummary {
    RevenueEstimate realized;
    RevenueEstimate conditional;
    /// Trials where the sale missed the highest-value bidder.
    std::uint64_t inefficient_trials = 0;
    /// Commitment-mode trials where revenue exceeded the entrant value
    /// (must stay 0: the winner's price is min(committed bid, entrant value)).
    std::uint64_t revenue_above_entrant_value = 0;
};

/// Monte Carlo revenue under the equilibrium profile. Trials are split into
/// fixed-size chunks, each chunk owns a counter-based stream keyed by the
/// trial index, and chunk sums are reduced in index order, so results are
/// bit-identical for every thread count. threads <= 0 picks the hardware
/// concurrency.
SimulationSummary run_simulation(const AuctionSpec& spec, std::uint64_t trials,
                                 std::uint64_t seed, int threads = 1);

RevenueEstimate estimate_revenue(const AuctionSpec& spec, std::uint64_t trials,
                                 std::uint64_t seed,
                                 Estimator estimator = Estimator::Realized,
                                 int threads = 1);

struct PairedComparison {
    Mode mode_a = Mode::NoCommitment;
    Mode mode_b = Mode::NoCommitment;
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Estimator estimator = Estimator::Realized;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double diff_mean = 0.0;   // mean of (a - b) over shared draws
    double diff_std_error = 0.0;
};

/// Revenue difference between two mechanisms fed identical value draws
/// trial by trial. Both specs must agree on n and the value distributions.
PairedComparison estimate_revenue_paired(const AuctionSpec& spec_a,
                                         const AuctionSpec& spec_b,
                                         std::uint64_t trials, std::uint64_t seed,
                                         Estimator estimator = Estimator::Realized,
                                         int threads = 1);

/// Mean of the second-highest among the n + 1 values: the one-shot
/// second-price revenue benchmark, estimated on the same draws the
/// tournament modes consume.
RevenueEstimate second_order_statistic_mean(const AuctionSpec& spec, std::uint64_t trials,
                                            std::uint64_t seed, int threads = 1);

/// Exact revenue of the no-commitment tournament with all values
/// uniform(0, 1): n / (n + 2).
double exact_revenue_nc_uniform(int n);

struct TableRow {
    Mode mode = Mode::NoCommitment;
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double std_error = 0.0;
    bool has_exact = false;
    double exact = 0.0;
    /// Nonempty when this combination could not run; other rows are
    /// unaffected.
    std::string error;
};

/// Revenue sweep over modes and n, one row per combination. `base` supplies
/// the value distributions, cap and flags; uniform(0, 1) second-price rows
/// carry the exact benchmark. A row whose (mode, n) fails validation is
/// annotated rather than aborting the sweep.
std::vector<TableRow> revenue_table(const std::vector<Mode>& modes,
                                    const std::vector<int>& n_values,
                                    const AuctionSpec& base, std::uint64_t trials,
                                    std::uint64_t seed,
                                    Estimator estimator = Estimator::Realized,
                                    int threads = 1);

}  // namespace tourney
