#pragma once

#include <cstdint>
#include <string>

#include "tournament/auction.hpp"
#include "tournament/strategy.hpp"

namespace tourney {

enum class VerifyBackend { Analytic, MonteCarlo };

struct VerifyOptions {
    int value_grid = 101;   // candidate own values across the support
    int bid_grid = 201;     // candidate deviation bids per value
    double tol = 1e-6;      // analytic pass threshold on the deviation gain
    VerifyBackend backend = VerifyBackend::Analytic;
    std::uint64_t mc_trials = 20000;  // per value point, MonteCarlo backend
    std::uint64_t seed = 1;
};

struct VerificationReport {
    bool pass = false;
    double max_gain = 0.0;    // largest payoff improvement any deviation found
    double worst_value = 0.0; // own value where max_gain occurred
    double worst_bid = 0.0;   // deviation bid where max_gain occurred
    double tol = 0.0;
    std::string engine;
};

/// Checks that the candidate first-stage strategy is a best response to
/// itself: sweeps a value grid and, for each value, a deviation-bid grid
/// (always including the branch boundaries of the interim payoff and the
/// strategy's own bid), and compares payoffs against the prescribed bid.
///
/// The analytic backend evaluates interim payoffs in closed form for the
/// uniform commitment strategies and by quadrature otherwise; it passes when
/// max_gain <= tol. The MonteCarlo backend replays common random draws
/// across deviations and passes when no deviation wins by more than three
/// standard errors of the paired difference.
VerificationReport verify_best_response(const AuctionSpec& spec,
                                        const BidStrategy& strategy,
                                        const VerifyOptions& opt = {});

/// Checks that truthful bidding is optimal for the extra bidder facing the
/// tournament winner's second-stage bid distribution induced by the
/// candidate first-stage strategy. Analytic quadrature only.
VerificationReport verify_truthful_second_stage(const AuctionSpec& spec,
                                                const BidStrategy& strategy,
                                                const VerifyOptions& opt = {});

}  // namespace tourney
