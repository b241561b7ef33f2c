#pragma once

#include <optional>
#include <string>

#include "tournament/distribution.hpp"
#include "tournament/strategy.hpp"

namespace tourney {

/// Selling mechanism. The first three run the two-stage tournament: n
/// first-stage bidders compete in a second-price contest, the winner then
/// faces one extra bidder in a second-price contest. OneShotSecondPrice is
/// the benchmark where all n + 1 bidders compete at once.
enum class Mode {
    NoCommitment,
    CommitmentSymmetric,
    CommitmentAsymmetric,
    OneShotSecondPrice,
};

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

bool mode_commits(Mode mode);

struct AuctionSpec {
    Mode mode = Mode::NoCommitment;
    int n = 2;                 // first-stage bidders; the entrant is extra
    ValueDistribution f = ValueDistribution::uniform(0.0, 1.0);  // first-stage values
    ValueDistribution g = ValueDistribution::uniform(0.0, 1.0);  // entrant value
    std::optional<double> cap;  // symmetric commitment jump bid; defaults to kDefaultBidCap

    /// Experimental: also charge the first-stage runner-up price in the
    /// commitment modes. Off by default; the equilibrium analysis assumes a
    /// free first stage.
    bool charge_stage1_in_commitment = false;

    double cap_or_default() const { return cap.value_or(kDefaultBidCap); }

    /// Throws ConfigError when the mode's regime conditions fail.
    void validate() const;
};

}  // namespace tourney
