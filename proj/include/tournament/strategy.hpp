#pragma once

#include <string>
#include <vector>

#include "tournament/distribution.hpp"

namespace tourney {

inline constexpr double kDefaultBidCap = 1.5;

enum class StrategyKind {
    Truthful,
    NoCommitmentFirstStage,
    CommitmentSymmetricUniform,
    CommitmentAsymmetricUniform,
    OdeNumeric,
};

std::string to_string(StrategyKind kind);

/// Bid b(v) = v.
double truthful_bid(double v);

/// First-stage bid without commitment: the option value of reaching the
/// second stage against an entrant drawn from g,
///   b(v) = integral over [0, v] of (v - x) dG(x).
double no_commitment_first_stage_bid(double v, const ValueDistribution& g);

/// Symmetric-support commitment bid (n first-stage bidders, both value
/// distributions uniform on [0, 1]): linear with slope 2n/(n+1) up to the
/// cutoff type, then a jump to the cap.
double commitment_symmetric_bid(double v, int n, double cutoff, double cap);

/// Strong-entrant commitment bid (uniform values, E[w] above the top
/// first-stage value): linear with slope 2n/(n+1) everywhere.
double commitment_asymmetric_bid(double v, int n);

/// Piecewise-linear interpolation through (v, b) knots with strictly
/// increasing v. Throws ConfigError when v lies outside the knot range.
double ode_table_bid(const std::vector<double>& v_knots,
                     const std::vector<double>& b_knots, double v);

/// A total bid rule on the value support: inputs outside the domain are
/// projected onto it before evaluation.
class BidStrategy {
public:
    static BidStrategy truthful(double domain_hi);
    static BidStrategy no_commitment_first_stage(ValueDistribution g, double domain_hi);
    static BidStrategy commitment_symmetric(int n, double cutoff, double cap = kDefaultBidCap);
    static BidStrategy commitment_asymmetric(int n);
    /// Interpolation table copied from a numeric equilibrium solve. A (0, 0)
    /// knot is prepended when the table does not already start at v = 0 so
    /// the rule is total on [0, v_max].
    static BidStrategy ode_numeric(std::vector<double> v_knots,
                                   std::vector<double> b_knots);

    double bid(double v) const;

    StrategyKind kind() const { return kind_; }
    int n() const { return n_; }
    double cutoff() const { return cutoff_; }
    double cap() const { return cap_; }
    double domain_lo() const { return domain_lo_; }
    double domain_hi() const { return domain_hi_; }
    bool commits() const {
        return kind_ == StrategyKind::CommitmentSymmetricUniform ||
               kind_ == StrategyKind::CommitmentAsymmetricUniform ||
               kind_ == StrategyKind::OdeNumeric;
    }

private:
    explicit BidStrategy(StrategyKind kind) : kind_(kind) {}

    StrategyKind kind_;
    int n_ = 0;
    double cutoff_ = 0.0;
    double cap_ = 0.0;
    double domain_lo_ = 0.0;
    double domain_hi_ = 1.0;
    ValueDistribution entrant_ = ValueDistribution::uniform(0.0, 1.0);
    std::vector<double> v_knots_;
    std::vector<double> b_knots_;
};

}  // namespace tourney
