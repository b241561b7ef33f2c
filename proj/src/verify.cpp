#include "tournament/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "tournament/equilibrium.hpp"
#include "tournament/error.hpp"
#include "tournament/numeric.hpp"
#include "tournament/random.hpp"

namespace tourney {

namespace {

/// Largest y in [0, hi] with rule(y) < target, for a nondecreasing rule.
double sup_below(const std::function<double(double)>& rule, double hi, double target) {
    if (rule(0.0) >= target) return 0.0;
    if (rule(hi) < target) return hi;
    double lo = 0.0;
    double up = hi;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + up);
        if (rule(mid) < target) {
            lo = mid;
        } else {
            up = mid;
        }
    }
    return lo;
}

void require_profile_match(const AuctionSpec& spec, const BidStrategy& strategy) {
    const StrategyKind k = strategy.kind();
    switch (spec.mode) {
        case Mode::NoCommitment:
            if (k != StrategyKind::NoCommitmentFirstStage) {
                throw ConfigError("no-commitment verification expects the option-value strategy");
            }
            return;
        case Mode::CommitmentSymmetric:
            if (k != StrategyKind::CommitmentSymmetricUniform && k != StrategyKind::OdeNumeric) {
                throw ConfigError("symmetric commitment verification expects a commitment strategy");
            }
            if (k == StrategyKind::CommitmentSymmetricUniform) {
                if (strategy.n() != spec.n) {
                    throw ConfigError("strategy and mechanism disagree on n");
                }
                if (strategy.cap() != spec.cap_or_default()) {
                    throw ConfigError("strategy and mechanism disagree on the bid cap");
                }
            }
            return;
        case Mode::CommitmentAsymmetric:
            if (k != StrategyKind::CommitmentAsymmetricUniform && k != StrategyKind::OdeNumeric) {
                throw ConfigError("asymmetric commitment verification expects a commitment strategy");
            }
            if (k == StrategyKind::CommitmentAsymmetricUniform && strategy.n() != spec.n) {
                throw ConfigError("strategy and mechanism disagree on n");
            }
            return;
        case Mode::OneShotSecondPrice:
            if (k != StrategyKind::Truthful) {
                throw ConfigError("one-shot verification expects the truthful strategy");
            }
            return;
    }
    throw ConfigError("unknown mode");
}

using Payoff = std::function<double(double b, double v)>;

/// Interim first-stage payoff engine for the candidate strategy played by
/// all rivals. Closed form for the two uniform commitment strategies,
/// quadrature otherwise.
Payoff make_payoff_engine(const AuctionSpec& spec, const BidStrategy& strategy,
                          std::string& engine_name) {
    const int n = spec.n;
    const ValueDistribution& f = spec.f;
    const ValueDistribution& g = spec.g;
    switch (strategy.kind()) {
        case StrategyKind::CommitmentSymmetricUniform:
            engine_name = "analytic-four-branch";
            return [n, strategy](double b, double v) {
                return interim_payoff_symmetric(b, v, n, strategy.cutoff(), strategy.cap());
            };
        case StrategyKind::CommitmentAsymmetricUniform:
            engine_name = "analytic-three-branch";
            return [n, w_bar = g.support_hi()](double b, double v) {
                return interim_payoff_asymmetric(b, v, n, w_bar);
            };
        case StrategyKind::OdeNumeric:
            engine_name = "quadrature-commitment";
            return [n, f, g, strategy](double b, double v) {
                const double beta = sup_below(
                    [&strategy](double y) { return strategy.bid(y); }, f.support_hi(), b);
                return std::pow(f.cdf(beta), n - 1) * g.second_stage_gain(v, b);
            };
        case StrategyKind::NoCommitmentFirstStage:
            engine_name = "quadrature-option-value";
            return [n, f, strategy](double b, double v) {
                const double theta_v = strategy.bid(v);
                const double y_max = sup_below(
                    [&strategy](double y) { return strategy.bid(y); }, f.support_hi(), b);
                if (y_max <= 0.0) return 0.0;
                return adaptive_simpson(
                    [&](double y) {
                        return (theta_v - strategy.bid(y)) * (n - 1.0) *
                               std::pow(f.cdf(y), n - 2) * f.pdf(y);
                    },
                    0.0, y_max, 1e-12);
            };
        case StrategyKind::Truthful:
            engine_name = "quadrature-one-shot";
            return [n, f, g](double b, double v) {
                const double hi = std::min(b, g.support_hi());
                if (hi <= 0.0) return 0.0;
                return adaptive_simpson(
                    [&](double m) {
                        const double density =
                            (n - 1.0) * std::pow(f.cdf(m), n - 2) * f.pdf(m) * g.cdf(m) +
                            std::pow(f.cdf(m), n - 1) * g.pdf(m);
                        return (v - m) * density;
                    },
                    0.0, hi, 1e-12);
            };
    }
    throw ConfigError("unknown strategy kind");
}

std::vector<double> deviation_bids(const AuctionSpec& spec, const BidStrategy& strategy,
                                   int bid_grid, double own_bid) {
    double bid_max = 0.0;
    std::vector<double> extras;
    switch (spec.mode) {
        case Mode::CommitmentSymmetric: {
            bid_max = strategy.kind() == StrategyKind::OdeNumeric
                          ? spec.cap_or_default()
                          : strategy.cap();
            if (strategy.kind() == StrategyKind::CommitmentSymmetricUniform) {
                extras = {2.0 * spec.n / (spec.n + 1.0) * strategy.cutoff(), 1.0,
                          strategy.cap()};
            }
            break;
        }
        case Mode::CommitmentAsymmetric:
            bid_max = spec.g.support_hi();
            extras = {2.0 * spec.n / (spec.n + 1.0), strategy.bid(spec.f.support_hi())};
            break;
        case Mode::NoCommitment:
            bid_max = strategy.bid(spec.f.support_hi());
            extras = {bid_max};
            break;
        case Mode::OneShotSecondPrice:
            bid_max = spec.g.support_hi();
            extras = {spec.f.support_hi()};
            break;
    }
    std::vector<double> bids;
    bids.reserve(bid_grid + extras.size() + 1);
    for (int i = 0; i < bid_grid; ++i) {
        bids.push_back(bid_max * i / (bid_grid - 1.0));
    }
    bids.insert(bids.end(), extras.begin(), extras.end());
    bids.push_back(own_bid);
    std::sort(bids.begin(), bids.end());
    bids.erase(std::unique(bids.begin(), bids.end()), bids.end());
    return bids;
}

VerificationReport verify_analytic(const AuctionSpec& spec, const BidStrategy& strategy,
                                   const VerifyOptions& opt) {
    VerificationReport report;
    report.tol = opt.tol;
    Payoff payoff = make_payoff_engine(spec, strategy, report.engine);

    const double v_max = spec.f.support_hi();
    double max_gain = -std::numeric_limits<double>::infinity();
    for (int iv = 0; iv < opt.value_grid; ++iv) {
        const double v = v_max * iv / (opt.value_grid - 1.0);
        const double own_bid = strategy.bid(v);
        const double own_payoff = payoff(own_bid, v);
        for (double b : deviation_bids(spec, strategy, opt.bid_grid, own_bid)) {
            const double gain = payoff(b, v) - own_payoff;
            if (gain > max_gain) {
                max_gain = gain;
                report.worst_value = v;
                report.worst_bid = b;
            }
        }
    }
    report.max_gain = max_gain;
    report.pass = max_gain <= opt.tol;
    return report;
}

struct TrialDraws {
    double rival_max_bid = 0.0;
    int rival_max_count = 0;
    double w = 0.0;
    double tie_u = 0.0;
};

double payoff_from_draws(const AuctionSpec& spec, double b, double v, const TrialDraws& d) {
    bool win;
    if (b > d.rival_max_bid) {
        win = true;
    } else if (b == d.rival_max_bid) {
        win = d.tie_u * (d.rival_max_count + 1) < 1.0;
    } else {
        win = false;
    }
    if (!win) return 0.0;
    switch (spec.mode) {
        case Mode::NoCommitment:
            return -d.rival_max_bid + (v > d.w ? v - d.w : 0.0);
        case Mode::CommitmentSymmetric:
        case Mode::CommitmentAsymmetric:
            return b > d.w ? v - d.w : 0.0;
        case Mode::OneShotSecondPrice: {
            // rival_max_bid here is already max(rival values, w)
            return v - d.rival_max_bid;
        }
    }
    return 0.0;
}

VerificationReport verify_monte_carlo(const AuctionSpec& spec, const BidStrategy& strategy,
                                      const VerifyOptions& opt) {
    VerificationReport report;
    report.tol = opt.tol;
    report.engine = "monte-carlo";

    const double v_max = spec.f.support_hi();
    double max_gain = -std::numeric_limits<double>::infinity();
    bool pass = true;
    for (int iv = 0; iv < opt.value_grid; ++iv) {
        const double v = v_max * iv / (opt.value_grid - 1.0);
        const double own_bid = strategy.bid(v);
        const std::vector<double> bids = deviation_bids(spec, strategy, opt.bid_grid, own_bid);
        std::vector<double> sum(bids.size(), 0.0);
        std::vector<double> sumsq(bids.size(), 0.0);
        for (std::uint64_t t = 0; t < opt.mc_trials; ++t) {
            RandomStream rs(opt.seed, t, static_cast<std::uint32_t>(iv));
            TrialDraws d;
            for (int j = 0; j + 1 < spec.n; ++j) {
                const double x = spec.f.sample(rs);
                const double bid = strategy.bid(x);
                if (bid > d.rival_max_bid) {
                    d.rival_max_bid = bid;
                    d.rival_max_count = 1;
                } else if (bid == d.rival_max_bid) {
                    ++d.rival_max_count;
                }
            }
            d.w = spec.g.sample(rs);
            d.tie_u = rs.next_double();
            if (spec.mode == Mode::OneShotSecondPrice && d.w > d.rival_max_bid) {
                d.rival_max_bid = d.w;
                d.rival_max_count = 1;
            }
            const double own_payoff = payoff_from_draws(spec, own_bid, v, d);
            for (std::size_t ib = 0; ib < bids.size(); ++ib) {
                const double diff = payoff_from_draws(spec, bids[ib], v, d) - own_payoff;
                sum[ib] += diff;
                sumsq[ib] += diff * diff;
            }
        }
        const auto trials = static_cast<double>(opt.mc_trials);
        for (std::size_t ib = 0; ib < bids.size(); ++ib) {
            const double mean = sum[ib] / trials;
            const double var = std::max(0.0, (sumsq[ib] - trials * mean * mean) / (trials - 1.0));
            const double se = std::sqrt(var / trials);
            if (mean > max_gain) {
                max_gain = mean;
                report.worst_value = v;
                report.worst_bid = bids[ib];
            }
            if (mean > 3.0 * se) pass = false;
        }
    }
    report.max_gain = max_gain;
    report.pass = pass;
    return report;
}

}  // namespace

VerificationReport verify_best_response(const AuctionSpec& spec, const BidStrategy& strategy,
                                        const VerifyOptions& opt) {
    spec.validate();
    if (opt.value_grid < 2 || opt.bid_grid < 2) {
        throw ConfigError("verification grids need at least two points");
    }
    if (spec.charge_stage1_in_commitment) {
        throw ConfigError("verification covers the free-first-stage commitment design only");
    }
    require_profile_match(spec, strategy);
    if (opt.backend == VerifyBackend::MonteCarlo) {
        if (opt.mc_trials < 2) throw ConfigError("monte-carlo verification needs trials >= 2");
        return verify_monte_carlo(spec, strategy, opt);
    }
    return verify_analytic(spec, strategy, opt);
}

VerificationReport verify_truthful_second_stage(const AuctionSpec& spec,
                                                const BidStrategy& strategy,
                                                const VerifyOptions& opt) {
    spec.validate();
    if (opt.value_grid < 2 || opt.bid_grid < 2) {
        throw ConfigError("verification grids need at least two points");
    }
    require_profile_match(spec, strategy);

    const int n = spec.n;
    const ValueDistribution& f = spec.f;
    const bool commits = mode_commits(spec.mode);
    // Stage-two bid of the first-stage winner as a function of its value.
    const auto winner_bid = [&](double y) { return commits ? strategy.bid(y) : y; };
    const auto payoff = [&](double c, double w) {
        const double y_max = sup_below(winner_bid, f.support_hi(), c);
        if (y_max <= 0.0) return 0.0;
        return adaptive_simpson(
            [&](double y) {
                return (w - winner_bid(y)) * n * std::pow(f.cdf(y), n - 1) * f.pdf(y);
            },
            0.0, y_max, 1e-12);
    };

    VerificationReport report;
    report.tol = opt.tol;
    report.engine = "quadrature-entrant";
    const double w_max = spec.g.support_hi();
    double max_gain = -std::numeric_limits<double>::infinity();
    for (int iw = 0; iw < opt.value_grid; ++iw) {
        const double w = w_max * iw / (opt.value_grid - 1.0);
        const double own_payoff = payoff(w, w);
        std::vector<double> bids;
        bids.reserve(opt.bid_grid + 2);
        for (int i = 0; i < opt.bid_grid; ++i) {
            bids.push_back(w_max * i / (opt.bid_grid - 1.0));
        }
        bids.push_back(winner_bid(f.support_hi()));
        bids.push_back(w);
        std::sort(bids.begin(), bids.end());
        bids.erase(std::unique(bids.begin(), bids.end()), bids.end());
        for (double c : bids) {
            const double gain = payoff(c, w) - own_payoff;
            if (gain > max_gain) {
                max_gain = gain;
                report.worst_value = w;
                report.worst_bid = c;
            }
        }
    }
    report.max_gain = max_gain;
    report.pass = max_gain <= opt.tol;
    return report;
}

}  // namespace tourney
