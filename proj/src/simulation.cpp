#include "tournament/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "tournament/equilibrium.hpp"
#include "tournament/error.hpp"

namespace tourney {

namespace {

constexpr std::uint64_t kChunkTrials = 8192;

double mass_mean(const ValueDistribution& g, double x) {
    if (g.cdf(x) <= 0.0) return 0.0;
    return g.cdf(x) * g.truncated_mean(x);
}

/// E[min(x, w)] for w distributed by g.
double expected_min(const ValueDistribution& g, double x) {
    return x * (1.0 - g.cdf(x)) + mass_mean(g, x);
}

int pick_by_lottery(int tied, double tie_u) {
    const int idx = static_cast<int>(tie_u * tied);
    return std::min(idx, tied - 1);
}

struct FastTrial {
    double realized = 0.0;
    double conditional = 0.0;
    bool inefficient = false;
    bool above_entrant = false;
};

/// Revenue and allocation bookkeeping for one trial, with the entrant value
/// integrated out in closed form for the conditional estimate.
FastTrial eval_trial(const AuctionSpec& spec, const StrategyProfile& profile,
                     std::span<const double> values, double w, double tie_u) {
    double v1 = values[0];
    double v2 = -1.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double x = values[i];
        if (x > v1) {
            v2 = v1;
            v1 = x;
        } else if (x > v2) {
            v2 = x;
        }
    }

    const ValueDistribution& g = spec.g;
    FastTrial out;
    switch (spec.mode) {
        case Mode::OneShotSecondPrice: {
            out.realized = w >= v1 ? v1 : std::max(v2, w);
            out.conditional = v1 * (1.0 - g.cdf(v1)) + (mass_mean(g, v1) - mass_mean(g, v2)) +
                              v2 * g.cdf(v2);
            return out;
        }
        case Mode::NoCommitment: {
            const double theta2 = g.second_stage_gain(v2, v2);
            out.realized = theta2 + std::min(v1, w);
            out.conditional = theta2 + expected_min(g, v1);
            return out;
        }
        case Mode::CommitmentSymmetric:
        case Mode::CommitmentAsymmetric:
            break;
    }

    const double b_star = profile.first_stage.bid(v1);
    double stage1_charge = 0.0;
    if (spec.charge_stage1_in_commitment) {
        stage1_charge = profile.first_stage.bid(v2);
    }
    out.realized = std::min(b_star, w) + stage1_charge;
    out.conditional = expected_min(g, b_star) + stage1_charge;
    if (!spec.charge_stage1_in_commitment && out.realized > w) {
        out.above_entrant = true;
    }

    if (w > b_star) {
        // The entrant outbids the committed price; commitment bids exceed
        // values, so the entrant also holds the highest value.
        return out;
    }
    double owner_value = v1;
    if (spec.mode == Mode::CommitmentSymmetric) {
        int tied = 0;
        for (const double x : values) {
            if (profile.first_stage.bid(x) == b_star) ++tied;
        }
        if (tied > 1) {
            const int pick = pick_by_lottery(tied, tie_u);
            int seen = 0;
            for (const double x : values) {
                if (profile.first_stage.bid(x) == b_star && seen++ == pick) {
                    owner_value = x;
                    break;
                }
            }
        }
    }
    out.inefficient = owner_value < std::max(v1, w);
    return out;
}

struct ChunkAcc {
    double sum_r = 0.0;
    double sumsq_r = 0.0;
    double sum_c = 0.0;
    double sumsq_c = 0.0;
    std::uint64_t inefficient = 0;
    std::uint64_t above_entrant = 0;

    void add(const FastTrial& t) {
        sum_r += t.realized;
        sumsq_r += t.realized * t.realized;
        sum_c += t.conditional;
        sumsq_c += t.conditional * t.conditional;
        inefficient += t.inefficient ? 1 : 0;
        above_entrant += t.above_entrant ? 1 : 0;
    }
};

struct PairAcc {
    double sum_a = 0.0;
    double sum_b = 0.0;
    double sum_d = 0.0;
    double sumsq_d = 0.0;
};

void draw_trial(const AuctionSpec& spec, std::uint64_t seed, std::uint64_t trial,
                std::vector<double>& values, double& w, double& tie_u) {
    RandomStream rs(seed, trial);
    for (int i = 0; i < spec.n; ++i) values[static_cast<std::size_t>(i)] = spec.f.sample(rs);
    w = spec.g.sample(rs);
    tie_u = rs.next_double();
}

/// Runs `chunks(trials)` fixed-size blocks across the worker pool and hands
/// each finished block accumulator to `reduce` in block order. Identical
/// arithmetic for every thread count.
template <typename Acc, typename Body>
std::vector<Acc> run_chunked(std::uint64_t trials, int threads, const Body& body) {
    const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<Acc> accs(static_cast<std::size_t>(chunks));
    unsigned requested = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    requested = static_cast<unsigned>(
        std::min<std::uint64_t>(requested, std::max<std::uint64_t>(chunks, 1)));

    std::atomic<std::uint64_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) break;
            const std::uint64_t begin = c * kChunkTrials;
            const std::uint64_t end = std::min(trials, begin + kChunkTrials);
            Acc acc;
            body(begin, end, acc);
            accs[static_cast<std::size_t>(c)] = acc;
        }
    };
    if (requested <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(requested);
        for (unsigned i = 0; i < requested; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return accs;
}

double std_error_from_sums(double sum, double sumsq, std::uint64_t trials) {
    if (trials < 2) return 0.0;
    const auto t = static_cast<double>(trials);
    const double mean = sum / t;
    const double var = std::max(0.0, (sumsq - t * mean * mean) / (t - 1.0));
    return std::sqrt(var / t);
}

}  // namespace

StrategyProfile equilibrium_profile(const AuctionSpec& spec) {
    spec.validate();
    const double v_max = spec.f.support_hi();
    const double w_max = spec.g.support_hi();
    BidStrategy entrant = BidStrategy::truthful(w_max);
    BidStrategy winner_stage2 = BidStrategy::truthful(v_max);
    switch (spec.mode) {
        case Mode::NoCommitment:
            return {BidStrategy::no_commitment_first_stage(spec.g, v_max), winner_stage2,
                    entrant};
        case Mode::CommitmentSymmetric: {
            const CutoffResult cut = solve_cutoff(spec.n);
            return {BidStrategy::commitment_symmetric(spec.n, cut.v_hat, spec.cap_or_default()),
                    winner_stage2, entrant};
        }
        case Mode::CommitmentAsymmetric:
            return {BidStrategy::commitment_asymmetric(spec.n), winner_stage2, entrant};
        case Mode::OneShotSecondPrice:
            return {BidStrategy::truthful(v_max), winner_stage2, entrant};
    }
    throw ConfigError("unknown mode");
}

TrialOutcome run_trial_from_draws(const AuctionSpec& spec, const StrategyProfile& profile,
                                  std::span<const double> values, double entrant_value,
                                  double tie_u) {
    spec.validate();
    if (static_cast<int>(values.size()) != spec.n) {
        throw ConfigError("trial needs exactly n first-stage values");
    }

    TrialOutcome out;
    out.values.assign(values.begin(), values.end());
    out.entrant_value = entrant_value;
    out.stage1_bids.resize(values.size());

    if (spec.mode == Mode::OneShotSecondPrice) {
        for (std::size_t i = 0; i < values.size(); ++i) out.stage1_bids[i] = values[i];
    } else {
        for (std::size_t i = 0; i < values.size(); ++i) {
            out.stage1_bids[i] = profile.first_stage.bid(values[i]);
        }
    }

    double top_bid = out.stage1_bids[0];
    for (const double b : out.stage1_bids) top_bid = std::max(top_bid, b);
    int tied = 0;
    for (const double b : out.stage1_bids) tied += b == top_bid ? 1 : 0;
    int winner = 0;
    if (tied == 1) {
        winner = static_cast<int>(std::find(out.stage1_bids.begin(), out.stage1_bids.end(),
                                            top_bid) -
                                  out.stage1_bids.begin());
    } else {
        const int pick = pick_by_lottery(tied, tie_u);
        int seen = 0;
        for (std::size_t i = 0; i < out.stage1_bids.size(); ++i) {
            if (out.stage1_bids[i] == top_bid && seen++ == pick) {
                winner = static_cast<int>(i);
                break;
            }
        }
    }
    out.stage1_winner = winner;

    double second_bid = 0.0;
    for (std::size_t i = 0; i < out.stage1_bids.size(); ++i) {
        if (static_cast<int>(i) == winner) continue;
        second_bid = std::max(second_bid, out.stage1_bids[i]);
    }
    if (tied > 1) second_bid = top_bid;

    const double winner_value = out.values[static_cast<std::size_t>(winner)];
    double max_value = entrant_value;
    for (const double v : out.values) max_value = std::max(max_value, v);

    if (spec.mode == Mode::OneShotSecondPrice) {
        // All n + 1 bidders meet in one second-price auction.
        const double entrant_bid = profile.entrant.bid(entrant_value);
        if (entrant_bid > top_bid) {
            out.final_winner = Winner::Entrant;
            out.stage2_price = top_bid;
        } else {
            out.final_winner = Winner::FirstStageBidder;
            out.stage2_price = std::max(second_bid, entrant_bid);
        }
        out.winner_stage2_bid = top_bid;
        out.revenue = out.stage2_price;
        const double owner =
            out.final_winner == Winner::Entrant ? entrant_value : winner_value;
        out.efficient = owner >= max_value;
        return out;
    }

    const bool commits = mode_commits(spec.mode);
    out.winner_stage2_bid =
        commits ? out.stage1_bids[static_cast<std::size_t>(winner)]
                : profile.winner_second_stage.bid(winner_value);
    out.stage1_price =
        commits ? (spec.charge_stage1_in_commitment ? second_bid : 0.0) : second_bid;

    const double entrant_bid = profile.entrant.bid(entrant_value);
    if (entrant_bid > out.winner_stage2_bid) {
        out.final_winner = Winner::Entrant;
        out.stage2_price = out.winner_stage2_bid;
    } else {
        out.final_winner = Winner::FirstStageBidder;
        out.stage2_price = entrant_bid;
    }
    out.revenue = out.stage1_price + out.stage2_price;
    const double owner = out.final_winner == Winner::Entrant ? entrant_value : winner_value;
    out.efficient = owner >= max_value;
    return out;
}

TrialOutcome run_trial(const AuctionSpec& spec, const StrategyProfile& profile,
                       RandomStream& rng) {
    std::vector<double> values(static_cast<std::size_t>(spec.n));
    for (auto& v : values) v = spec.f.sample(rng);
    const double w = spec.g.sample(rng);
    const double tie_u = rng.next_double();
    return run_trial_from_draws(spec, profile, values, w, tie_u);
}

SimulationSummary run_simulation(const AuctionSpec& spec, std::uint64_t trials,
                                 std::uint64_t seed, int threads) {
    spec.validate();
    if (trials == 0) throw ConfigError("simulation needs at least one trial");
    const StrategyProfile profile = equilibrium_profile(spec);

    const auto accs = run_chunked<ChunkAcc>(
        trials, threads, [&](std::uint64_t begin, std::uint64_t end, ChunkAcc& acc) {
            std::vector<double> values(static_cast<std::size_t>(spec.n));
            double w = 0.0;
            double tie_u = 0.0;
            for (std::uint64_t t = begin; t < end; ++t) {
                draw_trial(spec, seed, t, values, w, tie_u);
                acc.add(eval_trial(spec, profile, values, w, tie_u));
            }
        });

    ChunkAcc total;
    for (const auto& a : accs) {
        total.sum_r += a.sum_r;
        total.sumsq_r += a.sumsq_r;
        total.sum_c += a.sum_c;
        total.sumsq_c += a.sumsq_c;
        total.inefficient += a.inefficient;
        total.above_entrant += a.above_entrant;
    }

    SimulationSummary out;
    const auto t = static_cast<double>(trials);
    out.realized = {spec.mode, spec.n,    trials,
                    seed,      Estimator::Realized, total.sum_r / t,
                    std_error_from_sums(total.sum_r, total.sumsq_r, trials)};
    out.conditional = {spec.mode, spec.n,    trials,
                       seed,      Estimator::Conditional, total.sum_c / t,
                       std_error_from_sums(total.sum_c, total.sumsq_c, trials)};
    out.inefficient_trials = total.inefficient;
    out.revenue_above_entrant_value = total.above_entrant;
    return out;
}

RevenueEstimate estimate_revenue(const AuctionSpec& spec, std::uint64_t trials,
                                 std::uint64_t seed, Estimator estimator, int threads) {
    const SimulationSummary summary = run_simulation(spec, trials, seed, threads);
    return estimator == Estimator::Realized ? summary.realized : summary.conditional;
}

PairedComparison estimate_revenue_paired(const AuctionSpec& spec_a, const AuctionSpec& spec_b,
                                         std::uint64_t trials, std::uint64_t seed,
                                         Estimator estimator, int threads) {
    spec_a.validate();
    spec_b.validate();
    if (trials == 0) throw ConfigError("simulation needs at least one trial");
    if (spec_a.n != spec_b.n) {
        throw ConfigError("paired comparison needs the same n on both sides");
    }
    const bool same_f = spec_a.f.kind() == spec_b.f.kind() &&
                        spec_a.f.support_lo() == spec_b.f.support_lo() &&
                        spec_a.f.support_hi() == spec_b.f.support_hi();
    const bool same_g = spec_a.g.kind() == spec_b.g.kind() &&
                        spec_a.g.support_lo() == spec_b.g.support_lo() &&
                        spec_a.g.support_hi() == spec_b.g.support_hi();
    if (!same_f || !same_g) {
        throw ConfigError("paired comparison needs the same value distributions on both sides");
    }

    const StrategyProfile prof_a = equilibrium_profile(spec_a);
    const StrategyProfile prof_b = equilibrium_profile(spec_b);
    const bool realized = estimator == Estimator::Realized;

    const auto accs = run_chunked<PairAcc>(
        trials, threads, [&](std::uint64_t begin, std::uint64_t end, PairAcc& acc) {
            std::vector<double> values(static_cast<std::size_t>(spec_a.n));
            double w = 0.0;
            double tie_u = 0.0;
            for (std::uint64_t t = begin; t < end; ++t) {
                draw_trial(spec_a, seed, t, values, w, tie_u);
                const FastTrial ta = eval_trial(spec_a, prof_a, values, w, tie_u);
                const FastTrial tb = eval_trial(spec_b, prof_b, values, w, tie_u);
                const double ra = realized ? ta.realized : ta.conditional;
                const double rb = realized ? tb.realized : tb.conditional;
                acc.sum_a += ra;
                acc.sum_b += rb;
                acc.sum_d += ra - rb;
                acc.sumsq_d += (ra - rb) * (ra - rb);
            }
        });

    PairAcc total;
    for (const auto& a : accs) {
        total.sum_a += a.sum_a;
        total.sum_b += a.sum_b;
        total.sum_d += a.sum_d;
        total.sumsq_d += a.sumsq_d;
    }

    PairedComparison out;
    out.mode_a = spec_a.mode;
    out.mode_b = spec_b.mode;
    out.n = spec_a.n;
    out.trials = trials;
    out.seed = seed;
    out.estimator = estimator;
    const auto t = static_cast<double>(trials);
    out.mean_a = total.sum_a / t;
    out.mean_b = total.sum_b / t;
    out.diff_mean = total.sum_d / t;
    out.diff_std_error = std_error_from_sums(total.sum_d, total.sumsq_d, trials);
    return out;
}

RevenueEstimate second_order_statistic_mean(const AuctionSpec& spec, std::uint64_t trials,
                                            std::uint64_t seed, int threads) {
    AuctionSpec bench = spec;
    bench.mode = Mode::OneShotSecondPrice;
    return estimate_revenue(bench, trials, seed, Estimator::Realized, threads);
}

double exact_revenue_nc_uniform(int n) {
    if (n < 2) throw ConfigError("tournament needs at least two first-stage bidders");
    return static_cast<double>(n) / (n + 2.0);
}

std::vector<TableRow> revenue_table(const std::vector<Mode>& modes,
                                    const std::vector<int>& n_values,
                                    const AuctionSpec& base, std::uint64_t trials,
                                    std::uint64_t seed, Estimator estimator, int threads) {
    if (modes.empty() || n_values.empty()) {
        throw ConfigError("revenue table needs at least one mode and one n");
    }
    const bool uniform01 =
        base.f.kind() == ValueDistribution::Kind::Uniform && base.f.support_lo() == 0.0 &&
        base.f.support_hi() == 1.0 && base.g.kind() == ValueDistribution::Kind::Uniform &&
        base.g.support_lo() == 0.0 && base.g.support_hi() == 1.0;

    std::vector<TableRow> rows;
    rows.reserve(modes.size() * n_values.size());
    for (const Mode mode : modes) {
        for (const int n : n_values) {
            TableRow row;
            row.mode = mode;
            row.n = n;
            row.trials = trials;
            row.seed = seed;
            try {
                AuctionSpec spec = base;
                spec.mode = mode;
                spec.n = n;
                const RevenueEstimate est =
                    estimate_revenue(spec, trials, seed, estimator, threads);
                row.mean = est.mean;
                row.std_error = est.std_error;
                if (uniform01 && !base.charge_stage1_in_commitment &&
                    (mode == Mode::NoCommitment || mode == Mode::OneShotSecondPrice)) {
                    row.has_exact = true;
                    row.exact = exact_revenue_nc_uniform(n);
                }
            } catch (const ConfigError& e) {
                row.error = e.what();
            } catch (const NumericalFault& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace tourney
