#include <cmath>
#include <vector>

#include "doctest.h"
#include "tournament/auction.hpp"
#include "tournament/error.hpp"
#include "tournament/random.hpp"
#include "tournament/simulation.hpp"

using namespace tourney;

namespace {

AuctionSpec make_spec(Mode mode, int n, double g_hi = 1.0) {
    AuctionSpec spec;
    spec.mode = mode;
    spec.n = n;
    spec.g = ValueDistribution::uniform(0.0, g_hi);
    return spec;
}

}  // namespace

TEST_CASE("mode tokens round-trip and accept aliases") {
    for (Mode m : {Mode::NoCommitment, Mode::CommitmentSymmetric, Mode::CommitmentAsymmetric,
                   Mode::OneShotSecondPrice}) {
        CHECK(mode_from_string(to_string(m)) == m);
    }
    CHECK(to_string(Mode::NoCommitment) == "no_commitment");
    CHECK(to_string(Mode::OneShotSecondPrice) == "one_shot_second_price");
    CHECK(mode_from_string("nc") == Mode::NoCommitment);
    CHECK(mode_from_string("CS") == Mode::CommitmentSymmetric);
    CHECK(mode_from_string("commitment-asymmetric") == Mode::CommitmentAsymmetric);
    CHECK(mode_from_string("one-shot") == Mode::OneShotSecondPrice);
    CHECK(mode_from_string("os") == Mode::OneShotSecondPrice);
    CHECK_THROWS_AS(mode_from_string("dutch"), ConfigError);
}

TEST_CASE("spec validation rejects bad regimes") {
    CHECK_THROWS_AS(make_spec(Mode::NoCommitment, 1).validate(), ConfigError);
    CHECK_THROWS_AS(make_spec(Mode::CommitmentAsymmetric, 2, 1.0).validate(), ConfigError);
    CHECK_NOTHROW(make_spec(Mode::CommitmentAsymmetric, 2, 4.0).validate());

    AuctionSpec low_cap = make_spec(Mode::CommitmentSymmetric, 2);
    low_cap.cap = 0.9;
    CHECK_THROWS_AS(low_cap.validate(), ConfigError);

    AuctionSpec cs_wide = make_spec(Mode::CommitmentSymmetric, 2, 4.0);
    CHECK_THROWS_AS(cs_wide.validate(), ConfigError);

    AuctionSpec short_entrant = make_spec(Mode::NoCommitment, 2);
    short_entrant.f = ValueDistribution::uniform(0.0, 4.0);
    CHECK_THROWS_AS(short_entrant.validate(), ConfigError);
}

TEST_CASE("worked trial: no commitment, n = 2") {
    const AuctionSpec spec = make_spec(Mode::NoCommitment, 2);
    const StrategyProfile profile = equilibrium_profile(spec);
    const std::vector<double> values{0.8, 0.6};
    const TrialOutcome out = run_trial_from_draws(spec, profile, values, 0.3, 0.0);
    CHECK(out.stage1_bids[0] == doctest::Approx(0.32).epsilon(1e-14));
    CHECK(out.stage1_bids[1] == doctest::Approx(0.18).epsilon(1e-14));
    CHECK(out.stage1_winner == 0);
    CHECK(out.stage1_price == doctest::Approx(0.18).epsilon(1e-14));
    CHECK(out.winner_stage2_bid == 0.8);
    CHECK(out.final_winner == Winner::FirstStageBidder);
    CHECK(out.stage2_price == 0.3);
    CHECK(out.revenue == doctest::Approx(0.48).epsilon(1e-14));
    CHECK(out.efficient);
}

TEST_CASE("worked trial: asymmetric commitment, entrant takes the good") {
    const AuctionSpec spec = make_spec(Mode::CommitmentAsymmetric, 2, 4.0);
    const StrategyProfile profile = equilibrium_profile(spec);
    const std::vector<double> values{0.9, 0.3};
    const TrialOutcome out = run_trial_from_draws(spec, profile, values, 1.5, 0.0);
    CHECK(out.stage1_bids[0] == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(out.stage1_bids[1] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(out.stage1_winner == 0);
    CHECK(out.stage1_price == 0.0);  // the first stage is free under commitment
    CHECK(out.winner_stage2_bid == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(out.final_winner == Winner::Entrant);
    CHECK(out.stage2_price == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(out.revenue == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(out.efficient);  // the entrant held the highest value
}

TEST_CASE("worked trial: symmetric commitment cap tie and lottery") {
    const AuctionSpec spec = make_spec(Mode::CommitmentSymmetric, 3);
    const StrategyProfile profile = equilibrium_profile(spec);
    REQUIRE(profile.first_stage.cutoff() < 0.7);
    const std::vector<double> values{0.7, 0.8, 0.9};

    const TrialOutcome first = run_trial_from_draws(spec, profile, values, 0.5, 0.0);
    CHECK(first.stage1_winner == 0);
    CHECK(first.winner_stage2_bid == 1.5);
    CHECK(first.stage2_price == 0.5);
    CHECK(first.revenue == 0.5);
    CHECK(!first.efficient);  // the lottery handed stage two to the 0.7 bidder

    const TrialOutcome mid = run_trial_from_draws(spec, profile, values, 0.5, 0.5);
    CHECK(mid.stage1_winner == 1);
    const TrialOutcome last = run_trial_from_draws(spec, profile, values, 0.5, 0.99);
    CHECK(last.stage1_winner == 2);
    CHECK(last.efficient);

    // experimental flag: the runner-up cap price is charged on top
    AuctionSpec charged = spec;
    charged.charge_stage1_in_commitment = true;
    const TrialOutcome paid = run_trial_from_draws(charged, profile, values, 0.5, 0.99);
    CHECK(paid.stage1_price == 1.5);
    CHECK(paid.revenue == doctest::Approx(2.0));
}

TEST_CASE("worked trial: one-shot benchmark sells at the second-highest value") {
    const AuctionSpec spec = make_spec(Mode::OneShotSecondPrice, 2);
    const StrategyProfile profile = equilibrium_profile(spec);
    const TrialOutcome out =
        run_trial_from_draws(spec, profile, std::vector<double>{0.8, 0.6}, 0.7, 0.0);
    CHECK(out.final_winner == Winner::FirstStageBidder);
    CHECK(out.revenue == 0.7);
    CHECK(out.efficient);

    const TrialOutcome taken =
        run_trial_from_draws(spec, profile, std::vector<double>{0.8, 0.6}, 0.95, 0.0);
    CHECK(taken.final_winner == Winner::Entrant);
    CHECK(taken.revenue == 0.8);
}

TEST_CASE("a trial consumes exactly n + 2 draws") {
    const AuctionSpec spec = make_spec(Mode::NoCommitment, 3);
    const StrategyProfile profile = equilibrium_profile(spec);
    RandomStream used(7, 0);
    run_trial(spec, profile, used);

    RandomStream fresh(7, 0);
    for (int i = 0; i < 5; ++i) fresh.next_double();
    CHECK(used.next_double() == fresh.next_double());
}

TEST_CASE("summary mean matches a manual replay of the same streams") {
    const AuctionSpec spec = make_spec(Mode::NoCommitment, 2);
    const StrategyProfile profile = equilibrium_profile(spec);
    const std::uint64_t trials = 4096;
    const std::uint64_t seed = 11;

    double sum = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RandomStream rs(seed, t);
        sum += run_trial(spec, profile, rs).revenue;
    }
    const SimulationSummary summary = run_simulation(spec, trials, seed);
    CHECK(summary.realized.mean == doctest::Approx(sum / trials).epsilon(1e-14));
}

TEST_CASE("thread count never changes the numbers") {
    for (Mode mode : {Mode::NoCommitment, Mode::CommitmentSymmetric}) {
        const AuctionSpec spec = make_spec(mode, 3);
        const SimulationSummary one = run_simulation(spec, 50000, 5, 1);
        const SimulationSummary four = run_simulation(spec, 50000, 5, 4);
        CHECK(one.realized.mean == four.realized.mean);
        CHECK(one.realized.std_error == four.realized.std_error);
        CHECK(one.conditional.mean == four.conditional.mean);
        CHECK(one.conditional.std_error == four.conditional.std_error);
        CHECK(one.inefficient_trials == four.inefficient_trials);
        CHECK(one.revenue_above_entrant_value == four.revenue_above_entrant_value);
    }
}

TEST_CASE("no-commitment revenue matches the exact benchmark") {
    CHECK(exact_revenue_nc_uniform(2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(exact_revenue_nc_uniform(3) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(exact_revenue_nc_uniform(8) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK_THROWS_AS(exact_revenue_nc_uniform(1), ConfigError);

    for (int n : {2, 8}) {
        const AuctionSpec spec = make_spec(Mode::NoCommitment, n);
        const SimulationSummary s = run_simulation(spec, 200000, 3);
        const double exact = exact_revenue_nc_uniform(n);
        CHECK(std::fabs(s.realized.mean - exact) <= 3.0 * s.realized.std_error);
        CHECK(std::fabs(s.conditional.mean - exact) <= 3.0 * s.conditional.std_error);
        // integrating the entrant out must shrink the error bar
        CHECK(s.conditional.std_error < s.realized.std_error);
        CHECK(s.inefficient_trials == 0);
    }
}

TEST_CASE("realized and conditional estimators agree") {
    const AuctionSpec spec = make_spec(Mode::CommitmentSymmetric, 4);
    const SimulationSummary s = run_simulation(spec, 200000, 9);
    CHECK(std::fabs(s.realized.mean - s.conditional.mean) <=
          3.0 * (s.realized.std_error + s.conditional.std_error));
}

TEST_CASE("error bars shrink like one over root trials") {
    const AuctionSpec spec = make_spec(Mode::NoCommitment, 2);
    const RevenueEstimate small = estimate_revenue(spec, 50000, 21);
    const RevenueEstimate large = estimate_revenue(spec, 200000, 21);
    const double ratio = small.std_error / large.std_error;
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.4);
}

TEST_CASE("symmetric commitment keeps revenue at or below the entrant value") {
    const AuctionSpec spec = make_spec(Mode::CommitmentSymmetric, 2);
    const SimulationSummary s = run_simulation(spec, 200000, 13);
    CHECK(s.revenue_above_entrant_value == 0);
    CHECK(s.inefficient_trials > 0);  // cap ties and shut-out entrants happen
    CHECK(s.conditional.mean + 3.0 * s.conditional.std_error < 0.5);
}

TEST_CASE("one-shot benchmark and the order-statistic helper coincide") {
    const AuctionSpec nc = make_spec(Mode::NoCommitment, 3);
    const AuctionSpec os = make_spec(Mode::OneShotSecondPrice, 3);
    const RevenueEstimate direct = estimate_revenue(os, 30000, 17);
    const RevenueEstimate helper = second_order_statistic_mean(nc, 30000, 17);
    CHECK(direct.mean == helper.mean);
    CHECK(direct.std_error == helper.std_error);
}

TEST_CASE("paired comparison: tournament versus one-shot on shared draws") {
    const AuctionSpec nc = make_spec(Mode::NoCommitment, 2);
    const AuctionSpec os = make_spec(Mode::OneShotSecondPrice, 2);
    const PairedComparison cmp = estimate_revenue_paired(nc, os, 200000, 29);
    // both mechanisms raise n/(n+2) in expectation
    CHECK(std::fabs(cmp.diff_mean) <= 4.0 * cmp.diff_std_error);
    CHECK(cmp.mean_a == doctest::Approx(0.5).epsilon(0.01));
    CHECK(cmp.mean_b == doctest::Approx(0.5).epsilon(0.01));

    const AuctionSpec bad_n = make_spec(Mode::OneShotSecondPrice, 3);
    CHECK_THROWS_AS(estimate_revenue_paired(nc, bad_n, 100, 1), ConfigError);
    const AuctionSpec bad_g = make_spec(Mode::OneShotSecondPrice, 2, 4.0);
    CHECK_THROWS_AS(estimate_revenue_paired(nc, bad_g, 100, 1), ConfigError);
}

TEST_CASE("commitment against a strong entrant beats no commitment") {
    const AuctionSpec ca = make_spec(Mode::CommitmentAsymmetric, 10, 4.0);
    const AuctionSpec nc = make_spec(Mode::NoCommitment, 10, 4.0);
    const PairedComparison cmp =
        estimate_revenue_paired(ca, nc, 100000, 31, Estimator::Conditional);
    CHECK(cmp.diff_mean > 0.3);
    CHECK(cmp.diff_mean > 6.0 * cmp.diff_std_error);
}

TEST_CASE("charging the first stage adds the runner-up price") {
    AuctionSpec plain = make_spec(Mode::CommitmentSymmetric, 2);
    AuctionSpec charged = plain;
    charged.charge_stage1_in_commitment = true;
    const RevenueEstimate a = estimate_revenue(plain, 20000, 41);
    const RevenueEstimate b = estimate_revenue(charged, 20000, 41);
    CHECK(b.mean > a.mean);
}

TEST_CASE("revenue sweep annotates bad rows and keeps the good ones") {
    const AuctionSpec base = make_spec(Mode::NoCommitment, 2);
    const std::vector<Mode> modes{Mode::NoCommitment, Mode::OneShotSecondPrice,
                                  Mode::CommitmentAsymmetric};
    const std::vector<TableRow> rows = revenue_table(modes, {2, 3}, base, 20000, 1);
    REQUIRE(rows.size() == 6);
    for (const TableRow& row : rows) {
        if (row.mode == Mode::CommitmentAsymmetric) {
            // uniform(0, 1) entrant violates the strong-entrant regime
            CHECK(!row.error.empty());
        } else {
            CHECK(row.error.empty());
            CHECK(row.has_exact);
            CHECK(row.exact == doctest::Approx(row.n / (row.n + 2.0)));
            CHECK(std::fabs(row.mean - row.exact) <= 4.0 * row.std_error);
        }
    }
    CHECK_THROWS_AS(revenue_table({}, {2}, base, 10, 1), ConfigError);
}
