#include <cmath>
#include <vector>

#include "doctest.h"
#include "tournament/equilibrium.hpp"
#include "tournament/error.hpp"

using tourney::ConfigError;
using tourney::CutoffResult;
using tourney::NumericalFault;

TEST_CASE("cap-bid win probability closed values") {
    CHECK(tourney::cap_bid_win_prob(2, 0.5) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(tourney::cap_bid_win_prob(3, 0.5) == doctest::Approx(7.0 / 12.0).epsilon(1e-14));
    for (int n : {2, 3, 5, 10, 20}) {
        CHECK(tourney::cap_bid_win_prob(n, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(tourney::cap_bid_win_prob(n, 0.0) == doctest::Approx(1.0 / n).epsilon(1e-14));
    }
}

TEST_CASE("power-sum and tie-lottery forms agree") {
    for (int n : {2, 3, 5, 10, 20}) {
        for (int i = 0; i <= 50; ++i) {
            const double v = i / 50.0;
            const double a = tourney::cap_bid_win_prob(n, v);
            const double b = tourney::cap_bid_win_prob_binomial(n, v);
            CHECK(std::fabs(a - b) <= 1e-12);
        }
    }
}

TEST_CASE("cutoff-type payoffs, closed values at n = 2") {
    // v^3 * 4/9 at v = 0.6
    CHECK(tourney::linear_bid_payoff(2, 0.6) == doctest::Approx(0.096).epsilon(1e-14));
    // (v - 1/2) * (1 + v)/2 at v = 0.6
    CHECK(tourney::cap_bid_payoff(2, 0.6) == doctest::Approx(0.08).epsilon(1e-14));
}

TEST_CASE("cutoff solve: bracket, residual, location") {
    const CutoffResult r2 = tourney::solve_cutoff(2);
    CHECK(r2.n == 2);
    CHECK(r2.bracket_lo == doctest::Approx(0.5));
    CHECK(r2.bracket_hi == doctest::Approx(0.75));
    CHECK(r2.v_hat > 0.64);
    CHECK(r2.v_hat < 0.65);
    CHECK(r2.residual <= 1e-10);
    REQUIRE(!r2.sign_changes.empty());
    // the refined root lies inside the first flagged grid cell
    const double cell = (r2.bracket_hi - r2.bracket_lo) / 1e4;
    CHECK(r2.v_hat >= r2.sign_changes.front());
    CHECK(r2.v_hat <= r2.sign_changes.front() + cell);

    double prev = 1.0;
    for (int n = 2; n <= 20; ++n) {
        const CutoffResult r = tourney::solve_cutoff(n);
        CHECK(r.residual <= 1e-10);
        CHECK(r.v_hat > r.bracket_lo);
        CHECK(r.v_hat < r.bracket_hi);
        CHECK(r.v_hat < prev);  // cutoff shrinks toward 1/2 as n grows
        prev = r.v_hat;
    }
    CHECK_THROWS_AS(tourney::solve_cutoff(1), ConfigError);
}

TEST_CASE("symmetric interim payoff: branch seams and the cap jump") {
    const CutoffResult r = tourney::solve_cutoff(3);
    const int n = r.n;
    const double vh = r.v_hat;
    const double cap = 1.5;
    const double k = 2.0 * n / (n + 1.0);

    for (double v : {0.2, 0.55, vh, 0.8, 1.0}) {
        // continuity where the rivals' linear range ends and where bids pass 1
        for (double seam : {k * vh, 1.0}) {
            const double below = tourney::interim_payoff_symmetric(seam - 1e-9, v, n, vh, cap);
            const double at = tourney::interim_payoff_symmetric(seam, v, n, vh, cap);
            CHECK(std::fabs(below - at) <= 1e-7);
        }
        // tying the cap beats sitting just under it whenever v > 1/2
        const double under_cap = tourney::interim_payoff_symmetric(cap - 1e-9, v, n, vh, cap);
        const double at_cap = tourney::interim_payoff_symmetric(cap, v, n, vh, cap);
        if (v > 0.5) CHECK(at_cap > under_cap);
    }

    // on the linear branch the interim payoff reproduces the closed form
    for (double v : {0.1, 0.3, 0.55, vh}) {
        CHECK(tourney::interim_payoff_symmetric(k * v, v, n, vh, cap) ==
              doctest::Approx(tourney::linear_bid_payoff(n, v)).epsilon(1e-12));
    }

    // the solved cutoff type is indifferent between its two candidate bids
    const double lin = tourney::interim_payoff_symmetric(k * vh, vh, n, vh, cap);
    const double jump = tourney::interim_payoff_symmetric(cap, vh, n, vh, cap);
    CHECK(std::fabs(lin - jump) <= 1e-10);
}

TEST_CASE("symmetric interim payoff: equilibrium bid is a best response on a grid") {
    const CutoffResult r = tourney::solve_cutoff(2);
    const double cap = 1.5;
    const double k = 4.0 / 3.0;
    for (double v : {0.2, 0.5, r.v_hat - 0.01, r.v_hat + 0.01, 0.9}) {
        const double own =
            v <= r.v_hat ? k * v : cap;
        const double base = tourney::interim_payoff_symmetric(own, v, 2, r.v_hat, cap);
        for (int i = 0; i <= 300; ++i) {
            const double b = cap * i / 300.0;
            const double dev = tourney::interim_payoff_symmetric(b, v, 2, r.v_hat, cap);
            CHECK(dev <= base + 1e-9);
        }
    }
}

TEST_CASE("asymmetric interim payoff: seams, closed form, best response") {
    const int n = 2;
    const double w_bar = 4.0;
    const double k = 4.0 / 3.0;

    for (double v : {0.2, 0.6, 1.0}) {
        for (double seam : {k, w_bar}) {
            const double below = tourney::interim_payoff_asymmetric(seam - 1e-9, v, n, w_bar);
            const double at = tourney::interim_payoff_asymmetric(seam, v, n, w_bar);
            CHECK(std::fabs(below - at) <= 1e-7);
        }
        // linear-branch closed form: (b/k)^(n-1) (v b - b^2/2) / w_bar
        const double b = k * v;
        CHECK(tourney::interim_payoff_asymmetric(b, v, n, w_bar) ==
              doctest::Approx(v * (v * b - b * b / 2.0) / w_bar).epsilon(1e-12));

        const double base = tourney::interim_payoff_asymmetric(k * v, v, n, w_bar);
        for (int i = 0; i <= 400; ++i) {
            const double dev_b = 5.0 * i / 400.0;
            const double dev = tourney::interim_payoff_asymmetric(dev_b, v, n, w_bar);
            CHECK(dev <= base + 1e-9);
        }
    }

    CHECK_THROWS_AS(tourney::interim_payoff_asymmetric(1.0, 0.5, 2, 1.5), ConfigError);
    CHECK_THROWS_AS(tourney::interim_payoff_asymmetric(1.0, 0.5, 1, 4.0), ConfigError);
}
