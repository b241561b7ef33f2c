#include <cmath>

#include "doctest.h"
#include "tournament/distribution.hpp"
#include "tournament/error.hpp"
#include "tournament/random.hpp"

using tourney::ConfigError;
using tourney::NumericalFault;
using tourney::RandomStream;
using tourney::ValueDistribution;

TEST_CASE("uniform closed forms") {
    const ValueDistribution u01 = ValueDistribution::uniform(0.0, 1.0);
    CHECK(u01.cdf(0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(u01.pdf(0.3) == doctest::Approx(1.0));
    CHECK(u01.quantile(0.25) == doctest::Approx(0.25));
    CHECK(u01.mean() == doctest::Approx(0.5));
    CHECK(u01.cdf(-1.0) == 0.0);
    CHECK(u01.cdf(2.0) == 1.0);
    CHECK(u01.pdf(-0.1) == 0.0);
    CHECK(u01.pdf(1.1) == 0.0);

    const ValueDistribution u04 = ValueDistribution::uniform(0.0, 4.0);
    CHECK(u04.truncated_mean(4.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(u04.truncated_mean(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(u04.truncated_mean(9.0) == doctest::Approx(2.0).epsilon(1e-14));  // clamps
}

TEST_CASE("second-stage gain closed values") {
    const ValueDistribution u01 = ValueDistribution::uniform(0.0, 1.0);
    // integral over [0, 0.6] of (0.6 - x) dx = 0.6*(0.6 - 0.3)
    CHECK(u01.second_stage_gain(0.6, 0.6) == doctest::Approx(0.18).epsilon(1e-14));

    const ValueDistribution u04 = ValueDistribution::uniform(0.0, 4.0);
    // G(2) = 1/2, E[w | w <= 2] = 1, so the gain at v = 1 vanishes
    CHECK(u04.second_stage_gain(1.0, 2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(u04.second_stage_gain(1.0, 1.0) == doctest::Approx(0.25 * 0.5).epsilon(1e-14));
    CHECK(u04.second_stage_gain(0.5, 0.0) == 0.0);
}

TEST_CASE("gain grows with the bid below the value") {
    const ValueDistribution g = ValueDistribution::uniform(0.0, 1.0);
    const double v = 0.9;
    double prev = -1.0;
    for (int i = 0; i <= 90; ++i) {
        const double b = v * i / 90.0;
        const double gain = g.second_stage_gain(v, b);
        CHECK(gain >= prev);
        prev = gain;
    }
    // ...and shrinks once the bid passes the value
    CHECK(g.second_stage_gain(0.2, 0.9) < g.second_stage_gain(0.2, 0.2));
}

TEST_CASE("quantile and cdf invert each other") {
    const ValueDistribution u = ValueDistribution::uniform(0.0, 4.0);
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        CHECK(std::abs(u.cdf(u.quantile(p)) - p) <= 1e-12);
    }
}

TEST_CASE("degenerate truncation is a fault") {
    const ValueDistribution u = ValueDistribution::uniform(0.0, 1.0);
    CHECK_THROWS_AS(u.truncated_mean(0.0), NumericalFault);
    CHECK_THROWS_AS(u.truncated_mean(-0.5), NumericalFault);
}

TEST_CASE("support validation") {
    CHECK_THROWS_AS(ValueDistribution::uniform(1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(ValueDistribution::uniform(2.0, 1.0), ConfigError);
    CHECK_THROWS_AS(ValueDistribution::uniform(-0.5, 1.0), ConfigError);
    const ValueDistribution u = ValueDistribution::uniform(0.0, 1.0);
    CHECK_THROWS_AS(u.quantile(1.5), ConfigError);
    CHECK_THROWS_AS(u.quantile(-0.1), ConfigError);
}

TEST_CASE("custom family falls back to quadrature") {
    // Triangular-ish density 2x on [0, 1]: cdf x^2, quantile sqrt(p).
    const ValueDistribution tri = ValueDistribution::custom(
        0.0, 1.0, [](double x) { return 2.0 * x; }, [](double x) { return x * x; },
        [](double p) { return std::sqrt(p); });
    CHECK(tri.mean() == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(tri.truncated_mean(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    // integral over [0, 0.5] of (1 - x) 2x dx = 0.25 - 2/24
    CHECK(tri.second_stage_gain(1.0, 0.5) == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
    CHECK(tri.cdf(0.5) == doctest::Approx(0.25));

    RandomStream rs(7, 0);
    double sum = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) sum += tri.sample(rs);
    // se = sqrt(1/18)/sqrt(trials) ~ 7.5e-4
    CHECK(std::abs(sum / trials - 2.0 / 3.0) < 4.0 * 7.5e-4);
}

TEST_CASE("sampling follows the distribution") {
    const ValueDistribution u04 = ValueDistribution::uniform(0.0, 4.0);
    RandomStream rs(11, 3);
    double sum = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) sum += u04.sample(rs);
    // se = sqrt(16/12)/sqrt(trials) ~ 3.7e-3
    CHECK(std::abs(sum / trials - 2.0) < 4.0 * 3.7e-3);
}
