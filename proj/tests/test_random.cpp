#include <array>
#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "tournament/random.hpp"

using tourney::philox4x32_10;
using tourney::RandomStream;

TEST_CASE("philox known-answer vectors") {
    // Reference vectors from the published Philox4x32-10 test suite.
    const std::array<std::uint32_t, 4> zero =
        philox4x32_10({0u, 0u, 0u, 0u}, {0u, 0u});
    CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu,
                                               0x9b00dbd8u});

    const std::array<std::uint32_t, 4> ones = philox4x32_10(
        {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    CHECK(ones == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u,
                                               0x6d5451fdu});

    const std::array<std::uint32_t, 4> pi = philox4x32_10(
        {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    CHECK(pi == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u,
                                             0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
    RandomStream a(42, 7);
    RandomStream b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RandomStream c(42, 8);
    RandomStream d(43, 7);
    RandomStream e(42, 7, 1);
    RandomStream base(42, 7);
    bool differs_stream = false;
    bool differs_seed = false;
    bool differs_domain = false;
    for (int i = 0; i < 10; ++i) {
        const std::uint64_t r = base.next_u64();
        differs_stream |= c.next_u64() != r;
        differs_seed |= d.next_u64() != r;
        differs_domain |= e.next_u64() != r;
    }
    CHECK(differs_stream);
    CHECK(differs_seed);
    CHECK(differs_domain);
}

TEST_CASE("doubles live in [0,1) with 53-bit resolution") {
    RandomStream rs(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rs.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double scaled = u * 0x1.0p53;
        CHECK(scaled == std::floor(scaled));
    }
}

TEST_CASE("draws average to one half") {
    RandomStream rs(2026, 0);
    const int trials = 100000;
    double sum = 0.0;
    for (int i = 0; i < trials; ++i) sum += rs.next_double();
    const double mean = sum / trials;
    // se = sqrt(1/12)/sqrt(trials) ~ 9.1e-4
    CHECK(std::abs(mean - 0.5) < 4.0 * 9.2e-4);
}
