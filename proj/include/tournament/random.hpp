#pragma once

#include <array>
#include <cstdint>

namespace tourney {

/// Philox 4x32-10 block cipher (counter-based RNG core).
///
/// Counter-based generation is what makes Monte Carlo runs reproducible
/// independently of thread scheduling: every (seed, stream, block) triple
/// maps to the same 128 output bits no matter which worker asks for it.
inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    auto round = [](std::array<std::uint32_t, 4> x,
                    std::array<std::uint32_t, 2> k) -> std::array<std::uint32_t, 4> {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
    };

    for (int i = 0; i < 9; ++i) {
        ctr = round(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return round(ctr, key);
}

/// One logical random stream, identified by (seed, stream, domain).
///
/// Streams with distinct identifiers are statistically independent; the
/// simulator gives each trial its own stream id so trials can be computed
/// in any order (or on any thread) with identical draws. `domain` keeps
/// unrelated subsystems (trial draws, payoff cross-checks) from sharing
/// stream ids.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0,
                          std::uint32_t domain = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream),
          domain_(domain) {}

    std::uint64_t next_u64() {
        if (pair_ == 2) {
            const std::array<std::uint32_t, 4> ctr = {
                static_cast<std::uint32_t>(block_),
                domain_ + static_cast<std::uint32_t>(block_ >> 32),
                static_cast<std::uint32_t>(stream_),
                static_cast<std::uint32_t>(stream_ >> 32)};
            buf_ = philox4x32_10(ctr, key_);
            ++block_;
            pair_ = 0;
        }
        const std::uint64_t hi = buf_[2 * pair_];
        const std::uint64_t lo = buf_[2 * pair_ + 1];
        ++pair_;
        return (hi << 32) | lo;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint32_t domain_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pair_ = 2;
};

}  // namespace tourney
