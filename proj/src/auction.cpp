#include "tournament/auction.hpp"

#include <cctype>
#include <cmath>

#include "tournament/error.hpp"

namespace tourney {

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::NoCommitment: return "no_commitment";
        case Mode::CommitmentSymmetric: return "commitment_symmetric";
        case Mode::CommitmentAsymmetric: return "commitment_asymmetric";
        case Mode::OneShotSecondPrice: return "one_shot_second_price";
    }
    return "unknown";
}

Mode mode_from_string(const std::string& name) {
    std::string key;
    key.reserve(name.size());
    for (const char c : name) {
        key.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (key == "no_commitment" || key == "nc") return Mode::NoCommitment;
    if (key == "commitment_symmetric" || key == "cs") return Mode::CommitmentSymmetric;
    if (key == "commitment_asymmetric" || key == "ca") return Mode::CommitmentAsymmetric;
    if (key == "one_shot_second_price" || key == "one_shot" || key == "os") {
        return Mode::OneShotSecondPrice;
    }
    throw ConfigError("unknown mode: " + name);
}

bool mode_commits(Mode mode) {
    return mode == Mode::CommitmentSymmetric || mode == Mode::CommitmentAsymmetric;
}

namespace {

bool is_uniform01(const ValueDistribution& d) {
    return d.kind() == ValueDistribution::Kind::Uniform &&
           d.support_lo() == 0.0 && d.support_hi() == 1.0;
}

}  // namespace

void AuctionSpec::validate() const {
    if (n < 2) throw ConfigError("tournament needs at least two first-stage bidders");
    if (f.support_lo() != 0.0 || g.support_lo() != 0.0) {
        throw ConfigError("value supports must start at 0");
    }
    if (g.support_hi() < f.support_hi()) {
        throw ConfigError("the entrant's top value must not fall below the first-stage top value");
    }
    switch (mode) {
        case Mode::CommitmentSymmetric:
            if (!is_uniform01(f) || !is_uniform01(g)) {
                throw ConfigError(
                    "symmetric commitment is solved for uniform(0, 1) values on both sides");
            }
            if (!(cap_or_default() > 1.0)) {
                throw ConfigError("symmetric commitment cap must exceed the top value 1");
            }
            break;
        case Mode::CommitmentAsymmetric: {
            if (f.kind() != ValueDistribution::Kind::Uniform ||
                g.kind() != ValueDistribution::Kind::Uniform || f.support_hi() != 1.0) {
                throw ConfigError(
                    "asymmetric commitment is solved for uniform values with first-stage top value 1");
            }
            if (!(g.mean() > f.support_hi())) {
                throw ConfigError(
                    "asymmetric commitment needs the entrant's mean value above the first-stage top value");
            }
            break;
        }
        case Mode::NoCommitment:
        case Mode::OneShotSecondPrice:
            break;
    }
    if (cap && !(*cap > 1.0)) {
        throw ConfigError("bid cap must exceed the top value 1");
    }
}

}  // namespace tourney
