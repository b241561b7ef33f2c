#pragma once

#include <string>

#include "tournament/distribution.hpp"

namespace tourney {

/// Floating-point rendering used for every numeric field the CLI emits:
/// 12 significant digits, locale-independent.
std::string fmt_g(double x);

/// Parses a "uniform:LO:HI" descriptor.
ValueDistribution parse_distribution(const std::string& desc);

/// Round-trip descriptor for config echoes.
std::string distribution_token(const ValueDistribution& d);

}  // namespace tourney
