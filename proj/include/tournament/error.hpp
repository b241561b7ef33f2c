#pragma once

#include <stdexcept>
#include <string>

namespace tourney {

/// Bad configuration or precondition violation: invalid cutoff bracket,
/// a spec/strategy mismatch, a distribution outside the regime a mode
/// requires, malformed descriptors. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine could not produce a trustworthy result: no root
/// found where one must exist, ODE state collapsing onto its singularity,
/// a solution escaping the value support. Maps to CLI exit code 3.
class NumericalFault : public std::runtime_error {
public:
    explicit NumericalFault(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tourney
