#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tourney {

/// Exit codes shared by the CLI and the in-process runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFault = 3;
inline constexpr int kExitVerificationFailed = 4;

/// One fully described run. String fields hold the raw CLI tokens; they are
/// parsed and validated when the run executes, so a config file can override
/// any of them first.
struct RunConfig {
    std::string subcommand;            // cutoff | bid-curve | simulate | table | verify | limits
    std::string mode = "no_commitment";
    std::vector<std::string> modes;    // table; empty = {no_commitment, one_shot_second_price}
    std::string n_spec = "2";          // "5", "2,3,8" and "2..10" forms combine
    std::string f_desc = "uniform:0:1";
    std::string g_desc = "uniform:0:1";
    std::optional<double> cap;
    std::optional<double> wbar;        // shortcut: entrant values uniform(0, wbar)
    std::optional<double> cutoff;      // verify: candidate cutoff instead of the solved one
    std::uint64_t trials = 1000000;
    std::optional<std::uint64_t> seed; // fallback: TOURNAMENT_SEED, then 1
    std::string estimator = "realized";  // realized | conditional
    std::string versus;                // simulate: second mode for a paired run
    int samples = 201;                 // bid-curve grid points
    double step = 0.0;                 // bid-curve ODE step override (0 = default)
    double tol = 1e-6;                 // verify
    std::string backend = "analytic";  // verify: analytic | monte-carlo
    int value_grid = 101;              // verify
    int bid_grid = 201;                // verify
    std::uint64_t mc_trials = 20000;   // verify monte-carlo backend
    bool charge_stage1 = false;        // experimental commitment stage-1 charge
    int threads = 0;                   // 0 = hardware concurrency; never echoed
    std::string format = "csv";       // csv | json
    std::string config_path;           // JSON file whose keys override the above
};

/// Executes the run and writes the report to `out`. Returns kExitOk or
/// kExitVerificationFailed; configuration and numerical problems surface as
/// ConfigError / NumericalFault for the caller to map to exit codes.
int run_command(RunConfig cfg, std::ostream& out);

/// Environment variable consulted for the seed when the config leaves it
/// empty.
inline constexpr const char* kSeedEnvVar = "TOURNAMENT_SEED";

}  // namespace tourney
