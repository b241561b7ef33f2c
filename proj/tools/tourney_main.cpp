#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tournament/error.hpp"
#include "tournament/run.hpp"

namespace {

void add_output_options(CLI::App* sub, tourney::RunConfig& cfg, std::string& out_path) {
    sub->add_option("--seed", cfg.seed,
                    "RNG seed (default: $" + std::string(tourney::kSeedEnvVar) + ", then 1)");
    sub->add_option("--format", cfg.format, "Output format: csv or json")
        ->capture_default_str();
    sub->add_option("--out", out_path, "Write the report to this file instead of stdout");
    sub->add_option("--config", cfg.config_path,
                    "JSON file whose keys override the command-line flags");
    sub->add_option("--threads", cfg.threads,
                    "Worker threads (0 = all cores); results are thread-count independent")
        ->capture_default_str();
}

void add_spec_options(CLI::App* sub, tourney::RunConfig& cfg) {
    sub->add_option("--f", cfg.f_desc, "First-stage value distribution, uniform:LO:HI")
        ->capture_default_str();
    sub->add_option("--g", cfg.g_desc, "Entrant value distribution, uniform:LO:HI")
        ->capture_default_str();
    sub->add_option("--wbar", cfg.wbar, "Shortcut for --g uniform:0:WBAR");
    sub->add_option("--cap", cfg.cap, "Symmetric-commitment bid cap (default 1.5)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stage tournament second-price auctions: equilibrium strategies, "
                 "Monte Carlo revenue, and numerical certification"};
    app.require_subcommand(1);

    tourney::RunConfig cfg;
    std::string out_path;

    CLI::App* cutoff = app.add_subcommand(
        "cutoff", "Solve the symmetric-commitment cutoff type for each n");
    cutoff->add_option("--n", cfg.n_spec, "n values: '2', '2,5,8' or '2..10'")
        ->capture_default_str();
    add_output_options(cutoff, cfg, out_path);

    CLI::App* curve = app.add_subcommand(
        "bid-curve", "Tabulate the equilibrium first-stage bid function");
    curve->add_option("--mode", cfg.mode,
                      "no_commitment | commitment_symmetric | commitment_asymmetric | "
                      "one_shot_second_price | ode")
        ->capture_default_str();
    curve->add_option("--n", cfg.n_spec, "Number of first-stage bidders")
        ->capture_default_str();
    curve->add_option("--samples", cfg.samples, "Grid points on the value support")
        ->capture_default_str();
    curve->add_option("--step", cfg.step, "ODE step override (0 = span/1e4)");
    add_spec_options(curve, cfg);
    add_output_options(curve, cfg, out_path);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo revenue of one mechanism (optionally paired vs another)");
    simulate->add_option("--mode", cfg.mode, "Mechanism")->capture_default_str();
    simulate->add_option("--n", cfg.n_spec, "Number of first-stage bidders")
        ->capture_default_str();
    simulate->add_option("--trials", cfg.trials, "Monte Carlo trials")->capture_default_str();
    simulate->add_option("--estimator", cfg.estimator, "realized | conditional")
        ->capture_default_str();
    simulate->add_option("--versus", cfg.versus,
                         "Second mechanism fed identical draws; reports the paired difference");
    simulate->add_flag("--charge-stage1", cfg.charge_stage1,
                       "Experimental: charge the stage-1 runner-up price in commitment modes");
    add_spec_options(simulate, cfg);
    add_output_options(simulate, cfg, out_path);

    CLI::App* table = app.add_subcommand(
        "table", "Revenue sweep over modes and n with exact benchmarks where known");
    table->add_option("--modes", cfg.modes, "Comma-separated mechanisms")->delimiter(',');
    table->add_option("--n", cfg.n_spec, "n values: '2', '2,5,8' or '2..10'")
        ->capture_default_str();
    table->add_option("--trials", cfg.trials, "Monte Carlo trials per row")
        ->capture_default_str();
    table->add_option("--estimator", cfg.estimator, "realized | conditional")
        ->capture_default_str();
    table->add_flag("--charge-stage1", cfg.charge_stage1,
                    "Experimental: charge the stage-1 runner-up price in commitment modes");
    add_spec_options(table, cfg);
    add_output_options(table, cfg, out_path);

    CLI::App* verify = app.add_subcommand(
        "verify", "Certify the equilibrium strategy as a best response");
    verify->add_option("--mode", cfg.mode, "Mechanism")->capture_default_str();
    verify->add_option("--n", cfg.n_spec, "Number of first-stage bidders")
        ->capture_default_str();
    verify->add_option("--tol", cfg.tol, "Max tolerated deviation gain (analytic backend)")
        ->capture_default_str();
    verify->add_option("--backend", cfg.backend, "analytic | monte-carlo")
        ->capture_default_str();
    verify->add_option("--value-grid", cfg.value_grid, "Own-value grid points")
        ->capture_default_str();
    verify->add_option("--bid-grid", cfg.bid_grid, "Deviation-bid grid points")
        ->capture_default_str();
    verify->add_option("--mc-trials", cfg.mc_trials, "Trials per value, monte-carlo backend")
        ->capture_default_str();
    verify->add_option("--cutoff", cfg.cutoff,
                       "Candidate symmetric-commitment cutoff to judge instead of the solved one");
    add_spec_options(verify, cfg);
    add_output_options(verify, cfg, out_path);

    CLI::App* limits = app.add_subcommand(
        "limits", "Large-n commitment limit: top bid and revenue comparison");
    add_spec_options(limits, cfg);
    add_output_options(limits, cfg, out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? tourney::kExitOk : tourney::kExitConfigError;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    std::ostringstream report;
    int rc = tourney::kExitOk;
    try {
        rc = tourney::run_command(cfg, report);
    } catch (const tourney::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return tourney::kExitConfigError;
    } catch (const tourney::NumericalFault& e) {
        std::cerr << "numerical fault: " << e.what() << "\n";
        return tourney::kExitNumericalFault;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tourney::kExitNumericalFault;
    }

    if (out_path.empty()) {
        std::cout << report.str();
    } else {
        std::ofstream file(out_path);
        if (!file) {
            std::cerr << "config error: cannot write " << out_path << "\n";
            return tourney::kExitConfigError;
        }
        file << report.str();
    }
    return rc;
}
