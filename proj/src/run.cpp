#include "tournament/run.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tournament/equilibrium.hpp"
#include "tournament/error.hpp"
#include "tournament/ode.hpp"
#include "tournament/report_io.hpp"
#include "tournament/simulation.hpp"
#include "tournament/verify.hpp"

namespace tourney {

namespace {

using nlohmann::json;

/// Numeric JSON fields carry the same 12-significant-digit rendering as CSV.
json json_num(double x) { return json(std::stod(fmt_g(x))); }

std::vector<int> parse_n_list(const std::string& spec) {
    std::vector<int> out;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ',')) {
        if (token.empty()) throw ConfigError("empty n token in: " + spec);
        const auto dots = token.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoi(token));
            } else {
                const int lo = std::stoi(token.substr(0, dots));
                const int hi = std::stoi(token.substr(dots + 2));
                if (hi < lo) throw ConfigError("descending n range: " + token);
                for (int n = lo; n <= hi; ++n) out.push_back(n);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad n token: " + token);
        }
    }
    if (out.empty()) throw ConfigError("no n values given");
    return out;
}

int parse_single_n(const std::string& spec, const char* who) {
    const std::vector<int> ns = parse_n_list(spec);
    if (ns.size() != 1) {
        throw ConfigError(std::string(who) + " takes a single n");
    }
    return ns[0];
}

Estimator parse_estimator(const std::string& s) {
    if (s == "realized") return Estimator::Realized;
    if (s == "conditional") return Estimator::Conditional;
    throw ConfigError("unknown estimator: " + s + " (want realized or conditional)");
}

VerifyBackend parse_backend(const std::string& s) {
    if (s == "analytic") return VerifyBackend::Analytic;
    if (s == "monte-carlo" || s == "monte_carlo" || s == "mc") return VerifyBackend::MonteCarlo;
    throw ConfigError("unknown verify backend: " + s);
}

std::string distribution_from_json(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_object()) {
        if (!j.contains("kind") || j.at("kind") != "uniform" || !j.contains("lo") ||
            !j.contains("hi")) {
            throw ConfigError("distribution object needs kind=uniform plus lo and hi");
        }
        return "uniform:" + fmt_g(j.at("lo").get<double>()) + ":" +
               fmt_g(j.at("hi").get<double>());
    }
    throw ConfigError("distribution must be a descriptor string or object");
}

/// Keys from the config file replace whatever the flags set.
void apply_config_file(RunConfig& cfg) {
    std::ifstream in(cfg.config_path);
    if (!in) throw ConfigError("cannot open config file: " + cfg.config_path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "subcommand") cfg.subcommand = value.get<std::string>();
            else if (key == "mode") cfg.mode = value.get<std::string>();
            else if (key == "modes") {
                cfg.modes.clear();
                if (value.is_string()) {
                    std::string token;
                    std::istringstream ms(value.get<std::string>());
                    while (std::getline(ms, token, ',')) cfg.modes.push_back(token);
                } else {
                    for (const auto& m : value) cfg.modes.push_back(m.get<std::string>());
                }
            } else if (key == "n") {
                if (value.is_number_integer()) {
                    cfg.n_spec = std::to_string(value.get<long long>());
                } else if (value.is_array()) {
                    std::string joined;
                    for (const auto& item : value) {
                        if (!joined.empty()) joined += ',';
                        joined += std::to_string(item.get<long long>());
                    }
                    cfg.n_spec = joined;
                } else {
                    cfg.n_spec = value.get<std::string>();
                }
            } else if (key == "f") cfg.f_desc = distribution_from_json(value);
            else if (key == "g") cfg.g_desc = distribution_from_json(value);
            else if (key == "cap") cfg.cap = value.get<double>();
            else if (key == "wbar") cfg.wbar = value.get<double>();
            else if (key == "cutoff") cfg.cutoff = value.get<double>();
            else if (key == "trials") cfg.trials = value.get<std::uint64_t>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "estimator") cfg.estimator = value.get<std::string>();
            else if (key == "versus") cfg.versus = value.get<std::string>();
            else if (key == "samples") cfg.samples = value.get<int>();
            else if (key == "step") cfg.step = value.get<double>();
            else if (key == "tol") cfg.tol = value.get<double>();
            else if (key == "backend") cfg.backend = value.get<std::string>();
            else if (key == "value_grid") cfg.value_grid = value.get<int>();
            else if (key == "bid_grid") cfg.bid_grid = value.get<int>();
            else if (key == "mc_trials") cfg.mc_trials = value.get<std::uint64_t>();
            else if (key == "charge_stage1") cfg.charge_stage1 = value.get<bool>();
            else if (key == "format") cfg.format = value.get<std::string>();
            else throw ConfigError("unknown config key: " + key);
        } catch (const json::exception& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
    if (cfg.seed) return *cfg.seed;
    if (const char* env = std::getenv(kSeedEnvVar)) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string(kSeedEnvVar) + " must be an unsigned integer");
        }
    }
    return 1;
}

AuctionSpec make_spec(const RunConfig& cfg, Mode mode, int n) {
    AuctionSpec spec;
    spec.mode = mode;
    spec.n = n;
    spec.f = parse_distribution(cfg.f_desc);
    spec.g = cfg.wbar ? ValueDistribution::uniform(0.0, *cfg.wbar)
                      : parse_distribution(cfg.g_desc);
    spec.cap = cfg.cap;
    spec.charge_stage1_in_commitment = cfg.charge_stage1;
    return spec;
}

json base_echo(const RunConfig& cfg, std::uint64_t seed) {
    json echo;
    echo["subcommand"] = cfg.subcommand;
    echo["format"] = cfg.format;
    echo["seed"] = seed;
    return echo;
}

void echo_spec(json& echo, const AuctionSpec& spec) {
    echo["f"] = distribution_token(spec.f);
    echo["g"] = distribution_token(spec.g);
    if (spec.mode == Mode::CommitmentSymmetric) echo["cap"] = json_num(spec.cap_or_default());
    echo["charge_stage1"] = spec.charge_stage1_in_commitment;
}

void write_csv_preamble(std::ostream& out, const json& echo) {
    out << "# config: " << echo.dump() << "\n";
}

std::string csv_opt(bool has, double value) { return has ? fmt_g(value) : std::string(); }

int cmd_cutoff(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    const std::vector<int> ns = parse_n_list(cfg.n_spec);
    std::vector<CutoffResult> rows;
    rows.reserve(ns.size());
    for (const int n : ns) rows.push_back(solve_cutoff(n));

    json echo = base_echo(cfg, seed);
    echo["n"] = ns;
    if (cfg.format == "json") {
        json jrows = json::array();
        for (const auto& r : rows) {
            json jr;
            jr["n"] = r.n;
            jr["v_hat"] = json_num(r.v_hat);
            jr["residual"] = json_num(r.residual);
            jr["bracket_lo"] = json_num(r.bracket_lo);
            jr["bracket_hi"] = json_num(r.bracket_hi);
            json changes = json::array();
            for (const double x : r.sign_changes) changes.push_back(json_num(x));
            jr["sign_changes"] = changes;
            jrows.push_back(jr);
        }
        out << json{{"config", echo}, {"rows", jrows}}.dump(2) << "\n";
        return kExitOk;
    }
    write_csv_preamble(out, echo);
    out << "n,v_hat,residual,bracket_lo,bracket_hi,sign_changes\n";
    for (const auto& r : rows) {
        out << r.n << ',' << fmt_g(r.v_hat) << ',' << fmt_g(r.residual) << ','
            << fmt_g(r.bracket_lo) << ',' << fmt_g(r.bracket_hi) << ','
            << r.sign_changes.size() << "\n";
    }
    return kExitOk;
}

int cmd_bid_curve(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    const int n = parse_single_n(cfg.n_spec, "bid-curve");
    const ValueDistribution f = parse_distribution(cfg.f_desc);
    const ValueDistribution g = cfg.wbar ? ValueDistribution::uniform(0.0, *cfg.wbar)
                                         : parse_distribution(cfg.g_desc);
    json echo = base_echo(cfg, seed);
    echo["mode"] = cfg.mode;
    echo["n"] = n;
    echo["f"] = distribution_token(f);
    echo["g"] = distribution_token(g);

    std::vector<std::pair<double, double>> points;
    if (cfg.mode == "ode") {
        const OdeSolution sol = solve_bid_ode(n, f, g, cfg.step);
        echo["step"] = json_num(sol.step);
        // Knot tables can run long; exports keep at most 1000 rows.
        const std::size_t stride = (sol.v.size() + 999) / 1000;
        for (std::size_t i = 0; i < sol.v.size(); i += stride) {
            points.emplace_back(sol.v[i], sol.b[i]);
        }
        if ((sol.v.size() - 1) % stride != 0) {
            points.emplace_back(sol.v.back(), sol.b.back());
        }
    } else {
        const Mode mode = mode_from_string(cfg.mode);
        AuctionSpec spec = make_spec(cfg, mode, n);
        spec.validate();
        const StrategyProfile profile = equilibrium_profile(spec);
        if (mode == Mode::CommitmentSymmetric) {
            echo["cap"] = json_num(profile.first_stage.cap());
            echo["cutoff"] = json_num(profile.first_stage.cutoff());
        }
        if (cfg.samples < 2) throw ConfigError("bid-curve needs at least two samples");
        const double v_max = spec.f.support_hi();
        for (int i = 0; i < cfg.samples; ++i) {
            const double v = v_max * i / (cfg.samples - 1.0);
            points.emplace_back(v, profile.first_stage.bid(v));
        }
    }

    if (cfg.format == "json") {
        json jrows = json::array();
        for (const auto& [v, b] : points) {
            jrows.push_back(json{{"v", json_num(v)}, {"bid", json_num(b)}});
        }
        out << json{{"config", echo}, {"rows", jrows}}.dump(2) << "\n";
        return kExitOk;
    }
    write_csv_preamble(out, echo);
    out << "v,bid\n";
    for (const auto& [v, b] : points) out << fmt_g(v) << ',' << fmt_g(b) << "\n";
    return kExitOk;
}

bool uniform01(const ValueDistribution& d) {
    return d.kind() == ValueDistribution::Kind::Uniform && d.support_lo() == 0.0 &&
           d.support_hi() == 1.0;
}

bool has_exact_benchmark(const AuctionSpec& spec) {
    return (spec.mode == Mode::NoCommitment || spec.mode == Mode::OneShotSecondPrice) &&
           uniform01(spec.f) && uniform01(spec.g) && !spec.charge_stage1_in_commitment;
}

int cmd_simulate(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    const int n = parse_single_n(cfg.n_spec, "simulate");
    const Mode mode = mode_from_string(cfg.mode);
    const Estimator estimator = parse_estimator(cfg.estimator);
    AuctionSpec spec = make_spec(cfg, mode, n);
    spec.validate();

    json echo = base_echo(cfg, seed);
    echo["mode"] = to_string(mode);
    echo["n"] = n;
    echo["trials"] = cfg.trials;
    echo["estimator"] = cfg.estimator;
    echo_spec(echo, spec);
    if (mode == Mode::CommitmentSymmetric) {
        echo["cutoff"] = json_num(solve_cutoff(n).v_hat);
    }

    if (!cfg.versus.empty()) {
        const Mode mode_b = mode_from_string(cfg.versus);
        AuctionSpec spec_b = make_spec(cfg, mode_b, n);
        spec_b.validate();
        echo["versus"] = to_string(mode_b);
        if (mode_b == Mode::CommitmentSymmetric) {
            echo["cutoff_versus"] = json_num(solve_cutoff(n).v_hat);
        }
        const PairedComparison cmp =
            estimate_revenue_paired(spec, spec_b, cfg.trials, seed, estimator, cfg.threads);
        if (cfg.format == "json") {
            json row;
            row["mode_a"] = to_string(cmp.mode_a);
            row["mode_b"] = to_string(cmp.mode_b);
            row["n"] = cmp.n;
            row["trials"] = cmp.trials;
            row["seed"] = cmp.seed;
            row["mean_a"] = json_num(cmp.mean_a);
            row["mean_b"] = json_num(cmp.mean_b);
            row["diff_mean"] = json_num(cmp.diff_mean);
            row["diff_stderr"] = json_num(cmp.diff_std_error);
            out << json{{"config", echo}, {"rows", json::array({row})}}.dump(2) << "\n";
            return kExitOk;
        }
        write_csv_preamble(out, echo);
        out << "mode_a,mode_b,n,trials,seed,mean_a,mean_b,diff_mean,diff_stderr\n";
        out << to_string(cmp.mode_a) << ',' << to_string(cmp.mode_b) << ',' << cmp.n << ','
            << cmp.trials << ',' << cmp.seed << ',' << fmt_g(cmp.mean_a) << ','
            << fmt_g(cmp.mean_b) << ',' << fmt_g(cmp.diff_mean) << ','
            << fmt_g(cmp.diff_std_error) << "\n";
        return kExitOk;
    }

    const RevenueEstimate est = estimate_revenue(spec, cfg.trials, seed, estimator, cfg.threads);
    const bool exact = has_exact_benchmark(spec);
    const double exact_value = exact ? exact_revenue_nc_uniform(n) : 0.0;
    if (cfg.format == "json") {
        json row;
        row["mode"] = to_string(est.mode);
        row["n"] = est.n;
        row["trials"] = est.trials;
        row["seed"] = est.seed;
        row["mean"] = json_num(est.mean);
        row["stderr"] = json_num(est.std_error);
        if (exact) row["exact"] = json_num(exact_value);
        out << json{{"config", echo}, {"rows", json::array({row})}}.dump(2) << "\n";
        return kExitOk;
    }
    write_csv_preamble(out, echo);
    out << "mode,n,trials,seed,mean,stderr,exact\n";
    out << to_string(est.mode) << ',' << est.n << ',' << est.trials << ',' << est.seed << ','
        << fmt_g(est.mean) << ',' << fmt_g(est.std_error) << ',' << csv_opt(exact, exact_value)
        << "\n";
    return kExitOk;
}

int cmd_table(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    const std::vector<int> ns = parse_n_list(cfg.n_spec);
    std::vector<std::string> mode_names = cfg.modes;
    if (mode_names.empty()) mode_names = {"no_commitment", "one_shot_second_price"};
    std::vector<Mode> modes;
    modes.reserve(mode_names.size());
    for (const auto& name : mode_names) modes.push_back(mode_from_string(name));
    const Estimator estimator = parse_estimator(cfg.estimator);

    json echo = base_echo(cfg, seed);
    {
        json jmodes = json::array();
        for (const Mode m : modes) jmodes.push_back(to_string(m));
        echo["modes"] = jmodes;
    }
    echo["n"] = ns;
    echo["trials"] = cfg.trials;
    echo["estimator"] = cfg.estimator;
    echo["f"] = cfg.f_desc;
    echo["g"] = cfg.wbar ? "uniform:0:" + fmt_g(*cfg.wbar) : cfg.g_desc;
    echo["charge_stage1"] = cfg.charge_stage1;
    if (cfg.cap) echo["cap"] = json_num(*cfg.cap);

    const AuctionSpec base = make_spec(cfg, modes.front(), ns.front());
    const std::vector<TableRow> rows =
        revenue_table(modes, ns, base, cfg.trials, seed, estimator, cfg.threads);

    if (cfg.format == "json") {
        json jrows = json::array();
        for (const auto& row : rows) {
            json jr;
            jr["mode"] = to_string(row.mode);
            jr["n"] = row.n;
            jr["trials"] = row.trials;
            jr["seed"] = row.seed;
            if (row.error.empty()) {
                jr["mean"] = json_num(row.mean);
                jr["stderr"] = json_num(row.std_error);
                if (row.has_exact) jr["exact"] = json_num(row.exact);
            } else {
                jr["error"] = row.error;
            }
            jrows.push_back(jr);
        }
        out << json{{"config", echo}, {"rows", jrows}}.dump(2) << "\n";
        return kExitOk;
    }
    write_csv_preamble(out, echo);
    out << "mode,n,trials,seed,mean,stderr,exact\n";
    for (const auto& row : rows) {
        out << to_string(row.mode) << ',' << row.n << ',' << row.trials << ',' << row.seed
            << ',';
        if (row.error.empty()) {
            out << fmt_g(row.mean) << ',' << fmt_g(row.std_error) << ','
                << csv_opt(row.has_exact, row.exact) << "\n";
        } else {
            out << ",,\n";
        }
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    const int n = parse_single_n(cfg.n_spec, "verify");
    const Mode mode = mode_from_string(cfg.mode);
    AuctionSpec spec = make_spec(cfg, mode, n);
    spec.validate();
    StrategyProfile profile = equilibrium_profile(spec);
    if (cfg.cutoff) {
        if (mode != Mode::CommitmentSymmetric) {
            throw ConfigError("--cutoff only applies to commitment_symmetric");
        }
        // Candidate cutoff supplied by the user; the verifier judges it.
        profile.first_stage =
            BidStrategy::commitment_symmetric(n, *cfg.cutoff, spec.cap_or_default());
    }

    VerifyOptions opt;
    opt.value_grid = cfg.value_grid;
    opt.bid_grid = cfg.bid_grid;
    opt.tol = cfg.tol;
    opt.backend = parse_backend(cfg.backend);
    opt.mc_trials = cfg.mc_trials;
    opt.seed = seed;

    json echo = base_echo(cfg, seed);
    echo["mode"] = to_string(mode);
    echo["n"] = n;
    echo["tol"] = json_num(cfg.tol);
    echo["backend"] = cfg.backend;
    echo["value_grid"] = cfg.value_grid;
    echo["bid_grid"] = cfg.bid_grid;
    echo_spec(echo, spec);
    if (mode == Mode::CommitmentSymmetric) {
        echo["cutoff"] = json_num(profile.first_stage.cutoff());
    }

    const VerificationReport first = verify_best_response(spec, profile.first_stage, opt);
    const VerificationReport entrant = verify_truthful_second_stage(spec, profile.first_stage, opt);

    const auto emit_row = [&](const char* check, const VerificationReport& r) {
        json jr;
        jr["check"] = check;
        jr["engine"] = r.engine;
        jr["max_gain"] = json_num(r.max_gain);
        jr["worst_value"] = json_num(r.worst_value);
        jr["worst_bid"] = json_num(r.worst_bid);
        jr["pass"] = r.pass;
        return jr;
    };

    if (cfg.format == "json") {
        out << json{{"config", echo},
                    {"rows", json::array({emit_row("first_stage", first),
                                          emit_row("entrant_truthful", entrant)})}}
                   .dump(2)
            << "\n";
    } else {
        write_csv_preamble(out, echo);
        out << "check,mode,n,engine,max_gain,worst_value,worst_bid,pass\n";
        const auto csv_row = [&](const char* name, const VerificationReport& r) {
            out << name << ',' << to_string(mode) << ',' << n << ',' << r.engine << ','
                << fmt_g(r.max_gain) << ',' << fmt_g(r.worst_value) << ',' << fmt_g(r.worst_bid)
                << ',' << (r.pass ? "true" : "false") << "\n";
        };
        csv_row("first_stage", first);
        csv_row("entrant_truthful", entrant);
    }
    return first.pass && entrant.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_limits(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    const ValueDistribution f = parse_distribution(cfg.f_desc);
    const ValueDistribution g = cfg.wbar ? ValueDistribution::uniform(0.0, *cfg.wbar)
                                         : parse_distribution(cfg.g_desc);
    const double top_value = f.support_hi();
    const LimitAnalysis la = limit_analysis(top_value, g);

    json echo = base_echo(cfg, seed);
    echo["f"] = distribution_token(f);
    echo["g"] = distribution_token(g);

    if (cfg.format == "json") {
        json row;
        row["top_value"] = json_num(top_value);
        row["limit_bid"] = json_num(la.limit_bid);
        row["revenue_commitment"] = json_num(la.revenue_commitment);
        row["revenue_no_commitment"] = json_num(la.revenue_no_commitment);
        out << json{{"config", echo}, {"rows", json::array({row})}}.dump(2) << "\n";
        return kExitOk;
    }
    write_csv_preamble(out, echo);
    out << "top_value,entrant,limit_bid,revenue_commitment,revenue_no_commitment\n";
    out << fmt_g(top_value) << ',' << distribution_token(g) << ',' << fmt_g(la.limit_bid) << ','
        << fmt_g(la.revenue_commitment) << ',' << fmt_g(la.revenue_no_commitment) << "\n";
    return kExitOk;
}

}  // namespace

int run_command(RunConfig cfg, std::ostream& out) {
    if (!cfg.config_path.empty()) apply_config_file(cfg);
    if (cfg.format != "csv" && cfg.format != "json") {
        throw ConfigError("format must be csv or json, got: " + cfg.format);
    }
    const std::uint64_t seed = resolve_seed(cfg);

    if (cfg.subcommand == "cutoff") return cmd_cutoff(cfg, seed, out);
    if (cfg.subcommand == "bid-curve") return cmd_bid_curve(cfg, seed, out);
    if (cfg.subcommand == "simulate") return cmd_simulate(cfg, seed, out);
    if (cfg.subcommand == "table") return cmd_table(cfg, seed, out);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, seed, out);
    if (cfg.subcommand == "limits") return cmd_limits(cfg, seed, out);
    throw ConfigError("unknown subcommand: " + cfg.subcommand);
}

}  // namespace tourney
