// Command line front end: oracle suite and the Monte Carlo experiments.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wignerlab/harness.hpp"

namespace {

using namespace wignerlab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonFlags {
    std::string config_path;
    std::map<std::string, std::string> overrides;
};

void add_common_options(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "flat key = value config file");
    auto capture = [&flags](const std::string& key) {
        return [&flags, key](const std::string& v) { flags.overrides[key] = v; };
    };
    cmd->add_option_function<std::string>("--seed", capture("seed"), "master seed (uint64)");
    cmd->add_option_function<std::string>("--samples", capture("samples"), "samples per n");
    cmd->add_option_function<std::string>("--n", capture("n"), "comma list of matrix sizes");
    cmd->add_option_function<std::string>("--ensemble", capture("ensemble"),
                                          "real-gaussian | complex-gaussian | rademacher | "
                                          "centered-bernoulli:<p> | er");
    cmd->add_option_function<std::string>("--diag", capture("diag"),
                                          "diagonal law: zero | real-gaussian:<var>");
    cmd->add_option_function<std::string>("--p", capture("p"), "edge probability for er");
    cmd->add_option_function<std::string>("--deltas", capture("deltas"), "comma list of deltas");
    cmd->add_option_function<std::string>("--z", capture("zgrid"), "comma list of z values");
    cmd->add_option_function<std::string>("--eps-grid", capture("eps-grid"),
                                          "comma list of epsilons");
    cmd->add_option_function<std::string>("--epsilon", capture("epsilon"),
                                          "fixed epsilon for the per-record edge mass");
    cmd->add_option_function<std::string>("--quad-tol", capture("quad-tol"),
                                          "dist quadrature absolute tolerance");
    cmd->add_option_function<std::string>("--quad-max-panels", capture("quad-max-panels"),
                                          "dist quadrature panel cap");
    cmd->add_option_function<std::string>("--intervals", capture("intervals"),
                                          "interval checks per er sample");
    cmd->add_option_function<std::string>("--threads", capture("threads"),
                                          "worker threads (0 = auto)");
    cmd->add_option_function<std::string>("--out", capture("out"), "output path (default stdout)");
    cmd->add_option_function<std::string>("--format", capture("format"), "csv | json");
}

ExperimentConfig build_config(const CommonFlags& flags) {
    ExperimentConfig cfg;
    if (!flags.config_path.empty()) {
        apply_config_entries(cfg, parse_config_file(flags.config_path));
    }
    apply_config_entries(cfg, flags.overrides);
    return cfg;
}

void write_output(const ExperimentConfig& cfg, const std::string& payload) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + cfg.out_path);
    out << payload;
    if (!payload.empty() && payload.back() != '\n') out << '\n';
}

bool failure_rate_excessive(int failures, std::size_t total) {
    return total > 0 && static_cast<double>(failures) > 0.001 * static_cast<double>(total);
}

int cmd_oracle(const CommonFlags& flags) {
    ExperimentConfig cfg = build_config(flags);
    const OracleReport report = run_oracle_suite();
    write_output(cfg, to_json(report));
    int failed = 0;
    for (const OracleCheck& c : report.checks) {
        if (!c.pass) ++failed;
    }
    std::cerr << "oracle: " << report.checks.size() - failed << "/" << report.checks.size()
              << " checks passed\n";
    return report.all_pass ? kExitOk : kExitCheckFailure;
}

int cmd_wigner(const CommonFlags& flags) {
    ExperimentConfig cfg = build_config(flags);
    const SemicircleExperimentReport report = run_semicircle_experiment(cfg);
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream out;
        emit_records_csv(report.records, out);
        write_output(cfg, out.str());
    } else {
        write_output(cfg, to_json(report));
    }
    std::cerr << "wigner: " << report.records.size() << " records, " << report.failures
              << " failures\n";
    return failure_rate_excessive(report.failures, report.records.size()) ? kExitCheckFailure
                                                                          : kExitOk;
}

int cmd_bound(const CommonFlags& flags) {
    ExperimentConfig cfg = build_config(flags);
    if (cfg.format == OutputFormat::Csv) throw ConfigError("bound: csv output not supported");
    const BoundSweepReport report = run_bound_sweep(cfg);
    write_output(cfg, to_json(report));
    std::cerr << "bound: " << report.cells.size() << " cells\n";
    return kExitOk;
}

int cmd_er(const CommonFlags& flags) {
    CommonFlags with_er = flags;
    with_er.overrides.emplace("ensemble", "er"); // only if not explicitly set
    ExperimentConfig cfg = build_config(with_er);
    if (!cfg.is_er()) throw ConfigError("er: ensemble must be 'er'");
    if (cfg.format == OutputFormat::Csv) throw ConfigError("er: csv output not supported");
    const auto reports = run_er_experiment(cfg);
    write_output(cfg, to_json(reports));
    int violations = 0, failures = 0;
    std::size_t total = 0;
    for (const auto& r : reports) {
        violations += r.total_interlacing_violations;
        failures += r.failures;
        total += r.samples.size();
    }
    std::cerr << "er: " << total << " samples, " << violations << " interlacing violations\n";
    if (violations > 0) return kExitCheckFailure;
    return failure_rate_excessive(failures, total) ? kExitCheckFailure : kExitOk;
}

int cmd_endpoint(const CommonFlags& flags) {
    ExperimentConfig cfg = build_config(flags);
    if (cfg.format == OutputFormat::Csv) throw ConfigError("endpoint: csv output not supported");
    const auto reports = run_endpoint_experiment(cfg, cfg.epsilon_grid);
    write_output(cfg, to_json(reports));
    int failures = 0;
    std::size_t total = 0;
    for (const auto& r : reports) {
        failures += r.failures;
        total += r.samples.size();
    }
    std::cerr << "endpoint: " << total << " samples\n";
    return failure_rate_excessive(failures, total) ? kExitCheckFailure : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for spectral measures of Wigner matrices"};
    app.require_subcommand(1);

    CommonFlags oracle_flags, wigner_flags, bound_flags, er_flags, endpoint_flags;
    CLI::App* oracle = app.add_subcommand("oracle", "run every exact identity and bound check");
    add_common_options(oracle, oracle_flags);
    CLI::App* wigner = app.add_subcommand("wigner", "semicircle discrepancy experiment");
    add_common_options(wigner, wigner_flags);
    CLI::App* bound = app.add_subcommand("bound", "E|Q(z)|^2 bound-shape sweep");
    add_common_options(bound, bound_flags);
    CLI::App* er = app.add_subcommand("er", "Erdos-Renyi spectra and interlacing");
    add_common_options(er, er_flags);
    CLI::App* endpoint = app.add_subcommand("endpoint", "edge-mass decay experiment");
    add_common_options(endpoint, endpoint_flags);

    try {
        app.parse(argc, argv);
        if (oracle->parsed()) return cmd_oracle(oracle_flags);
        if (wigner->parsed()) return cmd_wigner(wigner_flags);
        if (bound->parsed()) return cmd_bound(bound_flags);
        if (er->parsed()) return cmd_er(er_flags);
        if (endpoint->parsed()) return cmd_endpoint(endpoint_flags);
        return kExitConfigError;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfigError;
    } catch (const wignerlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailure;
    }
}
