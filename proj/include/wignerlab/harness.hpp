#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wignerlab/ensembles.hpp"
#include "wignerlab/oracles.hpp"
#include "wignerlab/potential.hpp"

namespace wignerlab {

/// Invalid configuration (maps to CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct EnsembleChoice {
    bool is_er = false;
    std::string offdiag = "real-gaussian"; // entry-law name, or "er"
    double offdiag_param = 1.0;            // variance / bernoulli p where applicable
    std::string custom_spec;               // "v=p,v=p,..." for custom-discrete
    std::string diag = "zero";             // "zero" or "real-gaussian"
    double diag_param = 0.0;
    double er_p = 0.3;

    EntryDistribution make_offdiag() const;
    EntryDistribution make_diag() const;
    WignerSpec make_wigner_spec(std::size_t n) const;
    std::string describe() const;
};

struct ExperimentConfig {
    EnsembleChoice ensemble;
    std::uint64_t master_seed = 1;
    int sample_count = 100;
    std::vector<std::size_t> n_list = {100};
    std::vector<double> delta_grid;    // empty -> {k log n / n, k in {1,2,4,8,16}} per n
    std::vector<double> z_grid = {0.0, 1.0, -1.0, 1.9, -1.9};
    std::vector<double> epsilon_grid = {0.05, 0.1, 0.2};
    double epsilon = 0.1;              // fixed eps for the per-record edge mass
    double quad_tol = 1e-5;
    int quad_max_panels = 80000;
    int er_interval_checks = 50;
    int threads = 0;                   // 0 -> env override or hardware concurrency
    std::string out_path;              // empty -> stdout
    OutputFormat format = OutputFormat::Json;

    bool is_er() const { return ensemble.is_er; }

    void validate() const; // throws ConfigError

    /// delta grid for a given n (the configured one, or the log n / n rule).
    std::vector<double> deltas_for(std::size_t n) const;
};

/// Distances and masses of one sampled matrix.
struct DiscrepancyRecord {
    std::size_t n = 0;
    std::uint64_t seed_index = 0;
    double dist = 0.0;               // dist_potential vs semicircle
    double dist_err_bound = 0.0;     // quadrature error estimate + far-field bound
    double w1 = 0.0;
    double sup_interval = 0.0;
    double mass_outside_supp = 0.0;  // outside [-2,2]
    double edge_mass = 0.0;          // outside [-2+eps^{4/5}, 2-eps^{4/5}], configured eps
    double gap = 0.0;                // potential_gap on the default grid
    double i0_dev = 0.0;             // |mu(I0) - sc(I0)| for I0 = [-1,1]
    double i0_fattened_dev = 0.0;    // worst one-sided fattened-interval violation at eps = sqrt(gap)
    bool ok = true;                  // false when the eigensolver failed
};

struct TailEntry {
    double delta = 0.0;
    double frac_sup_gt_sqrt_delta = 0.0;
    double frac_dist_gt_delta = 0.0;
};

struct TailReport {
    std::size_t n = 0;
    std::vector<TailEntry> entries;
    std::optional<double> fitted_A;  // from least squares of log frac vs -delta n
    double r_squared = 0.0;
};

struct SemicircleExperimentReport {
    std::vector<DiscrepancyRecord> records;
    std::vector<TailReport> tails;
    int failures = 0;
    std::string config_description;
};

struct BoundSweepCell {
    std::size_t n = 0;
    double z = 0.0;
    double log_mean_abs2 = 0.0; // log E|Q_Wn(z)|^2, Monte Carlo
    double rel_std_error = 0.0; // sd/mean/sqrt(N) of the |Q|^2 samples
    double log_bound = 0.0;     // log(n^4 e^{alpha + beta/2} e^{n(z^2/2 - 1)})
    double log_ratio = 0.0;
    double ratio = 0.0;
};

struct BoundSweepReport {
    std::vector<BoundSweepCell> cells;
    double alpha = 0.0;
    double beta = 0.0;
    std::string config_description;
};

struct ErSampleRecord {
    std::uint64_t seed_index = 0;
    double sup_interval_raw = 0.0;      // ESD of W_n vs semicircle
    double sup_interval_centered = 0.0; // ESD of W'_n vs semicircle
    int max_interval_count_diff = 0;    // max |count_{W''}(I) - count_W(I)| over checks
    int interlacing_violations = 0;     // intervals where |diff| > 1
};

struct ErExperimentReport {
    std::size_t n = 0;
    double p = 0.0;
    std::vector<ErSampleRecord> samples;
    double median_sup_interval_centered = 0.0;
    int total_interlacing_violations = 0;
    int failures = 0;
};

struct EndpointSample {
    std::uint64_t seed_index = 0;
    double gap = 0.0;
    double eps = 0.0;        // sqrt(max(gap, 0))
    double edge_mass = 0.0;  // outside [-2+eps^{4/5}, 2-eps^{4/5}]
    double ratio = 0.0;      // edge_mass / eps^{6/5}; 0 when eps == 0
    double l1_ratio = -1.0;  // integral_{K_eps}|u-u0| / eps^3; -1 when not computed
};

struct EndpointGridEntry {
    double eps = 0.0;
    double mean_edge_mass = 0.0;
};

struct EndpointReport {
    std::size_t n = 0;
    std::vector<EndpointSample> samples;
    std::vector<EndpointGridEntry> grid;
    double median_ratio = 0.0;
    int failures = 0;
};

struct OracleCheck {
    std::string name;
    std::string params;
    std::string lhs;
    std::string rhs;
    bool pass = true;
};

struct OracleReport {
    std::vector<OracleCheck> checks;
    bool all_pass = true;
};

SemicircleExperimentReport run_semicircle_experiment(const ExperimentConfig& cfg);
BoundSweepReport run_bound_sweep(const ExperimentConfig& cfg);
std::vector<ErExperimentReport> run_er_experiment(const ExperimentConfig& cfg);
std::vector<EndpointReport> run_endpoint_experiment(const ExperimentConfig& cfg,
                                                    const std::vector<double>& epsilon_grid);
OracleReport run_oracle_suite();

/// CSV of the discrepancy records: header row naming every field, decimal
/// values at 17 significant digits. Identical config -> identical bytes.
void emit_records_csv(const std::vector<DiscrepancyRecord>& records, std::ostream& out);
std::vector<DiscrepancyRecord> parse_records_csv(std::istream& in);

std::string to_json(const SemicircleExperimentReport& report);
std::string to_json(const BoundSweepReport& report);
std::string to_json(const std::vector<ErExperimentReport>& reports);
std::string to_json(const std::vector<EndpointReport>& reports);
std::string to_json(const OracleReport& report);

/// Flat `key = value` config file; '#' starts a comment. Unknown keys throw.
std::map<std::string, std::string> parse_config_file(const std::string& path);
void apply_config_entries(ExperimentConfig& cfg, const std::map<std::string, std::string>& entries);

/// Worker count: explicit value, else WIGNERLAB_THREADS, else hardware.
int resolve_thread_count(int configured);

} // namespace wignerlab
