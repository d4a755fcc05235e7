#include "wignerlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace wignerlab {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return (v.size() % 2) ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int workers =
        static_cast<int>(std::min(static_cast<std::size_t>(threads), count));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

Seed sample_seed(std::uint64_t master, std::size_t n, std::size_t sample) {
    return derive_seed(master, (static_cast<std::uint64_t>(n) << 32) ^ sample);
}

} // namespace

int resolve_thread_count(int configured) {
    if (configured > 0) return configured;
    if (const char* env = std::getenv("WIGNERLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// ---------------------------------------------------------------------------
// Configuration.
// ---------------------------------------------------------------------------

EntryDistribution EnsembleChoice::make_offdiag() const {
    if (offdiag == "real-gaussian") return EntryDistribution::real_gaussian(offdiag_param);
    if (offdiag == "complex-gaussian") return EntryDistribution::complex_gaussian_unit();
    if (offdiag == "rademacher") return EntryDistribution::rademacher();
    if (offdiag == "centered-bernoulli") return EntryDistribution::centered_bernoulli(offdiag_param);
    if (offdiag == "custom-discrete") {
        // "v=p,v=p,..."
        std::vector<double> support, probs;
        std::istringstream in(custom_spec);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("custom-discrete entries must look like value=prob: " + tok);
            }
            try {
                support.push_back(std::stod(tok.substr(0, eq)));
                probs.push_back(std::stod(tok.substr(eq + 1)));
            } catch (const std::exception&) {
                throw ConfigError("bad custom-discrete entry: " + tok);
            }
        }
        try {
            return EntryDistribution::custom_discrete(std::move(support), std::move(probs));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("custom-discrete: ") + e.what());
        }
    }
    throw ConfigError("unknown off-diagonal distribution: " + offdiag);
}

EntryDistribution EnsembleChoice::make_diag() const {
    if (diag == "zero") return EntryDistribution::real_gaussian(0.0);
    if (diag == "real-gaussian") return EntryDistribution::real_gaussian(diag_param);
    throw ConfigError("unknown diagonal distribution: " + diag);
}

WignerSpec EnsembleChoice::make_wigner_spec(std::size_t n) const {
    return WignerSpec(n, make_offdiag(), make_diag());
}

std::string EnsembleChoice::describe() const {
    std::ostringstream out;
    if (is_er) {
        out << "er(p=" << er_p << ")";
    } else {
        out << offdiag;
        if (offdiag == "centered-bernoulli") out << "(" << offdiag_param << ")";
        if (offdiag == "custom-discrete") out << "(" << custom_spec << ")";
        out << "/diag=" << diag;
        if (diag == "real-gaussian") out << "(" << diag_param << ")";
    }
    return out.str();
}

void ExperimentConfig::validate() const {
    if (sample_count < 1) throw ConfigError("sample_count must be >= 1");
    if (n_list.empty()) throw ConfigError("n list must not be empty");
    for (std::size_t n : n_list) {
        if (n == 0) throw ConfigError("matrix sizes must be positive");
    }
    for (double d : delta_grid) {
        if (!(d > 0.0)) throw ConfigError("delta grid values must be positive");
    }
    for (double e : epsilon_grid) {
        if (!(e > 0.0 && e <= 1.0)) throw ConfigError("epsilon grid values must be in (0,1]");
    }
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must be in (0,1]");
    if (is_er()) {
        if (!(ensemble.er_p > 0.0 && ensemble.er_p <= 0.5)) {
            throw ConfigError("er: p must be in (0, 1/2]");
        }
    } else {
        try {
            ensemble.make_wigner_spec(n_list.front());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("ensemble: ") + e.what());
        }
    }
    if (quad_tol <= 0.0) throw ConfigError("quad_tol must be positive");
}

std::vector<double> ExperimentConfig::deltas_for(std::size_t n) const {
    if (!delta_grid.empty()) return delta_grid;
    std::vector<double> out;
    const double base = std::log(static_cast<double>(n)) / static_cast<double>(n);
    for (int k : {1, 2, 4, 8, 16}) out.push_back(k * base);
    return out;
}

// ---------------------------------------------------------------------------
// Semicircle (Wigner) experiment.
// ---------------------------------------------------------------------------

namespace {

DiscrepancyRecord make_record(std::size_t n, std::uint64_t seed_index, const AtomicMeasure& mu,
                              const std::vector<double>& gap_grid, const ExperimentConfig& cfg) {
    DiscrepancyRecord rec;
    rec.n = n;
    rec.seed_index = seed_index;

    QuadratureOptions qopts;
    qopts.abs_tol = cfg.quad_tol;
    qopts.max_panels = cfg.quad_max_panels;
    const QuadratureResult qr = dist_potential_detailed(mu, SemicircleLaw{}, qopts);
    rec.dist = qr.value;
    rec.dist_err_bound = qr.error_estimate + qr.tail_bound;

    rec.w1 = w1_distance(mu, SemicircleLaw{});
    rec.sup_interval = interval_discrepancy(mu, SemicircleLaw{});
    rec.mass_outside_supp = mass_outside(mu, -2.0, 2.0);
    rec.gap = potential_gap(mu, gap_grid);

    const double eta = std::pow(cfg.epsilon, 0.8);
    rec.edge_mass = mass_outside(mu, -2.0 + eta, 2.0 - eta);

    rec.i0_dev = std::fabs((mu.cdf(1.0) - mu.cdf_left(-1.0)) - (sc_cdf(1.0) - sc_cdf(-1.0)));

    const double eps = std::sqrt(std::max(rec.gap, 0.0));
    if (eps > 0.0) {
        const double sc_i0 = sc_cdf(1.0) - sc_cdf(-1.0);
        const double mu_fat = mu.cdf_left(1.0 + eps) - mu.cdf(-1.0 - eps);
        const double sc_fat2 = sc_cdf(1.0 + 2.0 * eps) - sc_cdf(-1.0 - 2.0 * eps);
        rec.i0_fattened_dev = std::max(sc_i0 - mu_fat, mu_fat - sc_fat2);
    }
    return rec;
}

TailReport make_tail_report(std::size_t n, const std::vector<const DiscrepancyRecord*>& recs,
                            const std::vector<double>& deltas) {
    TailReport tail;
    tail.n = n;
    std::size_t ok_count = 0;
    for (const auto* r : recs) {
        if (r->ok) ++ok_count;
    }
    for (double delta : deltas) {
        TailEntry e;
        e.delta = delta;
        const double root = std::sqrt(delta);
        std::size_t sup_hits = 0, dist_hits = 0;
        for (const auto* r : recs) {
            if (!r->ok) continue;
            if (r->sup_interval > root) ++sup_hits;
            if (r->dist > delta) ++dist_hits;
        }
        if (ok_count > 0) {
            e.frac_sup_gt_sqrt_delta = static_cast<double>(sup_hits) / ok_count;
            e.frac_dist_gt_delta = static_cast<double>(dist_hits) / ok_count;
        }
        tail.entries.push_back(e);
    }
    // least squares of log(frac) against x = delta * n; decay rate 1/A
    std::vector<double> xs, ys;
    for (const TailEntry& e : tail.entries) {
        if (e.frac_sup_gt_sqrt_delta > 0.0) {
            xs.push_back(e.delta * static_cast<double>(n));
            ys.push_back(std::log(e.frac_sup_gt_sqrt_delta));
        }
    }
    if (xs.size() >= 2) {
        const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
        const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
            syy += (ys[i] - my) * (ys[i] - my);
        }
        if (sxx > 0.0 && syy > 0.0) {
            const double slope = sxy / sxx;
            tail.r_squared = (sxy * sxy) / (sxx * syy);
            if (slope < 0.0) tail.fitted_A = -1.0 / slope;
        }
    }
    return tail;
}

} // namespace

SemicircleExperimentReport run_semicircle_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.is_er()) throw ConfigError("run_semicircle_experiment expects a Wigner ensemble");

    struct Job {
        std::size_t n;
        std::size_t sample;
    };
    std::vector<Job> jobs;
    for (std::size_t n : cfg.n_list) {
        for (int s = 0; s < cfg.sample_count; ++s) {
            jobs.push_back({n, static_cast<std::size_t>(s)});
        }
    }

    const std::vector<double> gap_grid = chebyshev_grid();
    SemicircleExperimentReport report;
    report.records.resize(jobs.size());
    report.config_description = cfg.ensemble.describe();

    parallel_for(jobs.size(), resolve_thread_count(cfg.threads), [&](std::size_t j) {
        const Job job = jobs[j];
        const WignerSpec spec = cfg.ensemble.make_wigner_spec(job.n);
        const Seed seed = sample_seed(cfg.master_seed, job.n, job.sample);
        const HermitianMatrix W = scale_to_w(sample_wigner(spec, seed));
        try {
            const AtomicMeasure mu = esd(W);
            report.records[j] = make_record(job.n, job.sample, mu, gap_grid, cfg);
        } catch (const IterationLimitError&) {
            DiscrepancyRecord rec;
            rec.n = job.n;
            rec.seed_index = job.sample;
            rec.ok = false;
            report.records[j] = rec;
        }
    });

    for (const DiscrepancyRecord& r : report.records) {
        if (!r.ok) ++report.failures;
    }
    for (std::size_t n : cfg.n_list) {
        std::vector<const DiscrepancyRecord*> recs;
        for (const DiscrepancyRecord& r : report.records) {
            if (r.n == n) recs.push_back(&r);
        }
        report.tails.push_back(make_tail_report(n, recs, cfg.deltas_for(n)));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Expectation bound sweep.
// ---------------------------------------------------------------------------

BoundSweepReport run_bound_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.is_er()) throw ConfigError("run_bound_sweep expects a Wigner ensemble");
    if (cfg.z_grid.empty()) throw ConfigError("bound sweep needs a z grid");

    BoundSweepReport report;
    report.config_description = cfg.ensemble.describe();

    for (std::size_t n : cfg.n_list) {
        const WignerSpec spec = cfg.ensemble.make_wigner_spec(n);
        report.alpha = spec.alpha();
        report.beta = spec.beta();
        const std::size_t samples = static_cast<std::size_t>(cfg.sample_count);
        const std::size_t zcount = cfg.z_grid.size();
        std::vector<double> logs(samples * zcount);

        parallel_for(samples, resolve_thread_count(cfg.threads), [&](std::size_t s) {
            const Seed seed = sample_seed(cfg.master_seed, n, s);
            const HermitianMatrix W = scale_to_w(sample_wigner(spec, seed));
            for (std::size_t zi = 0; zi < zcount; ++zi) {
                logs[s * zcount + zi] =
                    2.0 * log_abs_charpoly(W, ComplexPoint(cfg.z_grid[zi], 0.0));
            }
        });

        for (std::size_t zi = 0; zi < zcount; ++zi) {
            const double z = cfg.z_grid[zi];
            double peak = -std::numeric_limits<double>::infinity();
            for (std::size_t s = 0; s < samples; ++s) {
                peak = std::max(peak, logs[s * zcount + zi]);
            }
            double sum = 0.0, sumsq = 0.0;
            for (std::size_t s = 0; s < samples; ++s) {
                const double w = std::exp(logs[s * zcount + zi] - peak);
                sum += w;
                sumsq += w * w;
            }
            const double mean_shift = sum / samples;
            const double var_shift =
                std::max(0.0, sumsq / samples - mean_shift * mean_shift);
            BoundSweepCell cell;
            cell.n = n;
            cell.z = z;
            cell.log_mean_abs2 = peak + std::log(mean_shift);
            cell.rel_std_error =
                std::sqrt(var_shift / samples) / mean_shift;
            cell.log_bound = 4.0 * std::log(static_cast<double>(n)) + report.alpha +
                             0.5 * report.beta +
                             static_cast<double>(n) * (0.5 * z * z - 1.0);
            cell.log_ratio = cell.log_mean_abs2 - cell.log_bound;
            cell.ratio = std::exp(cell.log_ratio);
            report.cells.push_back(cell);
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Erdos-Renyi experiment.
// ---------------------------------------------------------------------------

namespace {

int count_in_halfopen(const std::vector<double>& sorted, double a, double b) {
    return static_cast<int>(std::upper_bound(sorted.begin(), sorted.end(), b) -
                            std::upper_bound(sorted.begin(), sorted.end(), a));
}

} // namespace

std::vector<ErExperimentReport> run_er_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.is_er()) throw ConfigError("run_er_experiment expects the er ensemble");
    const double p = cfg.ensemble.er_p;

    std::vector<ErExperimentReport> reports;
    for (std::size_t n : cfg.n_list) {
        ErExperimentReport report;
        report.n = n;
        report.p = p;
        report.samples.resize(static_cast<std::size_t>(cfg.sample_count));
        std::vector<char> failed(report.samples.size(), 0);

        const double shift =
            p / (std::sqrt(p * (1.0 - p)) * std::sqrt(static_cast<double>(n)));

        parallel_for(report.samples.size(), resolve_thread_count(cfg.threads), [&](std::size_t s) {
            const Seed seed = sample_seed(cfg.master_seed, n, s);
            const HermitianMatrix A = sample_er_adjacency(n, p, seed);
            const HermitianMatrix W = er_normalize(A, p);
            // W'' = W - shift*J; the centered W' is W'' + shift*I, so its
            // spectrum is the W'' spectrum translated by shift.
            HermitianMatrix Wpp(n);
            for (std::size_t i = 0; i < n; ++i) {
                Wpp.set(i, i, W(i, i).real() - shift);
                for (std::size_t j = i + 1; j < n; ++j) {
                    Wpp.set(i, j, W(i, j) - shift);
                }
            }
            try {
                const Spectrum sw = eigenvalues(W);
                const Spectrum spp = eigenvalues(Wpp);
                std::vector<double> centered(spp.eigenvalues);
                for (double& x : centered) x += shift;

                ErSampleRecord rec;
                rec.seed_index = s;
                rec.sup_interval_raw =
                    interval_discrepancy(AtomicMeasure(sw.eigenvalues), SemicircleLaw{});
                rec.sup_interval_centered =
                    interval_discrepancy(AtomicMeasure(centered), SemicircleLaw{});

                RngStream ivals(derive_seed(cfg.master_seed ^ 0xE2C0FFEEULL,
                                            (static_cast<std::uint64_t>(n) << 32) ^ s));
                for (int k = 0; k < cfg.er_interval_checks; ++k) {
                    double a = -3.0 + 6.0 * ivals.next_uniform();
                    double b = -3.0 + 6.0 * ivals.next_uniform();
                    if (a > b) std::swap(a, b);
                    const int diff = count_in_halfopen(spp.eigenvalues, a, b) -
                                     count_in_halfopen(sw.eigenvalues, a, b);
                    rec.max_interval_count_diff =
                        std::max(rec.max_interval_count_diff, std::abs(diff));
                    if (std::abs(diff) > 1) ++rec.interlacing_violations;
                }
                report.samples[s] = rec;
            } catch (const IterationLimitError&) {
                failed[s] = 1;
                report.samples[s].seed_index = s;
            }
        });

        std::vector<double> sups;
        for (std::size_t s = 0; s < report.samples.size(); ++s) {
            if (failed[s]) {
                ++report.failures;
                continue;
            }
            sups.push_back(report.samples[s].sup_interval_centered);
            report.total_interlacing_violations += report.samples[s].interlacing_violations;
        }
        report.median_sup_interval_centered = median_of(std::move(sups));
        reports.push_back(std::move(report));
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Endpoint experiment.
// ---------------------------------------------------------------------------

std::vector<EndpointReport> run_endpoint_experiment(const ExperimentConfig& cfg,
                                                    const std::vector<double>& epsilon_grid) {
    cfg.validate();
    if (cfg.is_er()) throw ConfigError("run_endpoint_experiment expects a Wigner ensemble");
    for (double e : epsilon_grid) {
        if (!(e > 0.0 && e <= 1.0)) throw ConfigError("epsilon grid values must be in (0,1]");
    }

    const std::vector<double> gap_grid = chebyshev_grid();
    const std::size_t l1_samples = std::min<std::size_t>(cfg.sample_count, 8);

    std::vector<EndpointReport> reports;
    for (std::size_t n : cfg.n_list) {
        EndpointReport report;
        report.n = n;
        report.samples.resize(static_cast<std::size_t>(cfg.sample_count));
        std::vector<char> failed(report.samples.size(), 0);
        std::vector<std::vector<double>> grid_masses(epsilon_grid.size());
        for (auto& g : grid_masses) g.resize(report.samples.size(), 0.0);

        const WignerSpec spec = cfg.ensemble.make_wigner_spec(n);
        parallel_for(report.samples.size(), resolve_thread_count(cfg.threads), [&](std::size_t s) {
            const Seed seed = sample_seed(cfg.master_seed, n, s);
            const HermitianMatrix W = scale_to_w(sample_wigner(spec, seed));
            try {
                const AtomicMeasure mu = esd(W);
                EndpointSample rec;
                rec.seed_index = s;
                rec.gap = potential_gap(mu, gap_grid);
                rec.eps = std::sqrt(std::max(rec.gap, 0.0));
                if (rec.eps > 0.0) {
                    const double eta = std::pow(rec.eps, 0.8);
                    rec.edge_mass = mass_outside(mu, -2.0 + eta, 2.0 - eta);
                    rec.ratio = rec.edge_mass / std::pow(rec.eps, 1.2);
                }
                if (s < l1_samples && rec.eps > 1e-4) {
                    QuadratureOptions qopts;
                    qopts.abs_tol = cfg.quad_tol;
                    qopts.max_panels = cfg.quad_max_panels;
                    const QuadratureResult l1 = l1_neighborhood(mu, rec.eps, qopts);
                    rec.l1_ratio = l1.value / (rec.eps * rec.eps * rec.eps);
                }
                for (std::size_t gi = 0; gi < epsilon_grid.size(); ++gi) {
                    const double eta = std::pow(epsilon_grid[gi], 0.8);
                    grid_masses[gi][s] = mass_outside(mu, -2.0 + eta, 2.0 - eta);
                }
                report.samples[s] = rec;
            } catch (const IterationLimitError&) {
                failed[s] = 1;
                report.samples[s].seed_index = s;
            }
        });

        std::vector<double> ratios;
        for (std::size_t s = 0; s < report.samples.size(); ++s) {
            if (failed[s]) {
                ++report.failures;
                continue;
            }
            if (report.samples[s].eps > 0.0) ratios.push_back(report.samples[s].ratio);
        }
        report.median_ratio = median_of(std::move(ratios));
        for (std::size_t gi = 0; gi < epsilon_grid.size(); ++gi) {
            EndpointGridEntry entry;
            entry.eps = epsilon_grid[gi];
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t s = 0; s < report.samples.size(); ++s) {
                if (failed[s]) continue;
                sum += grid_masses[gi][s];
                ++count;
            }
            entry.mean_edge_mass = count ? sum / count : 0.0;
            report.grid.push_back(entry);
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Report serialization.
// ---------------------------------------------------------------------------

void emit_records_csv(const std::vector<DiscrepancyRecord>& records, std::ostream& out) {
    if (records.empty()) throw std::invalid_argument("emit_records_csv: no records");
    out << "n,seed_index,dist,dist_err_bound,w1,sup_interval,mass_outside_supp,"
           "edge_mass,gap,i0_dev,i0_fattened_dev,ok\n";
    for (const DiscrepancyRecord& r : records) {
        out << r.n << ',' << r.seed_index << ',' << fmt17(r.dist) << ',' << fmt17(r.dist_err_bound)
            << ',' << fmt17(r.w1) << ',' << fmt17(r.sup_interval) << ','
            << fmt17(r.mass_outside_supp) << ',' << fmt17(r.edge_mass) << ',' << fmt17(r.gap)
            << ',' << fmt17(r.i0_dev) << ',' << fmt17(r.i0_fattened_dev) << ',' << (r.ok ? 1 : 0)
            << '\n';
    }
}

std::vector<DiscrepancyRecord> parse_records_csv(std::istream& in) {
    std::vector<DiscrepancyRecord> records;
    std::string line;
    if (!std::getline(in, line)) return records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != 12) throw std::runtime_error("parse_records_csv: bad row");
        DiscrepancyRecord r;
        r.n = std::stoull(cells[0]);
        r.seed_index = std::stoull(cells[1]);
        r.dist = std::stod(cells[2]);
        r.dist_err_bound = std::stod(cells[3]);
        r.w1 = std::stod(cells[4]);
        r.sup_interval = std::stod(cells[5]);
        r.mass_outside_supp = std::stod(cells[6]);
        r.edge_mass = std::stod(cells[7]);
        r.gap = std::stod(cells[8]);
        r.i0_dev = std::stod(cells[9]);
        r.i0_fattened_dev = std::stod(cells[10]);
        r.ok = cells[11] == "1";
        records.push_back(r);
    }
    return records;
}

namespace {

ordered_json record_to_json(const DiscrepancyRecord& r) {
    ordered_json j;
    j["n"] = r.n;
    j["seed_index"] = r.seed_index;
    j["dist"] = r.dist;
    j["dist_err_bound"] = r.dist_err_bound;
    j["w1"] = r.w1;
    j["sup_interval"] = r.sup_interval;
    j["mass_outside_supp"] = r.mass_outside_supp;
    j["edge_mass"] = r.edge_mass;
    j["gap"] = r.gap;
    j["i0_dev"] = r.i0_dev;
    j["i0_fattened_dev"] = r.i0_fattened_dev;
    j["ok"] = r.ok;
    return j;
}

} // namespace

std::string to_json(const SemicircleExperimentReport& report) {
    ordered_json j;
    j["experiment"] = "wigner";
    j["config"] = report.config_description;
    j["failures"] = report.failures;
    auto& recs = j["records"] = ordered_json::array();
    for (const DiscrepancyRecord& r : report.records) recs.push_back(record_to_json(r));
    auto& tails = j["tails"] = ordered_json::array();
    for (const TailReport& t : report.tails) {
        ordered_json tj;
        tj["n"] = t.n;
        auto& entries = tj["entries"] = ordered_json::array();
        for (const TailEntry& e : t.entries) {
            entries.push_back({{"delta", e.delta},
                               {"frac_sup_gt_sqrt_delta", e.frac_sup_gt_sqrt_delta},
                               {"frac_dist_gt_delta", e.frac_dist_gt_delta}});
        }
        if (t.fitted_A) {
            tj["fitted_A"] = *t.fitted_A;
        } else {
            tj["fitted_A"] = nullptr;
        }
        tj["r_squared"] = t.r_squared;
        tails.push_back(tj);
    }
    return j.dump(2);
}

std::string to_json(const BoundSweepReport& report) {
    ordered_json j;
    j["experiment"] = "bound";
    j["config"] = report.config_description;
    j["alpha"] = report.alpha;
    j["beta"] = report.beta;
    auto& cells = j["cells"] = ordered_json::array();
    for (const BoundSweepCell& c : report.cells) {
        cells.push_back({{"n", c.n},
                         {"z", c.z},
                         {"log_mean_abs2", c.log_mean_abs2},
                         {"rel_std_error", c.rel_std_error},
                         {"log_bound", c.log_bound},
                         {"log_ratio", c.log_ratio},
                         {"ratio", c.ratio}});
    }
    return j.dump(2);
}

std::string to_json(const std::vector<ErExperimentReport>& reports) {
    ordered_json j;
    j["experiment"] = "er";
    auto& arr = j["runs"] = ordered_json::array();
    for (const ErExperimentReport& r : reports) {
        ordered_json rj;
        rj["n"] = r.n;
        rj["p"] = r.p;
        rj["median_sup_interval_centered"] = r.median_sup_interval_centered;
        rj["total_interlacing_violations"] = r.total_interlacing_violations;
        rj["failures"] = r.failures;
        auto& samples = rj["samples"] = ordered_json::array();
        for (const ErSampleRecord& s : r.samples) {
            samples.push_back({{"seed_index", s.seed_index},
                               {"sup_interval_raw", s.sup_interval_raw},
                               {"sup_interval_centered", s.sup_interval_centered},
                               {"max_interval_count_diff", s.max_interval_count_diff},
                               {"interlacing_violations", s.interlacing_violations}});
        }
        arr.push_back(rj);
    }
    return j.dump(2);
}

std::string to_json(const std::vector<EndpointReport>& reports) {
    ordered_json j;
    j["experiment"] = "endpoint";
    auto& arr = j["runs"] = ordered_json::array();
    for (const EndpointReport& r : reports) {
        ordered_json rj;
        rj["n"] = r.n;
        rj["median_ratio"] = r.median_ratio;
        rj["failures"] = r.failures;
        auto& samples = rj["samples"] = ordered_json::array();
        for (const EndpointSample& s : r.samples) {
            samples.push_back({{"seed_index", s.seed_index},
                               {"gap", s.gap},
                               {"eps", s.eps},
                               {"edge_mass", s.edge_mass},
                               {"ratio", s.ratio},
                               {"l1_ratio", s.l1_ratio}});
        }
        auto& grid = rj["grid"] = ordered_json::array();
        for (const EndpointGridEntry& g : r.grid) {
            grid.push_back({{"eps", g.eps}, {"mean_edge_mass", g.mean_edge_mass}});
        }
        arr.push_back(rj);
    }
    return j.dump(2);
}

std::string to_json(const OracleReport& report) {
    ordered_json j;
    j["experiment"] = "oracle";
    j["all_pass"] = report.all_pass;
    auto& checks = j["checks"] = ordered_json::array();
    for (const OracleCheck& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"params", c.params},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"pass", c.pass}});
    }
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Config file.
// ---------------------------------------------------------------------------

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line without '=': " + line);
        entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return entries;
}

namespace {

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoull(tok));
    }
    return out;
}

} // namespace

void apply_config_entries(ExperimentConfig& cfg, const std::map<std::string, std::string>& entries) {
    for (const auto& [key, value] : entries) {
        try {
            if (key == "seed") cfg.master_seed = std::stoull(value);
            else if (key == "samples") cfg.sample_count = std::stoi(value);
            else if (key == "n") cfg.n_list = parse_size_list(value);
            else if (key == "ensemble") {
                if (value == "er") {
                    cfg.ensemble.is_er = true;
                } else {
                    cfg.ensemble.is_er = false;
                    const auto colon = value.find(':');
                    cfg.ensemble.offdiag = value.substr(0, colon);
                    if (cfg.ensemble.offdiag == "custom-discrete") {
                        if (colon == std::string::npos) {
                            throw ConfigError("custom-discrete needs value=prob entries");
                        }
                        cfg.ensemble.custom_spec = value.substr(colon + 1);
                    } else if (colon != std::string::npos) {
                        cfg.ensemble.offdiag_param = std::stod(value.substr(colon + 1));
                    } else if (cfg.ensemble.offdiag == "real-gaussian") {
                        cfg.ensemble.offdiag_param = 1.0;
                    }
                }
            } else if (key == "diag") {
                const auto colon = value.find(':');
                cfg.ensemble.diag = value.substr(0, colon);
                if (colon != std::string::npos) {
                    cfg.ensemble.diag_param = std::stod(value.substr(colon + 1));
                }
            } else if (key == "p") cfg.ensemble.er_p = std::stod(value);
            else if (key == "deltas") cfg.delta_grid = parse_double_list(value);
            else if (key == "zgrid") cfg.z_grid = parse_double_list(value);
            else if (key == "eps-grid") cfg.epsilon_grid = parse_double_list(value);
            else if (key == "epsilon") cfg.epsilon = std::stod(value);
            else if (key == "quad-tol") cfg.quad_tol = std::stod(value);
            else if (key == "quad-max-panels") cfg.quad_max_panels = std::stoi(value);
            else if (key == "intervals") cfg.er_interval_checks = std::stoi(value);
            else if (key == "threads") cfg.threads = std::stoi(value);
            else if (key == "out") cfg.out_path = value;
            else if (key == "format") {
                if (value == "csv") cfg.format = OutputFormat::Csv;
                else if (value == "json") cfg.format = OutputFormat::Json;
                else throw ConfigError("unknown format: " + value);
            } else {
                throw ConfigError("unknown config key: " + key);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad value for config key '" + key + "': " + value);
        }
    }
}

} // namespace wignerlab
