#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "wignerlab/harness.hpp"

namespace wignerlab {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// 15-point Gauss-Legendre on [-1,1].
constexpr double kGlX[15] = {
    -0.98799251802048543, -0.93727339240070590, -0.84820658341042722,
    -0.72441773136017005, -0.57097217260853885, -0.39415134707756337,
    -0.20119409399743452, 0.0,
    0.20119409399743452,  0.39415134707756337,  0.57097217260853885,
    0.72441773136017005,  0.84820658341042722,  0.93727339240070590,
    0.98799251802048543};
constexpr double kGlW[15] = {
    0.030753241996117268, 0.070366047488108124, 0.107159220467171935,
    0.139570677926154314, 0.166269205816993934, 0.186161000015562211,
    0.198431485327111576, 0.202578241925561273,
    0.198431485327111576, 0.186161000015562211, 0.166269205816993934,
    0.139570677926154314, 0.107159220467171935, 0.070366047488108124,
    0.030753241996117268};

template <typename F>
double gl15(const F& f, double a, double b) {
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    double s = 0.0;
    for (int i = 0; i < 15; ++i) s += kGlW[i] * f(c + h * kGlX[i]);
    return s * h;
}

template <typename F>
double adaptive_1d(const F& f, double a, double b, double tol, int depth) {
    const double whole = gl15(f, a, b);
    const double mid = 0.5 * (a + b);
    const double split = gl15(f, a, mid) + gl15(f, mid, b);
    if (std::fabs(whole - split) <= tol || depth >= 48) return split;
    return adaptive_1d(f, a, mid, 0.5 * tol, depth + 1) +
           adaptive_1d(f, mid, b, 0.5 * tol, depth + 1);
}

// Direct quadrature of the semicircle potential, split at the on-segment
// singular point when there is one.
double sc_potential_by_quadrature(ComplexPoint z, double tol) {
    const double x = z.real(), y = z.imag();
    auto f = [&](double a) {
        const double r2 = (x - a) * (x - a) + y * y;
        return r2 > 0.0 ? 0.5 * std::log(r2) * sc_density(a) : 0.0;
    };
    if (y == 0.0 && x > -2.0 && x < 2.0) {
        return adaptive_1d(f, -2.0, x, tol, 0) + adaptive_1d(f, x, 2.0, tol, 0);
    }
    return adaptive_1d(f, -2.0, 2.0, tol, 0);
}

// Explicit sum H_n(z) = sum_k (-1)^k n!/(k!(n-2k)!) (2z)^{n-2k}.
double hermite_by_sum(int n, double z) {
    double total = 0.0;
    for (int k = 0; 2 * k <= n; ++k) {
        double coeff = 1.0;
        for (int t = 0; t < n - 2 * k; ++t) coeff *= 2.0 * z;
        // n! / (k! (n-2k)!)
        double fac = 1.0;
        for (int t = n; t > n - 2 * k; --t) fac *= t;
        for (int t = 2; t <= k; ++t) fac /= t;
        // remaining (2k)!/(2^k k!) ... already folded: n!/(k!(n-2k)!) =
        // [n (n-1) ... (n-2k+1)] / k!
        total += ((k % 2) ? -1.0 : 1.0) * fac * coeff;
    }
    return total;
}

// Cycle histogram of all permutations of n elements, by enumeration.
std::vector<std::uint64_t> brute_cycle_histogram(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::uint64_t> hist(n + 1, 0);
    do {
        std::vector<char> seen(n, 0);
        int cycles = 0;
        for (int s = 0; s < n; ++s) {
            if (seen[s]) continue;
            ++cycles;
            int t = s;
            while (!seen[t]) {
                seen[t] = 1;
                t = perm[t];
            }
        }
        ++hist[cycles];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return hist;
}

// Chebyshev polynomial T_d rescaled to [0,1], ascending coefficients.
PolynomialR chebyshev_on_unit(int d) {
    // T_d coefficients on [-1,1] by the recurrence, then substitute 2x-1.
    std::vector<double> prev = {1.0}, cur = {0.0, 1.0};
    if (d == 0) return prev;
    for (int k = 1; k < d; ++k) {
        std::vector<double> next(cur.size() + 1, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    // compose with u = 2x - 1
    std::vector<double> out = {cur.back()};
    for (std::size_t k = cur.size() - 1; k-- > 0;) {
        // out = out * (2x - 1) + cur[k]
        std::vector<double> shifted(out.size() + 1, 0.0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            shifted[i + 1] += 2.0 * out[i];
            shifted[i] -= out[i];
        }
        shifted[0] += cur[k];
        out = std::move(shifted);
    }
    return out;
}

struct CheckRecorder {
    OracleReport* report;
    void add(const std::string& name, const std::string& params, double lhs, double rhs,
             bool pass) {
        report->checks.push_back({name, params, num(lhs), num(rhs), pass});
        report->all_pass = report->all_pass && pass;
    }
    void add_str(const std::string& name, const std::string& params, std::string lhs,
                 std::string rhs, bool pass) {
        report->checks.push_back({name, params, std::move(lhs), std::move(rhs), pass});
        report->all_pass = report->all_pass && pass;
    }
};

} // namespace

OracleReport run_oracle_suite() {
    OracleReport report;
    CheckRecorder rec{&report};

    const std::vector<double> zgrid = {-2.0, -1.5, -1.0, -0.5, -0.25, 0.0,
                                       0.25, 0.5,  1.0,  1.5,  2.0};

    // Expected characteristic polynomial of the zero-diagonal ensemble equals
    // the exhaustive Rademacher average.
    for (std::size_t n = 1; n <= 4; ++n) {
        double worst = 0.0, worst_lhs = 0.0, worst_rhs = 0.0;
        for (double z : zgrid) {
            const double lhs =
                exhaustive_expectation(
                    n, [&](const HermitianMatrix& M) { return det_shifted(M, z); }, true)
                    .real();
            const double rhs = expected_charpoly_zero_diag(static_cast<int>(n), z);
            if (std::fabs(lhs - rhs) >= worst) {
                worst = std::fabs(lhs - rhs);
                worst_lhs = lhs;
                worst_rhs = rhs;
            }
        }
        rec.add("hermite_expectation_identity", "n=" + std::to_string(n) + ", 11 z points",
                worst_lhs, worst_rhs, worst <= 1e-10);
    }

    // Hermite recurrence against the explicit sum formula.
    {
        double worst_rel = 0.0;
        for (int n = 0; n <= 20; ++n) {
            for (double z : zgrid) {
                const double a = hermite(n, z);
                const double b = hermite_by_sum(n, z);
                const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
                worst_rel = std::max(worst_rel, std::fabs(a - b) / scale);
            }
        }
        rec.add("hermite_recurrence_vs_sum", "n<=20, 11 z points", worst_rel, 1e-10,
                worst_rel <= 1e-10);
    }

    // R3 keystone: pair-moment enumeration equals the exhaustive |det|^2.
    for (int n = 2; n <= 3; ++n) {
        double worst = 0.0, worst_lhs = 0.0, worst_rhs = 0.0;
        for (double z : zgrid) {
            const double lhs = partial_sum_R(RSumKind::R3, n, z, MomentModel::rademacher());
            const double rhs =
                exhaustive_expectation(
                    static_cast<std::size_t>(n),
                    [&](const HermitianMatrix& M) {
                        const std::complex<double> d = det_shifted(M, z);
                        return std::complex<double>(std::norm(d), 0.0);
                    },
                    true)
                    .real();
            if (std::fabs(lhs - rhs) >= worst) {
                worst = std::fabs(lhs - rhs);
                worst_lhs = lhs;
                worst_rhs = rhs;
            }
        }
        rec.add("r3_keystone", "n=" + std::to_string(n) + ", 11 z points", worst_lhs, worst_rhs,
                worst <= 1e-10);
    }

    // E(R2) = E(R1), exactly, for every mean-zero real model.
    {
        const MomentModel models[] = {MomentModel::rademacher(), MomentModel::real_gaussian(),
                                      MomentModel::centered_bernoulli(0.3)};
        const char* names[] = {"rademacher", "real-gaussian", "centered-bernoulli(0.3)"};
        double worst = 0.0;
        for (int n = 2; n <= 5; ++n) {
            for (int mi = 0; mi < 3; ++mi) {
                for (double z : zgrid) {
                    const double r1 = partial_sum_R(RSumKind::R1, n, z, models[mi]);
                    const double r2 = partial_sum_R(RSumKind::R2, n, z, models[mi]);
                    worst = std::max(worst, std::fabs(r1 - r2));
                }
            }
        }
        (void)names;
        rec.add("r2_equals_r1", "n=2..5, 3 models, 11 z points", worst, 0.0, worst == 0.0);
    }

    // E(R0) from enumeration equals the inclusion-exclusion over shared
    // 2-cycle blocks.
    {
        double worst = 0.0;
        for (int n = 2; n <= 5; ++n) {
            for (double z : zgrid) {
                const double a = partial_sum_R(RSumKind::R0, n, z, MomentModel::rademacher());
                const double b = r0_inclusion_exclusion(n, z);
                worst = std::max(worst, std::fabs(a - b));
            }
        }
        rec.add("r0_inclusion_exclusion", "n=2..5, 11 z points", worst, 1e-9, worst <= 1e-9);
    }

    // Class containment: each partial sum extends the previous one.
    for (int n = 2; n <= 5; ++n) {
        const std::uint64_t c0 = partial_sum_R_count(RSumKind::R0, n);
        const std::uint64_t c1 = partial_sum_R_count(RSumKind::R1, n);
        const std::uint64_t c2 = partial_sum_R_count(RSumKind::R2, n);
        const std::uint64_t c3 = partial_sum_R_count(RSumKind::R3, n);
        rec.add_str("rsum_class_containment", "n=" + std::to_string(n),
                    std::to_string(c0) + " <= " + std::to_string(c1) + " <= " +
                        std::to_string(c2),
                    "<= " + std::to_string(c3), c0 <= c1 && c1 <= c2 && c2 <= c3);
    }

    // Stirling recurrence vs brute-force permutation enumeration.
    {
        bool all = true;
        for (int n = 1; n <= 8; ++n) {
            const auto hist = brute_cycle_histogram(n);
            for (int l = 1; l <= n; ++l) {
                if (stirling_cycle_count(n, l) != static_cast<uint128>(hist[l])) all = false;
            }
        }
        rec.add_str("stirling_vs_bruteforce", "n<=8, all l", "recurrence", "enumeration", all);
    }

    // Cycle-count bound in exact integer arithmetic.
    {
        bool all = true;
        uint128 worst_lhs = 0, worst_rhs = 0;
        for (int n = 1; n <= 20; ++n) {
            for (int l = 1; l <= n; ++l) {
                const CycleBoundCheck c = cycle_bound_check(n, l);
                if (!c.holds) all = false;
                if (c.count_scaled >= worst_lhs) {
                    worst_lhs = c.count_scaled;
                    worst_rhs = c.bound_scaled;
                }
            }
        }
        rec.add_str("cycle_count_bound", "all 1<=l<=n<=20",
                    uint128_to_string(worst_lhs) + " (max c(n,l)*2^l)",
                    uint128_to_string(worst_rhs) + " (2*n*n!)", all);
    }

    // Closed-form semicircle potential against direct quadrature.
    {
        const ComplexPoint pts[] = {{0.0, 0.0},  {0.5, 0.0}, {-1.7, 0.0}, {1.99, 0.0},
                                    {0.0, 0.5},  {1.0, 1.0}, {-3.0, 0.0}, {2.5, 0.1},
                                    {10.0, 0.0}, {0.3, -0.8}};
        double worst = 0.0;
        for (const ComplexPoint& z : pts) {
            const double a = sc_potential(z);
            const double b = sc_potential_by_quadrature(z, 1e-10);
            worst = std::max(worst, std::fabs(a - b));
        }
        rec.add("semicircle_potential_quadrature", "10 points on/off the segment", worst, 1e-6,
                worst <= 1e-6);
    }

    // Fubini-Study density integrates to 1 (polar coordinates + exact tail).
    {
        auto radial = [](double r) {
            const double t = 1.0 + r * r;
            return 2.0 * r / (t * t);
        };
        const double R = 1e4;
        const double total = adaptive_1d(radial, 0.0, R, 1e-12, 0) + 1.0 / (1.0 + R * R);
        rec.add("fs_density_total_mass", "polar quadrature to R=1e4 + exact tail", total, 1.0,
                std::fabs(total - 1.0) <= 1e-8);
    }

    // Markov factor of rescaled Chebyshev polynomials stays in the classical
    // window on [0,1]. The monomial coefficients of T_d(2x-1) reach ~6^d, so
    // the coefficient route is exercised while it is representable (d <= 16,
    // max coefficient ~2e11) and the trigonometric form covers d = 2..30.
    {
        bool all = true;
        double worst = 0.0, worst_coeff_dev = 0.0;
        for (int d = 2; d <= 30; ++d) {
            const int points = 64 * d * d;
            double max_q = 0.0, max_dq = 0.0;
            for (int k = 0; k < points; ++k) {
                const double x = static_cast<double>(k) / (points - 1);
                const double u = std::clamp(2.0 * x - 1.0, -1.0, 1.0);
                const double theta = std::acos(u);
                max_q = std::max(max_q, std::fabs(std::cos(d * theta)));
                const double s = std::sin(theta);
                const double dq = (s > 1e-9)
                                      ? 2.0 * d * std::sin(d * theta) / s
                                      : 2.0 * static_cast<double>(d) * d; // endpoint limit
                max_dq = std::max(max_dq, std::fabs(dq));
            }
            const double ratio = max_dq / (static_cast<double>(d) * d * max_q);
            worst = std::max(worst, ratio);
            if (!(ratio >= 0.5 && ratio <= 4.0)) all = false;
            if (d <= 16) {
                const PolynomialR q = chebyshev_on_unit(d);
                std::vector<ComplexPoint> grid;
                grid.reserve(points);
                for (int k = 0; k < points; ++k) {
                    grid.emplace_back(static_cast<double>(k) / (points - 1), 0.0);
                }
                worst_coeff_dev = std::max(worst_coeff_dev,
                                           std::fabs(markov_ratio(q, grid) - ratio));
            }
        }
        rec.add("markov_chebyshev_window", "T_d on [0,1], d=2..30, ratio in [0.5,4]", worst, 2.0,
                all);
        rec.add("markov_ratio_vs_trig_form", "coefficient route vs cos(d acos), d<=16",
                worst_coeff_dev, 1e-4, worst_coeff_dev <= 1e-4);
    }

    // Net comparison factor <= 2 at net spacing d^-3.
    {
        bool all = true;
        double worst = 0.0;
        RngStream rng(20240901, 7);
        for (int trial = 0; trial < 20; ++trial) {
            const int d = 2 + static_cast<int>(rng.next_u64() % 29);
            PolynomialR q = {1.0};
            for (int k = 0; k < d; ++k) {
                const double root = -3.0 + 6.0 * rng.next_uniform();
                PolynomialR next(q.size() + 1, 0.0);
                for (std::size_t i = 0; i < q.size(); ++i) {
                    next[i + 1] += q[i];
                    next[i] -= root * q[i];
                }
                q = std::move(next);
            }
            const double spacing = 1.0 / (static_cast<double>(d) * d * d);
            const std::size_t net_count =
                std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(4.0 / spacing)) + 1);
            const std::size_t refine = 4;
            const std::size_t grid_count = (net_count - 1) * refine + 1;
            std::vector<ComplexPoint> grid(grid_count);
            std::vector<double> logw(grid_count);
            std::vector<std::size_t> net;
            for (std::size_t k = 0; k < grid_count; ++k) {
                const double x = -2.0 + 4.0 * static_cast<double>(k) / (grid_count - 1);
                grid[k] = ComplexPoint(x, 0.0);
                logw[k] = -static_cast<double>(d) * sc_potential(ComplexPoint(x, 0.0));
                if (k % refine == 0) net.push_back(k);
            }
            const double ratio = net_sup_ratio(q, grid, logw, net);
            worst = std::max(worst, ratio);
            if (!(ratio <= 2.0)) all = false;
        }
        rec.add("net_factor_two", "20 random polynomials, spacing d^-3, weight e^{-d u_sc}",
                worst, 2.0, all);
    }

    // Hermite bound ratio: finite everywhere, no growth trend in n.
    {
        double global_max = 0.0;
        std::vector<double> log_n, log_ratio;
        for (int n = 1; n <= 200; ++n) {
            double m = 0.0;
            for (double z = -5.0; z <= 5.0 + 1e-12; z += 0.1) {
                m = std::max(m, hermite_bound_ratio(n, z));
            }
            global_max = std::max(global_max, m);
            if (m > 0.0) {
                log_n.push_back(std::log(static_cast<double>(n)));
                log_ratio.push_back(std::log(m));
            }
        }
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < log_n.size(); ++i) {
            mx += log_n[i];
            my += log_ratio[i];
        }
        mx /= log_n.size();
        my /= log_ratio.size();
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < log_n.size(); ++i) {
            sxx += (log_n[i] - mx) * (log_n[i] - mx);
            sxy += (log_n[i] - mx) * (log_ratio[i] - my);
        }
        const double slope = sxy / sxx;
        rec.add("hermite_bound_trend", "n=1..200, z in [-5,5]; slope of log max-ratio vs log n",
                slope, 0.05, std::isfinite(global_max) && slope <= 0.05);
    }

    return report;
}

} // namespace wignerlab
