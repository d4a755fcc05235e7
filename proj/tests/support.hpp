#pragma once

// Shared test oracles: independent quadratures, brute-force scans and small
// root finders used to freeze expected values. Nothing here calls into the
// implementation paths it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "wignerlab/ensembles.hpp"
#include "wignerlab/measures.hpp"
#include "wignerlab/potential.hpp"

namespace testsupport {

// doctest's Approx is relative-only; this is the absolute-tolerance variant.
struct ApproxAbs {
    double expected;
    double tol;
    friend bool operator==(double got, const ApproxAbs& a) {
        return std::fabs(got - a.expected) <= a.tol;
    }
    friend bool operator==(const ApproxAbs& a, double got) { return got == a; }
};

inline ApproxAbs approx_abs(double expected, double tol) { return {expected, tol}; }

inline constexpr double kGl15X[15] = {
    -0.98799251802048543, -0.93727339240070590, -0.84820658341042722,
    -0.72441773136017005, -0.57097217260853885, -0.39415134707756337,
    -0.20119409399743452, 0.0,
    0.20119409399743452,  0.39415134707756337,  0.57097217260853885,
    0.72441773136017005,  0.84820658341042722,  0.93727339240070590,
    0.98799251802048543};
inline constexpr double kGl15W[15] = {
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
    for (int i = 0; i < 15; ++i) s += kGl15W[i] * f(c + h * kGl15X[i]);
    return s * h;
}

template <typename F>
double adaptive_gl(const F& f, double a, double b, double tol = 1e-10, int depth = 0) {
    const double whole = gl15(f, a, b);
    const double mid = 0.5 * (a + b);
    const double split = gl15(f, a, mid) + gl15(f, mid, b);
    if (std::fabs(whole - split) <= tol || depth >= 48) return split;
    return adaptive_gl(f, a, mid, 0.5 * tol, depth + 1) +
           adaptive_gl(f, mid, b, 0.5 * tol, depth + 1);
}

// Direct quadrature of the semicircle potential at z, split at the
// on-segment singularity.
inline double sc_potential_quadrature(std::complex<double> z, double tol = 1e-11) {
    const double x = z.real(), y = z.imag();
    auto f = [&](double a) {
        const double r2 = (x - a) * (x - a) + y * y;
        return r2 > 0.0 ? 0.5 * std::log(r2) * wignerlab::sc_density(a) : 0.0;
    };
    if (y == 0.0 && x > -2.0 && x < 2.0) {
        return adaptive_gl(f, -2.0, x, tol) + adaptive_gl(f, x, 2.0, tol);
    }
    return adaptive_gl(f, -2.0, 2.0, tol);
}

// Independent route for the potential-L1 distance: nested 1D adaptive
// integration (inner in x, outer in y) over the same truncated square the
// implementation uses, doubled by the y-symmetry.
inline double dist_reference_nested(const wignerlab::AtomicMeasure& mu,
                                    const wignerlab::AtomicMeasure* nu, double tol = 1e-7) {
    using wignerlab::ComplexPoint;
    double support = std::max(std::fabs(mu.min_atom()), std::fabs(mu.max_atom()));
    if (nu) {
        support = std::max({support, std::fabs(nu->min_atom()), std::fabs(nu->max_atom())});
    } else {
        support = std::max(support, 2.0);
    }
    const double R = std::max(10.0, 2.5 * support);
    auto integrand = [&](double x, double y) {
        const ComplexPoint z(x, y);
        const double umu = wignerlab::log_potential(mu, z);
        const double unu = nu ? wignerlab::log_potential(*nu, z) : wignerlab::sc_potential(z);
        if (umu == unu) return 0.0;
        const double d = std::fabs(umu - unu);
        if (!std::isfinite(d)) return 0.0;
        const double t = 1.0 + x * x + y * y;
        return d / (3.14159265358979323846 * t * t);
    };
    auto row = [&](double y) {
        return adaptive_gl([&](double x) { return integrand(x, y); }, -R, R, tol / (2.0 * R));
    };
    return 2.0 * adaptive_gl(row, 0.0, R, tol);
}

// W1 against the semicircle by direct CDF-difference quadrature.
inline double w1_sc_quadrature(const wignerlab::AtomicMeasure& mu, double tol = 1e-9) {
    const double lo = std::min(mu.min_atom(), -2.0) - 1.0;
    const double hi = std::max(mu.max_atom(), 2.0) + 1.0;
    auto f = [&](double x) { return std::fabs(mu.cdf(x) - wignerlab::sc_cdf(x)); };
    // split at atoms to keep panels smooth
    double total = 0.0;
    double prev = lo;
    for (double a : mu.atoms()) {
        total += adaptive_gl(f, prev, a, tol);
        prev = a;
    }
    total += adaptive_gl(f, prev, hi, tol);
    return total;
}

// Brute-force sup-interval discrepancy: all endpoint pairs drawn from atom
// positions nudged either way, every open/closed combination realized by the
// offsets.
inline double brute_interval_discrepancy(const wignerlab::AtomicMeasure& mu,
                                         const wignerlab::AtomicMeasure* nu) {
    const double h = 1e-9;
    std::vector<double> candidates;
    auto add_atoms = [&](const std::vector<double>& atoms) {
        for (double a : atoms) {
            candidates.push_back(a - h);
            candidates.push_back(a);
            candidates.push_back(a + h);
        }
    };
    add_atoms(mu.atoms());
    if (nu) add_atoms(nu->atoms());
    candidates.push_back(-3.0);
    candidates.push_back(3.0);
    std::sort(candidates.begin(), candidates.end());
    auto mass_mu = [&](double a, double b) { return mu.cdf(b) - mu.cdf_left(a); };
    auto mass_nu = [&](double a, double b) {
        if (nu) return nu->cdf(b) - nu->cdf_left(a);
        return wignerlab::sc_cdf(b) - wignerlab::sc_cdf(a);
    };
    double best = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = i; j < candidates.size(); ++j) {
            const double a = candidates[i], b = candidates[j];
            best = std::max(best, std::fabs(mass_mu(a, b) - mass_nu(a, b)));
        }
    }
    return best;
}

// All real roots of a real-coefficient polynomial whose roots are known to be
// real (characteristic polynomials of Hermitian matrices): recursive critical
// point isolation plus bisection.
inline std::vector<double> real_poly_roots(const std::vector<double>& coeffs) {
    const std::size_t deg = coeffs.size() - 1;
    auto eval = [&](double x) {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
        return acc;
    };
    if (deg == 1) return {-coeffs[0] / coeffs[1]};

    std::vector<double> dcoeffs(deg);
    for (std::size_t k = 0; k < deg; ++k) dcoeffs[k] = static_cast<double>(k + 1) * coeffs[k + 1];
    std::vector<double> crit = real_poly_roots(dcoeffs);
    std::sort(crit.begin(), crit.end());

    double bound = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
        bound = std::max(bound, std::fabs(coeffs[k] / coeffs[deg]));
    }
    bound += 1.0;

    std::vector<double> edges = {-bound};
    for (double c : crit) {
        if (c > edges.back() && c < bound) edges.push_back(c);
    }
    edges.push_back(bound);

    auto eval_scale = [&](double x) {
        double s = 0.0, p = 1.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            s += std::fabs(coeffs[k]) * p;
            p *= std::fabs(x);
        }
        return s;
    };

    std::vector<double> roots;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        double a = edges[e], b = edges[e + 1];
        double fa = eval(a), fb = eval(b);
        if (fa == 0.0) {
            if (e == 0) roots.push_back(a);
            continue;
        }
        if ((fa < 0.0) == (fb < 0.0)) continue;
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (a + b);
            const double fm = eval(m);
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            ((fm < 0.0) == (fa < 0.0) ? a : b) = m;
            ((fm < 0.0) == (fa < 0.0) ? fa : fb) = fm;
        }
        roots.push_back(0.5 * (a + b));
    }
    // multiple roots sit at critical points where P nearly vanishes
    for (double c : crit) {
        if (std::fabs(eval(c)) <= 1e-12 * eval_scale(c)) {
            bool near = false;
            for (double r : roots) {
                if (std::fabs(r - c) < 1e-7 * (1.0 + std::fabs(c))) near = true;
            }
            if (!near) {
                roots.push_back(c);
                roots.push_back(c);
            }
        }
    }
    while (roots.size() < deg && !roots.empty()) roots.push_back(roots.back());
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Random Hermitian matrix with entries of order 1 (uniform real/imag parts).
inline wignerlab::HermitianMatrix random_hermitian(std::size_t n, wignerlab::RngStream& rng,
                                                   bool complex_entries = true) {
    wignerlab::HermitianMatrix H(n);
    for (std::size_t i = 0; i < n; ++i) {
        H.set(i, i, 2.0 * rng.next_uniform() - 1.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double re = 2.0 * rng.next_uniform() - 1.0;
            const double im = complex_entries ? 2.0 * rng.next_uniform() - 1.0 : 0.0;
            H.set(i, j, {re, im});
        }
    }
    return H;
}

// Unitary from modified Gram-Schmidt on a random complex matrix.
inline std::vector<std::complex<double>> random_unitary(std::size_t n, wignerlab::RngStream& rng) {
    using C = std::complex<double>;
    std::vector<C> a(n * n);
    for (auto& v : a) v = C(rng.next_gaussian(), rng.next_gaussian());
    // columns orthonormalized in order
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            C dot(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(a[i * n + k]) * a[i * n + j];
            for (std::size_t i = 0; i < n; ++i) a[i * n + j] -= dot * a[i * n + k];
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(a[i * n + j]);
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) a[i * n + j] /= norm;
    }
    return a;
}

// U* H U for a unitary given as a flat column-orthonormal matrix.
inline wignerlab::HermitianMatrix conjugate_by_unitary(const wignerlab::HermitianMatrix& H,
                                                       const std::vector<std::complex<double>>& u) {
    using C = std::complex<double>;
    const std::size_t n = H.size();
    std::vector<C> hu(n * n, C(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            C acc(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) acc += H(i, k) * u[k * n + j];
            hu[i * n + j] = acc;
        }
    }
    std::vector<C> out(n * n, C(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            C acc(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) acc += std::conj(u[k * n + i]) * hu[k * n + j];
            out[i * n + j] = acc;
        }
    }
    // round away the hermiticity residue of the two matrix products
    for (std::size_t i = 0; i < n; ++i) {
        out[i * n + i] = C(out[i * n + i].real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const C v = 0.5 * (out[i * n + j] + std::conj(out[j * n + i]));
            out[i * n + j] = v;
            out[j * n + i] = std::conj(v);
        }
    }
    return wignerlab::HermitianMatrix(n, std::move(out));
}

// Monic polynomial with the given roots, ascending coefficients.
inline std::vector<double> poly_from_roots(const std::vector<double>& roots) {
    std::vector<double> q = {1.0};
    for (double r : roots) {
        std::vector<double> next(q.size() + 1, 0.0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            next[i + 1] += q[i];
            next[i] -= r * q[i];
        }
        q = std::move(next);
    }
    return q;
}

} // namespace testsupport
