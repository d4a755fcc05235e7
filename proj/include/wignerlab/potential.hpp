#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "wignerlab/measures.hpp"

namespace wignerlab {

using ComplexPoint = std::complex<double>;

/// Thrown when the adaptive quadrature hits its panel cap before reaching the
/// requested tolerance; carries the tolerance it did achieve.
class QuadratureAccuracyError : public std::runtime_error {
public:
    QuadratureAccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tol_(achieved) {}
    double achieved_tol() const { return achieved_tol_; }

private:
    double achieved_tol_;
};

/// Preimage of z under the Joukowski map w + 1/w with |w| <= 1.
/// For z on the segment [-2,2] both preimages lie on the unit circle; the one
/// with nonnegative imaginary part is returned.
ComplexPoint inverse_joukowski(ComplexPoint z);

/// Logarithmic potential of the semicircle law, closed form everywhere:
/// (1/2) Re(w^2) - log|w| with w the unit-disc Joukowski preimage of z.
/// Restricted to real z in [-2,2] this equals (z^2 - 2)/4.
double sc_potential(ComplexPoint z);

/// Logarithmic potential (1/n) sum log|z - a_k| of an atomic measure.
/// Returns -infinity when z coincides with an atom.
double log_potential(const AtomicMeasure& mu, ComplexPoint z);

/// Plane density of the Fubini-Study area form: (1/pi)(1+|z|^2)^{-2}.
double fs_density(ComplexPoint z);

struct QuadratureOptions {
    double abs_tol = 1e-6;
    int max_panels = 80000;
    double min_width = 1e-6;
};

struct QuadratureResult {
    double value = 0.0;          // integral over the truncated square
    double error_estimate = 0.0; // accumulated panel error estimates
    double tail_bound = 0.0;     // analytic bound on the far-field remainder
    int panels = 0;
    bool converged = false;
};

/// L1 distance of logarithmic potentials against the Fubini-Study area form:
/// integral over the plane of |u_mu - u_nu| fs_density dLeb.
///
/// The integrand is evaluated on [-R,R] x [-R,R] with R = max(6, 2 max|atom|)
/// by adaptive tensor Gauss-Legendre panels (4- vs 8-point difference as the
/// error estimate, worst panel split first). Panels are never split below
/// min_width; a panel at the floor containing an atom is closed with an exact
/// polar integral of the log core. The far field satisfies
/// |u_mu - u_nu| <= 2(m1(mu)+m1(nu))/|z|, giving a tail <= (2C/3)/R^3 that is
/// reported as an error bar, not added to the value.
double dist_potential(const AtomicMeasure& mu, SemicircleLaw,
                      const QuadratureOptions& opts = {});
double dist_potential(const AtomicMeasure& mu, const AtomicMeasure& nu,
                      const QuadratureOptions& opts = {});

/// Same computation with the full quadrature record (no accuracy throw).
QuadratureResult dist_potential_detailed(const AtomicMeasure& mu, SemicircleLaw,
                                         const QuadratureOptions& opts = {});
QuadratureResult dist_potential_detailed(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                         const QuadratureOptions& opts = {});

/// Lebesgue integral of |u_mu - u_sc| over the rectangle
/// [-2-eps, 2+eps] x [-eps, eps] (the eps-neighbourhood of the support,
/// up to the rounded corners). Shares the adaptive panel machinery.
QuadratureResult l1_neighborhood(const AtomicMeasure& mu, double eps,
                                 const QuadratureOptions& opts = {});

/// Kantorovich-Wasserstein distance on the line, computed exactly piecewise
/// as integral |F_mu - F_nu|.
double w1_distance(const AtomicMeasure& mu, SemicircleLaw);
double w1_distance(const AtomicMeasure& mu, const AtomicMeasure& nu);

/// sup over all real intervals (every open/closed endpoint combination) of
/// |mu(I) - nu(I)|. Exact single scan: interval masses are differences of the
/// interleaved sequence F_mu(x-)-F_nu(x-), F_mu(x+)-F_nu(x+) at atom
/// positions, so the sup is a running min/max pass over that sequence.
double interval_discrepancy(const AtomicMeasure& mu, SemicircleLaw);
double interval_discrepancy(const AtomicMeasure& mu, const AtomicMeasure& nu);

/// max over the grid of u_mu - u_sc; grid points equal to an atom are skipped.
double potential_gap(const AtomicMeasure& mu, const std::vector<double>& grid);

/// Default gap grid: `count` Chebyshev-Lobatto points on [-2,2], clustered
/// near the endpoints.
std::vector<double> chebyshev_grid(std::size_t count = 4096);

/// Fraction of atoms strictly outside [lo, hi].
double mass_outside(const AtomicMeasure& mu, double lo, double hi);

} // namespace wignerlab
