#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace wignerlab {

/// Uniform probability measure on finitely many real atoms (an empirical
/// spectral distribution). Atoms are kept sorted ascending; each carries
/// weight 1/n where n is the atom count. Duplicates are allowed.
class AtomicMeasure {
public:
    explicit AtomicMeasure(std::vector<double> atoms);

    const std::vector<double>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double weight() const { return 1.0 / static_cast<double>(atoms_.size()); }

    double min_atom() const { return atoms_.front(); }
    double max_atom() const { return atoms_.back(); }

    /// Mean of |atom|; the first absolute moment.
    double mean_abs() const;
    /// First moment (plain mean of atoms).
    double mean() const;
    /// Second moment (mean of squared atoms).
    double second_moment() const;

    /// Right-continuous CDF value F(x) = mu((-inf, x]).
    double cdf(double x) const;
    /// Left limit F(x-) = mu((-inf, x)).
    double cdf_left(double x) const;

    /// Newline-delimited decimal atoms at full round-trip precision.
    std::string to_text() const;
    static AtomicMeasure from_text(const std::string& text);

private:
    std::vector<double> atoms_;
};

/// Tag for the semicircle distribution on [-2,2].
struct SemicircleLaw {};

/// Density (1/2pi) sqrt((4-x^2)_+).
double sc_density(double x);

/// CDF of the semicircle law; 0 at -2, 1 at 2, closed form in between.
double sc_cdf(double x);

/// Antiderivative of sc_cdf vanishing at -2: G(x) = integral_{-2}^x F(t) dt.
/// Closed form x*F(x) + (4-x^2)^{3/2}/(6 pi); used for exact W1 pieces.
double sc_cdf_integral(double x);

/// Inverse CDF on (0,1); monotone, sc_quantile(1/2) = 0.
double sc_quantile(double p);

/// Semicircle mass of the interval [lo, hi] (endpoints carry no mass).
double sc_interval_mass(double lo, double hi);

/// First absolute moment of the semicircle law, 8/(3 pi).
double sc_mean_abs();

/// n quantile midpoints F^{-1}((k+1/2)/n); a deterministic n-atom proxy for
/// the semicircle law used by tests and experiments.
AtomicMeasure sc_quantile_atoms(std::size_t n);

} // namespace wignerlab
