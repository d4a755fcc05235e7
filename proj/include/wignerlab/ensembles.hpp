#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wignerlab/hermitian.hpp"
#include "wignerlab/rng.hpp"

namespace wignerlab {

/// Analytic moments of an entry law: E xi, E|xi|^2, E xi^2, E|xi|^4.
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double second_moment_complex = 0.0; // E(xi^2); equals the variance for real laws
    double abs_fourth_moment = 0.0;
};

/// Mean-zero entry distribution. Real kinds may sit on the diagonal or off it;
/// the complex kind is off-diagonal only.
class EntryDistribution {
public:
    enum class Kind { RealGaussian, ComplexGaussianUnit, Rademacher, CenteredBernoulli, CustomDiscrete };

    static EntryDistribution real_gaussian(double variance);
    static EntryDistribution complex_gaussian_unit();
    static EntryDistribution rademacher();
    /// Law of (b - p)/sigma with b ~ Bernoulli(p), sigma = sqrt(p(1-p)).
    static EntryDistribution centered_bernoulli(double p);
    /// Finite real support with probabilities; must have mean 0.
    static EntryDistribution custom_discrete(std::vector<double> support, std::vector<double> probs);

    Kind kind() const { return kind_; }
    bool is_real() const { return kind_ != Kind::ComplexGaussianUnit; }
    double param() const { return param_; }

    /// External-interface name: "real-gaussian", "complex-gaussian",
    /// "rademacher", "centered-bernoulli", "custom-discrete".
    std::string name() const;

    std::complex<double> sample(RngStream& rng) const;
    double sample_real(RngStream& rng) const;

    friend Moments moments_of(const EntryDistribution& d);

private:
    EntryDistribution(Kind k, double param) : kind_(k), param_(param) {}
    Kind kind_;
    double param_;
    std::vector<double> support_;
    std::vector<double> cumprob_;
    std::vector<double> probs_from_cum_;
};

Moments moments_of(const EntryDistribution& d);

/// Wigner ensemble: independent upper-triangle entries, diagonal law with
/// variance alpha, off-diagonal law with unit variance and fourth moment beta.
struct WignerSpec {
    std::size_t n;
    EntryDistribution offdiag;
    EntryDistribution diag;

    /// Diagonal defaults to the constant 0 (alpha = 0).
    WignerSpec(std::size_t n, EntryDistribution offdiag);
    WignerSpec(std::size_t n, EntryDistribution offdiag, EntryDistribution diag);

    double alpha() const { return moments_of(diag).variance; }
    double beta() const { return moments_of(offdiag).abs_fourth_moment; }
};

/// Unscaled Wigner matrix M_n; deterministic in (spec, seed).
HermitianMatrix sample_wigner(const WignerSpec& spec, Seed seed);

/// W_n = n^{-1/2} M_n.
HermitianMatrix scale_to_w(const HermitianMatrix& M);

/// Erdos-Renyi adjacency matrix: 0/1 symmetric, zero diagonal, upper-triangle
/// edges i.i.d. Bernoulli(p). Requires 0 < p <= 1/2.
HermitianMatrix sample_er_adjacency(std::size_t n, double p, Seed seed);

/// A / (sqrt(n) sigma) with sigma = sqrt(p(1-p)).
HermitianMatrix er_normalize(const HermitianMatrix& A, double p);

/// W - (p/(sigma sqrt n)) J + (p/(sigma sqrt n)) I. The diagonal corrections
/// cancel exactly, so the result has an exactly zero diagonal and sqrt(n) W'
/// is a Wigner matrix with alpha = 0.
HermitianMatrix er_center(const HermitianMatrix& W, double p);

/// All real symmetric matrices with +-1 entries (diagonal 0 when
/// zero_diagonal, else +-1), visited once each in lexicographic order of the
/// row-major upper triangle with -1 < +1. Requires n <= 4.
void for_each_symmetric_rademacher(std::size_t n, bool zero_diagonal,
                                   const std::function<void(const HermitianMatrix&)>& fn);
std::vector<HermitianMatrix> enumerate_symmetric_rademacher(std::size_t n, bool zero_diagonal);

} // namespace wignerlab
