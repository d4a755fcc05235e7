#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wignerlab/measures.hpp"
#include "wignerlab/potential.hpp"

namespace wignerlab {

/// Thrown when the implicit-shift QL iteration exceeds its sweep cap.
class IterationLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense Hermitian matrix, row-major complex storage. Construction enforces
/// exact conjugate symmetry (real diagonal included); matrices built from an
/// upper triangle are Hermitian by construction.
class HermitianMatrix {
public:
    /// Builds from a full n x n array; throws unless entries[j*n+i] is exactly
    /// the conjugate of entries[i*n+j] and the diagonal is exactly real.
    HermitianMatrix(std::size_t n, std::vector<std::complex<double>> entries);

    /// Zero matrix.
    explicit HermitianMatrix(std::size_t n);

    std::size_t size() const { return n_; }

    std::complex<double> operator()(std::size_t i, std::size_t j) const {
        return entries_[i * n_ + j];
    }

    /// Sets entry (i,j) and its mirror (j,i) to the conjugate; diagonal
    /// assignments must be real.
    void set(std::size_t i, std::size_t j, std::complex<double> v);

    const std::vector<std::complex<double>>& entries() const { return entries_; }

    /// True when every entry has zero imaginary part (enables the real
    /// symmetric fast paths).
    bool is_real() const { return all_real_; }

    double trace() const;
    double frobenius_sq() const;
    double max_abs_entry() const;

    /// Every entry multiplied by a real scalar.
    HermitianMatrix scaled(double factor) const;

    /// Debug serialization: {"n": n, "entries": [[re, im], ...]} row-major.
    std::string to_json() const;
    static HermitianMatrix from_json(const std::string& text);

private:
    std::size_t n_;
    std::vector<std::complex<double>> entries_;
    bool all_real_;
};

/// Sorted ascending eigenvalues.
struct Spectrum {
    std::vector<double> eigenvalues;
};

/// Householder reduction to a real symmetric tridiagonal matrix unitarily
/// similar to H; off-diagonal entries are made nonnegative by phase
/// absorption. Returns (diagonal[n], offdiagonal[n-1]).
std::pair<std::vector<double>, std::vector<double>> tridiagonalize(const HermitianMatrix& H);

/// All eigenvalues via tridiagonalization followed by implicit Wilkinson-shift
/// QL. No eigenvectors. Throws IterationLimitError past 30n total sweeps.
Spectrum eigenvalues(const HermitianMatrix& H);

/// Empirical spectral distribution of an (already scaled) matrix.
AtomicMeasure esd(const HermitianMatrix& W);

/// log|det(zI - W)| by LU with partial pivoting; sums log-moduli of pivots so
/// determinants of any magnitude stay representable. An exactly zero pivot
/// yields -infinity. Real symmetric matrices with real z take a real LU path.
double log_abs_charpoly(const HermitianMatrix& W, ComplexPoint z);

/// Monic characteristic polynomial coefficients, ascending order, via
/// Faddeev-LeVerrier. Desk-scale oracle: n <= 8 only. Coefficients of a
/// Hermitian matrix are real; the imaginary residue must stay below 1e-10.
std::vector<double> charpoly_coeffs_small(const HermitianMatrix& H);

} // namespace wignerlab
