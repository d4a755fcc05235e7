#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wignerlab/ensembles.hpp"

namespace wignerlab {

using uint128 = unsigned __int128;
std::string uint128_to_string(uint128 v);

/// Physicists' Hermite polynomial by the three-term recurrence
/// H_{k+1} = 2z H_k - 2k H_{k-1}. May overflow to +-inf for large n;
/// callers needing big n use hermite_log_abs.
double hermite(int n, double z);

/// (log|H_n(z)|, sign) with internal rescaling; finite for n <= 400.
/// sign is 0 when H_n(z) == 0 (log is -infinity then).
std::pair<double, int> hermite_log_abs(int n, double z);

/// |H_n(sqrt(n/2) z)| / ((2n)^{(n+1)/2} e^{n(z^2/4 - 1/2)}), computed in log
/// space. Bounded by a universal constant over real z.
double hermite_bound_ratio(int n, double z);

/// Predicted E(det(zI - M_n[0])) for any mean-zero unit-variance off-diagonal
/// law: 2^{-n/2} H_n(z / sqrt 2).
double expected_charpoly_zero_diag(int n, double z);

/// Exact uniform average of f over all symmetric Rademacher matrices (n <= 4).
std::complex<double> exhaustive_expectation(std::size_t n,
                                            const std::function<std::complex<double>(const HermitianMatrix&)>& f,
                                            bool zero_diagonal = true);

/// det(zI - M) for small matrices, direct complex LU. Test/oracle helper.
std::complex<double> det_shifted(const HermitianMatrix& M, std::complex<double> z);

/// Unsigned Stirling number of the first kind c(n,l): permutations of n
/// elements with exactly l cycles. Exact, n <= 20.
uint128 stirling_cycle_count(int n, int l);

struct CycleBoundCheck {
    uint128 count;        // c(n,l)
    uint128 count_scaled; // c(n,l) * 2^l
    uint128 bound_scaled; // 2 * n * n!
    bool holds;           // count_scaled <= bound_scaled
    double bound_value;   // 2 n n! 2^{-l} as a double, for reports
};

/// Exact integer check of c(n,l) <= 2 n n! 2^{-l}, compared as
/// c(n,l) 2^l <= 2 n n!.
CycleBoundCheck cycle_bound_check(int n, int l);

/// Per-entry moments used by the pair-moment evaluator of the R-sums.
/// Real symmetric case only: xi_ij = xi_ji real.
struct MomentModel {
    double diag_m2 = 0.0;   // E xi_ii^2
    double off_m2 = 1.0;    // E|xi_ij|^2, must be 1
    double off_e2 = 1.0;    // E xi_ij^2
    double off_abs4 = 1.0;  // E|xi_ij|^4 (= beta)
    bool real_symmetric = true;

    static MomentModel rademacher() { return {0.0, 1.0, 1.0, 1.0, true}; }
    static MomentModel real_gaussian() { return {0.0, 1.0, 1.0, 3.0, true}; }
    static MomentModel centered_bernoulli(double p);
};

enum class RSumKind { R0, R1, R2, R3 };
RSumKind rsum_kind_from_string(const std::string& s);

/// Exact expectation of the designated partial sum of |det(zI - M_n[0])|^2:
/// enumerate all (I, sigma, I', sigma') with fixed-point-free permutations,
/// classify, and evaluate E(xi_sigma xi_sigma') from per-pair exponent
/// bookkeeping (odd degree -> 0, degree 2 -> off_m2, degree 4 -> off_abs4).
/// n <= 5, real-symmetric models only.
double partial_sum_R(RSumKind kind, int n, double z, const MomentModel& m);

/// Number of (I, sigma, I', sigma') quadruples in the class.
std::uint64_t partial_sum_R_count(RSumKind kind, int n);

/// E(R0) through the inclusion-exclusion over common 2-cycles:
/// sum_k (-1)^k C(n,2k) (2k-1)!! (2^{-(n-2k)/2} H_{n-2k}(z/sqrt2))^2.
/// Independent route used to cross-check the enumeration.
double r0_inclusion_exclusion(int n, double z);

/// Polynomial in ascending coefficients; leading coefficient nonzero.
using PolynomialR = std::vector<double>;

/// (max over grid |Q'|) / (deg^2 max over grid |Q|); derivative by exact
/// coefficient differentiation, evaluation by Horner.
double markov_ratio(const PolynomialR& q, const std::vector<ComplexPoint>& grid);

/// (max over the full grid of |Q| e^{n phi}) / (max over the net of the same),
/// computed in log space. `log_weights` holds n*phi at each grid point and
/// `net` indexes the subset. Throws on an empty net.
double net_sup_ratio(const PolynomialR& q, const std::vector<ComplexPoint>& grid,
                     const std::vector<double>& log_weights, const std::vector<std::size_t>& net);

} // namespace wignerlab
