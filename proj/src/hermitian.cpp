#include "wignerlab/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "log_product.hpp"

namespace wignerlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conj_(double x) { return x; }
std::complex<double> conj_(std::complex<double> x) { return std::conj(x); }

double real_(double x) { return x; }
double real_(std::complex<double> x) { return x.real(); }

double neumaier(const double* v, std::size_t count) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = sum + v[i];
        comp += (std::fabs(sum) >= std::fabs(v[i])) ? (sum - t) + v[i] : (v[i] - t) + sum;
        sum = t;
    }
    return sum + comp;
}

} // namespace

HermitianMatrix::HermitianMatrix(std::size_t n, std::vector<std::complex<double>> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n_ == 0) throw std::invalid_argument("HermitianMatrix: dimension must be positive");
    if (entries_.size() != n_ * n_) throw std::invalid_argument("HermitianMatrix: bad entry count");
    all_real_ = true;
    for (std::size_t i = 0; i < n_; ++i) {
        if (entries_[i * n_ + i].imag() != 0.0)
            throw std::invalid_argument("HermitianMatrix: diagonal must be real");
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (entries_[j * n_ + i] != std::conj(entries_[i * n_ + j]))
                throw std::invalid_argument("HermitianMatrix: not conjugate symmetric");
            if (entries_[i * n_ + j].imag() != 0.0) all_real_ = false;
        }
    }
}

HermitianMatrix::HermitianMatrix(std::size_t n)
    : n_(n), entries_(n * n, std::complex<double>(0.0, 0.0)), all_real_(true) {
    if (n_ == 0) throw std::invalid_argument("HermitianMatrix: dimension must be positive");
}

void HermitianMatrix::set(std::size_t i, std::size_t j, std::complex<double> v) {
    if (i == j) {
        if (v.imag() != 0.0) throw std::invalid_argument("HermitianMatrix: diagonal must be real");
        entries_[i * n_ + i] = v;
        return;
    }
    entries_[i * n_ + j] = v;
    entries_[j * n_ + i] = std::conj(v);
    if (v.imag() != 0.0) all_real_ = false;
}

double HermitianMatrix::trace() const {
    std::vector<double> diag(n_);
    for (std::size_t i = 0; i < n_; ++i) diag[i] = entries_[i * n_ + i].real();
    return neumaier(diag.data(), n_);
}

double HermitianMatrix::frobenius_sq() const {
    std::vector<double> sq(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) sq[i] = std::norm(entries_[i]);
    return neumaier(sq.data(), sq.size());
}

double HermitianMatrix::max_abs_entry() const {
    double best = 0.0;
    for (const auto& e : entries_) best = std::max(best, std::abs(e));
    return best;
}

HermitianMatrix HermitianMatrix::scaled(double factor) const {
    std::vector<std::complex<double>> out(entries_);
    for (auto& e : out) e *= factor;
    return HermitianMatrix(n_, std::move(out));
}

std::string HermitianMatrix::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    auto& arr = j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries_) arr.push_back({e.real(), e.imag()});
    return j.dump();
}

HermitianMatrix HermitianMatrix::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<std::complex<double>> entries;
    entries.reserve(n * n);
    for (const auto& pair : j.at("entries")) {
        entries.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    return HermitianMatrix(n, std::move(entries));
}

// ---------------------------------------------------------------------------
// Householder tridiagonalization (no eigenvectors).
// ---------------------------------------------------------------------------

namespace {

// Works on the column above the diagonal: a Householder reflector P = I-cvv*
// maps it onto the (i-1) axis; the leading block gets the Hermitian rank-2
// update B - vq* - qv*. Scalar is double (real symmetric input) or
// complex<double>.
template <typename T>
void householder_tridiag(std::vector<T>& a, std::size_t n, std::vector<double>& d,
                         std::vector<double>& e) {
    std::vector<T> v(n), p(n), q(n);
    std::vector<T> ecomplex(n > 0 ? n - 1 : 0, T(0));

    for (std::size_t i = n - 1; i >= 1; --i) {
        // column i above the diagonal
        double scale = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::abs(a[k * n + i]);
        if (scale == 0.0) {
            ecomplex[i - 1] = T(0);
            continue;
        }
        double off2 = 0.0;
        for (std::size_t k = 0; k + 1 < i; ++k) {
            const T t = a[k * n + i] / scale;
            off2 += std::norm(t);
        }
        const T alpha = a[(i - 1) * n + i] / scale;
        if (off2 == 0.0) {
            ecomplex[i - 1] = a[(i - 1) * n + i];
            continue;
        }
        const double abs_alpha = std::abs(alpha);
        const double sigma = std::sqrt(off2 + abs_alpha * abs_alpha);
        const T phase = (abs_alpha > 0.0) ? alpha / abs_alpha : T(1);
        const T beta = -phase * sigma;
        for (std::size_t k = 0; k < i; ++k) v[k] = a[k * n + i] / scale;
        v[i - 1] -= beta;
        const double c = 1.0 / (sigma * (sigma + abs_alpha));

        // p = c * B v over the leading i x i block
        for (std::size_t r = 0; r < i; ++r) {
            T acc(0);
            const T* row = &a[r * n];
            for (std::size_t k = 0; k < i; ++k) acc += row[k] * v[k];
            p[r] = acc * c;
        }
        double vp = 0.0;
        for (std::size_t k = 0; k < i; ++k) vp += real_(conj_(v[k]) * p[k]);
        const double K = 0.5 * c * vp;
        for (std::size_t k = 0; k < i; ++k) q[k] = p[k] - K * v[k];

        for (std::size_t r = 0; r < i; ++r) {
            T* row = &a[r * n];
            const T vr = v[r];
            const T qr = q[r];
            for (std::size_t k = 0; k < i; ++k) {
                row[k] -= vr * conj_(q[k]) + qr * conj_(v[k]);
            }
        }
        ecomplex[i - 1] = beta * scale;
        for (std::size_t k = 0; k + 1 < i; ++k) {
            a[k * n + i] = T(0);
            a[i * n + k] = T(0);
        }
        a[(i - 1) * n + i] = ecomplex[i - 1];
        a[i * n + (i - 1)] = conj_(ecomplex[i - 1]);
    }

    d.resize(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = real_(a[k * n + k]);
    // A diagonal unitary similarity absorbs the off-diagonal phases; with no
    // eigenvectors kept this is just taking moduli.
    e.resize(n > 0 ? n - 1 : 0);
    for (std::size_t k = 0; k + 1 < n; ++k) e[k] = std::abs(ecomplex[k]);
}

// Implicit Wilkinson-shift QL on a real symmetric tridiagonal matrix.
// d: diagonal (becomes the unsorted eigenvalues), e: n-1 off-diagonals.
void tridiag_ql_implicit(std::vector<double>& d, std::vector<double>& e, long sweep_cap) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    e.resize(n, 0.0); // e[n-1] is workspace
    long total = 0;
    for (std::size_t l = 0; l < n; ++l) {
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) + dd == dd) break;
            }
            if (m == l) break;
            if (++total > sweep_cap) {
                throw IterationLimitError("eigenvalues: QL sweep cap exceeded");
            }
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            std::size_t i = m;
            while (i-- > l) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> tridiagonalize(const HermitianMatrix& H) {
    const std::size_t n = H.size();
    std::vector<double> d, e;
    if (H.is_real()) {
        std::vector<double> a(n * n);
        for (std::size_t i = 0; i < n * n; ++i) a[i] = H.entries()[i].real();
        householder_tridiag(a, n, d, e);
    } else {
        std::vector<std::complex<double>> a(H.entries());
        householder_tridiag(a, n, d, e);
    }
    return {std::move(d), std::move(e)};
}

Spectrum eigenvalues(const HermitianMatrix& H) {
    auto [d, e] = tridiagonalize(H);
    tridiag_ql_implicit(d, e, 30L * static_cast<long>(H.size()));
    std::sort(d.begin(), d.end());
    return Spectrum{std::move(d)};
}

AtomicMeasure esd(const HermitianMatrix& W) { return AtomicMeasure(eigenvalues(W).eigenvalues); }

// ---------------------------------------------------------------------------
// log|det(zI - W)| via LU with partial pivoting.
// ---------------------------------------------------------------------------

namespace {

template <typename T>
double lu_log_abs_det(std::vector<T>& a, std::size_t n) {
    detail::LogProductAccumulator acc;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double pivot_norm = std::norm(a[k * n + k]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double v = std::norm(a[r * n + k]);
            if (v > pivot_norm) {
                pivot_norm = v;
                pivot_row = r;
            }
        }
        if (pivot_norm == 0.0) return -kInf;
        if (pivot_row != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(a[k * n + c], a[pivot_row * n + c]);
        }
        acc.mul(pivot_norm);
        const T pivot = a[k * n + k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const T factor = a[r * n + k] / pivot;
            if (factor == T(0)) continue;
            T* row = &a[r * n];
            const T* krow = &a[k * n];
            for (std::size_t c = k + 1; c < n; ++c) row[c] -= factor * krow[c];
        }
    }
    return 0.5 * acc.log_value();
}

} // namespace

double log_abs_charpoly(const HermitianMatrix& W, ComplexPoint z) {
    const std::size_t n = W.size();
    if (W.is_real() && z.imag() == 0.0) {
        std::vector<double> a(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a[i * n + j] = -W(i, j).real();
            }
            a[i * n + i] += z.real();
        }
        return lu_log_abs_det(a, n);
    }
    std::vector<std::complex<double>> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = -W(i, j);
        a[i * n + i] += z;
    }
    return lu_log_abs_det(a, n);
}

std::vector<double> charpoly_coeffs_small(const HermitianMatrix& H) {
    const std::size_t n = H.size();
    if (n > 8) throw std::invalid_argument("charpoly_coeffs_small: n must be <= 8");

    using C = std::complex<double>;
    const auto& A = H.entries();
    std::vector<C> M(A);     // M_1 = A
    std::vector<C> c(n + 1); // ascending coefficients
    c[n] = 1.0;

    auto trace_of = [n](const std::vector<C>& mat) {
        C t(0);
        for (std::size_t i = 0; i < n; ++i) t += mat[i * n + i];
        return t;
    };

    c[n - 1] = -trace_of(M);
    std::vector<C> tmp(n * n);
    for (std::size_t k = 2; k <= n; ++k) {
        // M_k = A (M_{k-1} + c_{n-k+1} I)
        std::vector<C> shifted(M);
        for (std::size_t i = 0; i < n; ++i) shifted[i * n + i] += c[n - k + 1];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                C acc(0);
                for (std::size_t m = 0; m < n; ++m) acc += A[i * n + m] * shifted[m * n + j];
                tmp[i * n + j] = acc;
            }
        }
        M.swap(tmp);
        c[n - k] = -trace_of(M) / static_cast<double>(k);
    }

    std::vector<double> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        if (std::fabs(c[k].imag()) > 1e-10) {
            throw std::runtime_error("charpoly_coeffs_small: non-real coefficient residue");
        }
        out[k] = c[k].real();
    }
    return out;
}

} // namespace wignerlab
