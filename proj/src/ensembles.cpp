#include "wignerlab/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace wignerlab {

EntryDistribution EntryDistribution::real_gaussian(double variance) {
    if (variance < 0.0 || !std::isfinite(variance)) {
        throw std::invalid_argument("real_gaussian: variance must be finite and nonnegative");
    }
    return EntryDistribution(Kind::RealGaussian, variance);
}

EntryDistribution EntryDistribution::complex_gaussian_unit() {
    return EntryDistribution(Kind::ComplexGaussianUnit, 1.0);
}

EntryDistribution EntryDistribution::rademacher() {
    return EntryDistribution(Kind::Rademacher, 0.0);
}

EntryDistribution EntryDistribution::centered_bernoulli(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("centered_bernoulli: p must be in (0,1)");
    return EntryDistribution(Kind::CenteredBernoulli, p);
}

EntryDistribution EntryDistribution::custom_discrete(std::vector<double> support,
                                                     std::vector<double> probs) {
    if (support.empty() || support.size() != probs.size()) {
        throw std::invalid_argument("custom_discrete: support/probability size mismatch");
    }
    double mean = 0.0, total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (probs[i] < 0.0) throw std::invalid_argument("custom_discrete: negative probability");
        mean += probs[i] * support[i];
        total += probs[i];
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("custom_discrete: probabilities must sum to 1");
    }
    if (std::fabs(mean) > 1e-12) {
        throw std::invalid_argument("custom_discrete: mean must be 0");
    }
    EntryDistribution d(Kind::CustomDiscrete, 0.0);
    d.support_ = std::move(support);
    d.cumprob_.resize(probs.size());
    double c = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        c += probs[i];
        d.cumprob_[i] = c;
    }
    d.cumprob_.back() = 1.0;
    d.probs_from_cum_ = probs; // keep the exact probabilities for moments
    return d;
}

std::string EntryDistribution::name() const {
    switch (kind_) {
    case Kind::RealGaussian: return "real-gaussian";
    case Kind::ComplexGaussianUnit: return "complex-gaussian";
    case Kind::Rademacher: return "rademacher";
    case Kind::CenteredBernoulli: return "centered-bernoulli";
    case Kind::CustomDiscrete: return "custom-discrete";
    }
    return "?";
}

double EntryDistribution::sample_real(RngStream& rng) const {
    switch (kind_) {
    case Kind::RealGaussian:
        return param_ == 0.0 ? 0.0 : std::sqrt(param_) * rng.next_gaussian();
    case Kind::Rademacher:
        return rng.next_sign();
    case Kind::CenteredBernoulli: {
        const double sigma = std::sqrt(param_ * (1.0 - param_));
        const double b = rng.next_bernoulli(param_) ? 1.0 : 0.0;
        return (b - param_) / sigma;
    }
    case Kind::CustomDiscrete: {
        const double u = rng.next_uniform();
        std::size_t i = 0;
        while (i + 1 < cumprob_.size() && u >= cumprob_[i]) ++i;
        return support_[i];
    }
    case Kind::ComplexGaussianUnit:
        throw std::invalid_argument("complex-gaussian cannot be sampled as a real law");
    }
    return 0.0;
}

std::complex<double> EntryDistribution::sample(RngStream& rng) const {
    if (kind_ == Kind::ComplexGaussianUnit) {
        const double re = rng.next_gaussian();
        const double im = rng.next_gaussian();
        return {re * std::sqrt(0.5), im * std::sqrt(0.5)};
    }
    return {sample_real(rng), 0.0};
}

Moments moments_of(const EntryDistribution& d) {
    switch (d.kind()) {
    case EntryDistribution::Kind::RealGaussian: {
        const double v = d.param();
        return {0.0, v, v, 3.0 * v * v};
    }
    case EntryDistribution::Kind::ComplexGaussianUnit:
        return {0.0, 1.0, 0.0, 2.0};
    case EntryDistribution::Kind::Rademacher:
        return {0.0, 1.0, 1.0, 1.0};
    case EntryDistribution::Kind::CenteredBernoulli: {
        const double p = d.param();
        const double q = 1.0 - p;
        return {0.0, 1.0, 1.0, (p * p * p + q * q * q) / (p * q)};
    }
    case EntryDistribution::Kind::CustomDiscrete: {
        double m2 = 0.0, m4 = 0.0;
        for (std::size_t i = 0; i < d.support_.size(); ++i) {
            const double v = d.support_[i];
            const double p = d.probs_from_cum_[i];
            m2 += p * v * v;
            m4 += p * v * v * v * v;
        }
        return {0.0, m2, m2, m4};
    }
    }
    return {};
}

WignerSpec::WignerSpec(std::size_t n, EntryDistribution offdiag)
    : WignerSpec(n, std::move(offdiag), EntryDistribution::real_gaussian(0.0)) {}

WignerSpec::WignerSpec(std::size_t n_, EntryDistribution offdiag_, EntryDistribution diag_)
    : n(n_), offdiag(std::move(offdiag_)), diag(std::move(diag_)) {
    if (n == 0) throw std::invalid_argument("WignerSpec: n must be positive");
    if (!diag.is_real()) throw std::invalid_argument("WignerSpec: diagonal law must be real");
    const Moments m = moments_of(offdiag);
    if (std::fabs(m.variance - 1.0) > 1e-12) {
        throw std::invalid_argument("WignerSpec: off-diagonal variance must be 1");
    }
    if (!std::isfinite(m.abs_fourth_moment)) {
        throw std::invalid_argument("WignerSpec: off-diagonal fourth moment must be finite");
    }
}

HermitianMatrix sample_wigner(const WignerSpec& spec, Seed seed) {
    RngStream rng(seed);
    const std::size_t n = spec.n;
    HermitianMatrix M(n);
    for (std::size_t i = 0; i < n; ++i) {
        M.set(i, i, spec.diag.sample_real(rng));
        for (std::size_t j = i + 1; j < n; ++j) {
            M.set(i, j, spec.offdiag.sample(rng));
        }
    }
    return M;
}

HermitianMatrix scale_to_w(const HermitianMatrix& M) {
    return M.scaled(1.0 / std::sqrt(static_cast<double>(M.size())));
}

HermitianMatrix sample_er_adjacency(std::size_t n, double p, Seed seed) {
    if (!(p > 0.0 && p <= 0.5)) {
        throw std::invalid_argument("sample_er_adjacency: p must be in (0, 1/2]");
    }
    RngStream rng(seed);
    HermitianMatrix A(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            A.set(i, j, rng.next_bernoulli(p) ? 1.0 : 0.0);
        }
    }
    return A;
}

HermitianMatrix er_normalize(const HermitianMatrix& A, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("er_normalize: p must be in (0,1)");
    const double sigma = std::sqrt(p * (1.0 - p));
    return A.scaled(1.0 / (std::sqrt(static_cast<double>(A.size())) * sigma));
}

HermitianMatrix er_center(const HermitianMatrix& W, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("er_center: p must be in (0,1)");
    const std::size_t n = W.size();
    const double shift = p / (std::sqrt(p * (1.0 - p)) * std::sqrt(static_cast<double>(n)));
    HermitianMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        // the -J and +I corrections cancel exactly on the diagonal
        out.set(i, i, W(i, i).real() - shift + shift);
        for (std::size_t j = i + 1; j < n; ++j) {
            out.set(i, j, W(i, j) - shift);
        }
    }
    return out;
}

void for_each_symmetric_rademacher(std::size_t n, bool zero_diagonal,
                                   const std::function<void(const HermitianMatrix&)>& fn) {
    if (n == 0 || n > 4) {
        throw std::invalid_argument("for_each_symmetric_rademacher: n must be in 1..4");
    }
    // free slots in row-major upper-triangle order
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i) {
        if (!zero_diagonal) slots.emplace_back(i, i);
        for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    }
    const std::size_t m = slots.size();
    const std::uint64_t total = 1ULL << m;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        HermitianMatrix M(n);
        for (std::size_t k = 0; k < m; ++k) {
            // first slot is the most significant digit; -1 sorts before +1
            const bool plus = (mask >> (m - 1 - k)) & 1ULL;
            M.set(slots[k].first, slots[k].second, plus ? 1.0 : -1.0);
        }
        fn(M);
    }
}

std::vector<HermitianMatrix> enumerate_symmetric_rademacher(std::size_t n, bool zero_diagonal) {
    std::vector<HermitianMatrix> out;
    for_each_symmetric_rademacher(n, zero_diagonal,
                                  [&](const HermitianMatrix& M) { out.push_back(M); });
    return out;
}

} // namespace wignerlab
