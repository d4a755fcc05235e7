#pragma once

#include <cmath>
#include <cstdint>

namespace wignerlab {

/// Identifies one reproducible random stream: a master seed plus a derived
/// per-sample stream id. Equal (master, stream) pairs yield identical draws
/// regardless of thread count or sampling order.
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// Derive the stream id for sample `index` of a run seeded with `master`.
inline Seed derive_seed(std::uint64_t master, std::uint64_t index) {
    return Seed{master, detail::splitmix64(master ^ detail::splitmix64(index))};
}

/// Counter-based generator (splitmix64 core): the state is a counter advanced
/// by a fixed odd increment and each output is a bijective mix of it, so a
/// stream is a pure function of (master, stream, draw index).
class RngStream {
public:
    explicit RngStream(Seed seed)
        : counter_(detail::splitmix64(seed.master) ^ (seed.stream * 0xda942042e4dd58b5ULL)) {}

    RngStream(std::uint64_t master, std::uint64_t index) : RngStream(derive_seed(master, index)) {}

    std::uint64_t next_u64() { return detail::splitmix64(counter_ += kGamma); }

    /// Uniform on [0,1), 53-bit resolution.
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0,1]; never zero, safe as a log argument.
    double next_unit() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; consumes exactly two draws per pair.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double r = std::sqrt(-2.0 * std::log(next_unit()));
        const double t = 6.283185307179586476925286766559 * next_uniform();
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

    bool next_bernoulli(double p) { return next_uniform() < p; }

    /// ±1 with equal probability.
    double next_sign() { return (next_u64() & 1) ? 1.0 : -1.0; }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t counter_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace wignerlab
