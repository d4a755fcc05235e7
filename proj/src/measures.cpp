#include "wignerlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wignerlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

AtomicMeasure::AtomicMeasure(std::vector<double> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("AtomicMeasure: needs at least one atom");
    for (double a : atoms_) {
        if (!std::isfinite(a)) throw std::invalid_argument("AtomicMeasure: atoms must be finite");
    }
    std::sort(atoms_.begin(), atoms_.end());
}

double AtomicMeasure::mean_abs() const {
    double s = 0.0;
    for (double a : atoms_) s += std::fabs(a);
    return s / static_cast<double>(atoms_.size());
}

double AtomicMeasure::mean() const {
    double s = 0.0;
    for (double a : atoms_) s += a;
    return s / static_cast<double>(atoms_.size());
}

double AtomicMeasure::second_moment() const {
    double s = 0.0;
    for (double a : atoms_) s += a * a;
    return s / static_cast<double>(atoms_.size());
}

double AtomicMeasure::cdf(double x) const {
    auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
    return static_cast<double>(it - atoms_.begin()) * weight();
}

double AtomicMeasure::cdf_left(double x) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
    return static_cast<double>(it - atoms_.begin()) * weight();
}

std::string AtomicMeasure::to_text() const {
    std::string out;
    char buf[64];
    for (double a : atoms_) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", a);
        out += buf;
    }
    return out;
}

AtomicMeasure AtomicMeasure::from_text(const std::string& text) {
    std::vector<double> atoms;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        atoms.push_back(std::stod(line));
    }
    return AtomicMeasure(std::move(atoms));
}

double sc_density(double x) {
    const double t = 4.0 - x * x;
    return t > 0.0 ? std::sqrt(t) / (2.0 * kPi) : 0.0;
}

double sc_cdf(double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    const double s = std::sqrt(4.0 - x * x);
    return 0.5 + x * s / (4.0 * kPi) + std::asin(0.5 * x) / kPi;
}

double sc_cdf_integral(double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return x; // G(2) = 2, then F == 1
    const double t = 4.0 - x * x;
    return x * sc_cdf(x) + std::pow(t, 1.5) / (6.0 * kPi);
}

double sc_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sc_quantile: p must be in (0,1)");
    double lo = -2.0, hi = 2.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (sc_cdf(mid) < p ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    // Newton polish where the density is bounded away from 0
    for (int i = 0; i < 3; ++i) {
        const double d = sc_density(x);
        if (d < 1e-8) break;
        x -= (sc_cdf(x) - p) / d;
        x = std::clamp(x, -2.0, 2.0);
    }
    return x;
}

double sc_interval_mass(double lo, double hi) {
    if (hi <= lo) return 0.0;
    return sc_cdf(hi) - sc_cdf(lo);
}

double sc_mean_abs() { return 8.0 / (3.0 * kPi); }

AtomicMeasure sc_quantile_atoms(std::size_t n) {
    std::vector<double> atoms(n);
    for (std::size_t k = 0; k < n; ++k) {
        atoms[k] = sc_quantile((static_cast<double>(k) + 0.5) / static_cast<double>(n));
    }
    return AtomicMeasure(std::move(atoms));
}

} // namespace wignerlab
