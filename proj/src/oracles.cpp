#include "wignerlab/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace wignerlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string uint128_to_string(uint128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {
double uint128_to_double(uint128 v) {
    const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(v);
    return std::ldexp(static_cast<double>(hi), 64) + static_cast<double>(lo);
}
} // namespace

double hermite(int n, double z) {
    if (n < 0) throw std::invalid_argument("hermite: n must be >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0, cur = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::pair<double, int> hermite_log_abs(int n, double z) {
    if (n < 0) throw std::invalid_argument("hermite_log_abs: n must be >= 0");
    if (n == 0) return {0.0, 1};
    double prev = 1.0, cur = 2.0 * z;
    double log_scale = 0.0;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
        const double m = std::max(std::fabs(prev), std::fabs(cur));
        if (m > 1e250) {
            prev = std::ldexp(prev, -900);
            cur = std::ldexp(cur, -900);
            log_scale += 900.0 * std::numbers::ln2;
        }
    }
    if (cur == 0.0) return {-kInf, 0};
    return {std::log(std::fabs(cur)) + log_scale, cur > 0.0 ? 1 : -1};
}

double hermite_bound_ratio(int n, double z) {
    if (n < 1) throw std::invalid_argument("hermite_bound_ratio: n must be >= 1");
    const double arg = std::sqrt(0.5 * static_cast<double>(n)) * z;
    const auto [la, sign] = hermite_log_abs(n, arg);
    if (sign == 0) return 0.0;
    const double log_bound = 0.5 * (n + 1) * std::log(2.0 * n) +
                             n * (0.25 * z * z - 0.5);
    return std::exp(la - log_bound);
}

double expected_charpoly_zero_diag(int n, double z) {
    if (n < 0) throw std::invalid_argument("expected_charpoly_zero_diag: n must be >= 0");
    if (n == 0) return 1.0;
    return std::exp2(-0.5 * n) * hermite(n, z / std::numbers::sqrt2);
}

std::complex<double> det_shifted(const HermitianMatrix& M, std::complex<double> z) {
    const std::size_t n = M.size();
    std::vector<std::complex<double>> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = -M(i, j);
        a[i * n + i] += z;
    }
    std::complex<double> det(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::norm(a[k * n + k]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double v = std::norm(a[r * n + k]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return {0.0, 0.0};
        if (pivot != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(a[k * n + c], a[pivot * n + c]);
            det = -det;
        }
        det *= a[k * n + k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const std::complex<double> f = a[r * n + k] / a[k * n + k];
            for (std::size_t c = k + 1; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
        }
    }
    return det;
}

std::complex<double> exhaustive_expectation(
    std::size_t n, const std::function<std::complex<double>(const HermitianMatrix&)>& f,
    bool zero_diagonal) {
    std::complex<double> sum(0.0, 0.0);
    std::size_t count = 0;
    for_each_symmetric_rademacher(n, zero_diagonal, [&](const HermitianMatrix& M) {
        sum += f(M);
        ++count;
    });
    return sum / static_cast<double>(count);
}

// ---------------------------------------------------------------------------
// Stirling numbers and the cycle-count bound.
// ---------------------------------------------------------------------------

namespace {
constexpr int kStirlingMax = 20;

const std::array<std::array<uint128, kStirlingMax + 1>, kStirlingMax + 1>& stirling_table() {
    static const auto table = [] {
        std::array<std::array<uint128, kStirlingMax + 1>, kStirlingMax + 1> t{};
        t[0][0] = 1;
        for (int n = 1; n <= kStirlingMax; ++n) {
            for (int l = 1; l <= n; ++l) {
                t[n][l] = t[n - 1][l - 1] + static_cast<uint128>(n - 1) * t[n - 1][l];
            }
        }
        return t;
    }();
    return table;
}

uint128 factorial_u128(int n) {
    uint128 f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<uint128>(k);
    return f;
}
} // namespace

uint128 stirling_cycle_count(int n, int l) {
    if (n < 1 || n > kStirlingMax || l < 1 || l > n) {
        throw std::invalid_argument("stirling_cycle_count: need 1 <= l <= n <= 20");
    }
    return stirling_table()[n][l];
}

CycleBoundCheck cycle_bound_check(int n, int l) {
    const uint128 count = stirling_cycle_count(n, l);
    CycleBoundCheck out;
    out.count = count;
    out.count_scaled = count << l;
    out.bound_scaled = static_cast<uint128>(2) * static_cast<uint128>(n) * factorial_u128(n);
    out.holds = out.count_scaled <= out.bound_scaled;
    out.bound_value = std::ldexp(uint128_to_double(out.bound_scaled), -l);
    return out;
}

MomentModel MomentModel::centered_bernoulli(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("MomentModel: p must be in (0,1)");
    const double q = 1.0 - p;
    return {0.0, 1.0, 1.0, (p * p * p + q * q * q) / (p * q), true};
}

RSumKind rsum_kind_from_string(const std::string& s) {
    if (s == "R0" || s == "r0") return RSumKind::R0;
    if (s == "R1" || s == "r1") return RSumKind::R1;
    if (s == "R2" || s == "r2") return RSumKind::R2;
    if (s == "R3" || s == "r3") return RSumKind::R3;
    throw std::invalid_argument("unknown R-sum kind: " + s);
}

// ---------------------------------------------------------------------------
// Partial sums of |det(zI - M_n[0])|^2 over permutation pairs.
// ---------------------------------------------------------------------------

namespace {

struct PermRecord {
    unsigned set_size = 0;
    int parity = 0;                          // 0/1
    std::uint32_t twocycle_mask = 0;         // bit per unordered pair forming a 2-cycle
    std::vector<std::uint32_t> long_keys;    // sorted normalized keys of cycles length >= 3
    std::vector<std::pair<int, int>> edges;  // (pair id, multiplicity) sorted by pair id
    bool only_twocycles = false;
};

int pair_id(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    return i * n + j; // sparse but tiny for n <= 5
}

// canonical key of a cycle: walk from its smallest element; elements packed
// 3 bits each (n <= 5) with a leading length marker
std::uint32_t cycle_key(const std::vector<int>& cyc) {
    const auto smallest = std::min_element(cyc.begin(), cyc.end());
    const std::size_t start = static_cast<std::size_t>(smallest - cyc.begin());
    std::uint32_t key = static_cast<std::uint32_t>(cyc.size());
    for (std::size_t t = 0; t < cyc.size(); ++t) {
        key = (key << 3) | static_cast<std::uint32_t>(cyc[(start + t) % cyc.size()]);
    }
    return key;
}

std::uint32_t cycle_key_normalized(const std::vector<int>& cyc) {
    std::vector<int> rev(cyc.rbegin(), cyc.rend());
    return std::min(cycle_key(cyc), cycle_key(rev));
}

// All (subset, fixed-point-free permutation) pairs for ground set size n.
std::vector<PermRecord> build_perm_records(int n) {
    std::vector<PermRecord> records;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> elems;
        for (int b = 0; b < n; ++b) {
            if (mask & (1u << b)) elems.push_back(b);
        }
        const std::size_t m = elems.size();
        if (m == 1) continue; // a single element cannot avoid a fixed point
        std::vector<int> img(elems);
        do {
            bool fixed = false;
            for (std::size_t t = 0; t < m; ++t) {
                if (img[t] == elems[t]) {
                    fixed = true;
                    break;
                }
            }
            if (fixed && m > 0) continue;

            PermRecord rec;
            rec.set_size = static_cast<unsigned>(m);
            std::vector<char> seen(m, 0);
            std::vector<std::pair<int, int>> edge_list;
            int parity = 0;
            bool only_two = true;
            for (std::size_t s = 0; s < m; ++s) {
                if (seen[s]) continue;
                std::vector<int> cyc;
                std::size_t t = s;
                while (!seen[t]) {
                    seen[t] = 1;
                    cyc.push_back(elems[t]);
                    const int image = img[t];
                    t = static_cast<std::size_t>(
                        std::lower_bound(elems.begin(), elems.end(), image) - elems.begin());
                }
                parity += static_cast<int>(cyc.size()) - 1;
                if (cyc.size() == 2) {
                    rec.twocycle_mask |= 1u << pair_id(cyc[0], cyc[1], n);
                    edge_list.emplace_back(pair_id(cyc[0], cyc[1], n), 2);
                } else {
                    only_two = false;
                    rec.long_keys.push_back(cycle_key_normalized(cyc));
                    for (std::size_t t2 = 0; t2 < cyc.size(); ++t2) {
                        edge_list.emplace_back(
                            pair_id(cyc[t2], cyc[(t2 + 1) % cyc.size()], n), 1);
                    }
                }
            }
            rec.parity = parity & 1;
            rec.only_twocycles = only_two;
            std::sort(rec.long_keys.begin(), rec.long_keys.end());
            std::sort(edge_list.begin(), edge_list.end());
            rec.edges = std::move(edge_list);
            records.push_back(std::move(rec));
        } while (std::next_permutation(img.begin(), img.end()));
    }
    return records;
}

bool in_class(RSumKind kind, const PermRecord& a, const PermRecord& b) {
    switch (kind) {
    case RSumKind::R3:
        return true;
    case RSumKind::R2:
        return (a.twocycle_mask & b.twocycle_mask) == 0;
    case RSumKind::R1:
        return (a.twocycle_mask & b.twocycle_mask) == 0 && a.long_keys == b.long_keys;
    case RSumKind::R0:
        return a.only_twocycles && b.only_twocycles &&
               (a.twocycle_mask & b.twocycle_mask) == 0;
    }
    return false;
}

// E(xi_sigma xi_sigma') from per-pair exponents; real symmetric entries.
double pair_moment_product(const PermRecord& a, const PermRecord& b, const MomentModel& m,
                           std::array<int, 32>& scratch) {
    scratch.fill(0);
    for (const auto& [id, mult] : a.edges) scratch[static_cast<std::size_t>(id)] += mult;
    for (const auto& [id, mult] : b.edges) scratch[static_cast<std::size_t>(id)] += mult;
    double value = 1.0;
    for (const auto& [id, mult] : a.edges) {
        const int deg = scratch[static_cast<std::size_t>(id)];
        if (deg == 0) continue;
        scratch[static_cast<std::size_t>(id)] = 0;
        if (deg & 1) return 0.0;
        value *= (deg == 2) ? m.off_m2 : m.off_abs4;
    }
    for (const auto& [id, mult] : b.edges) {
        const int deg = scratch[static_cast<std::size_t>(id)];
        if (deg == 0) continue;
        scratch[static_cast<std::size_t>(id)] = 0;
        if (deg & 1) return 0.0;
        value *= (deg == 2) ? m.off_m2 : m.off_abs4;
    }
    return value;
}

void check_rsum_args(int n, const MomentModel& m) {
    if (n < 1 || n > 5) throw std::invalid_argument("partial_sum_R: n must be in 1..5");
    if (!m.real_symmetric) {
        throw std::invalid_argument("partial_sum_R: only real symmetric moment models");
    }
    if (std::fabs(m.off_m2 - 1.0) > 1e-12) {
        throw std::invalid_argument("partial_sum_R: off-diagonal second moment must be 1");
    }
}

} // namespace

double partial_sum_R(RSumKind kind, int n, double z, const MomentModel& m) {
    check_rsum_args(n, m);
    const std::vector<PermRecord> records = build_perm_records(n);
    std::vector<double> zpow(2 * static_cast<std::size_t>(n) + 1, 1.0);
    for (std::size_t k = 1; k < zpow.size(); ++k) zpow[k] = zpow[k - 1] * z;

    std::array<int, 32> scratch{};
    double sum = 0.0, comp = 0.0;
    for (const PermRecord& a : records) {
        for (const PermRecord& b : records) {
            if (!in_class(kind, a, b)) continue;
            const double moment = pair_moment_product(a, b, m, scratch);
            if (moment == 0.0) continue;
            const int sign_bits = (static_cast<int>(a.set_size + b.set_size) + a.parity + b.parity) & 1;
            const double term = (sign_bits ? -1.0 : 1.0) * moment *
                                zpow[2 * static_cast<std::size_t>(n) - a.set_size - b.set_size];
            const double t = sum + term;
            comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
    }
    return sum + comp;
}

std::uint64_t partial_sum_R_count(RSumKind kind, int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("partial_sum_R_count: n must be in 1..5");
    const std::vector<PermRecord> records = build_perm_records(n);
    std::uint64_t count = 0;
    for (const PermRecord& a : records) {
        for (const PermRecord& b : records) {
            if (in_class(kind, a, b)) ++count;
        }
    }
    return count;
}

double r0_inclusion_exclusion(int n, double z) {
    if (n < 1) throw std::invalid_argument("r0_inclusion_exclusion: n must be >= 1");
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 0; 2 * k <= n; ++k) {
        // C(n, 2k) (2k-1)!! choices of the shared 2-cycle block
        double ways = 1.0;
        for (int t = 0; t < 2 * k; ++t) ways *= static_cast<double>(n - t);
        for (int t = 1; t <= k; ++t) ways /= 2.0 * static_cast<double>(t);
        const double ep = expected_charpoly_zero_diag(n - 2 * k, z);
        sum += sign * ways * ep * ep;
        sign = -sign;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Polynomial inequalities.
// ---------------------------------------------------------------------------

namespace {

std::complex<double> horner(const PolynomialR& q, std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = q.size(); k-- > 0;) acc = acc * z + q[k];
    return acc;
}

double horner_real(const PolynomialR& q, double x) {
    double acc = 0.0;
    for (std::size_t k = q.size(); k-- > 0;) acc = acc * x + q[k];
    return acc;
}

} // namespace

double markov_ratio(const PolynomialR& q, const std::vector<ComplexPoint>& grid) {
    if (q.size() < 2 || q.back() == 0.0) {
        throw std::invalid_argument("markov_ratio: degree must be >= 1 with nonzero leading coefficient");
    }
    if (grid.empty()) throw std::invalid_argument("markov_ratio: empty grid");
    const std::size_t deg = q.size() - 1;
    PolynomialR dq(deg);
    for (std::size_t k = 0; k < deg; ++k) dq[k] = static_cast<double>(k + 1) * q[k + 1];
    double max_q = 0.0, max_dq = 0.0;
    for (const ComplexPoint& z : grid) {
        max_q = std::max(max_q, std::abs(horner(q, z)));
        max_dq = std::max(max_dq, std::abs(horner(dq, z)));
    }
    return max_dq / (static_cast<double>(deg) * static_cast<double>(deg) * max_q);
}

double net_sup_ratio(const PolynomialR& q, const std::vector<ComplexPoint>& grid,
                     const std::vector<double>& log_weights, const std::vector<std::size_t>& net) {
    if (net.empty()) throw std::invalid_argument("net_sup_ratio: empty net");
    if (grid.size() != log_weights.size()) {
        throw std::invalid_argument("net_sup_ratio: grid/weight size mismatch");
    }
    bool all_real = true;
    for (const ComplexPoint& z : grid) {
        if (z.imag() != 0.0) {
            all_real = false;
            break;
        }
    }
    std::vector<double> vals(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double absq = all_real ? std::fabs(horner_real(q, grid[k].real()))
                                     : std::abs(horner(q, grid[k]));
        vals[k] = (absq > 0.0 ? std::log(absq) : -kInf) + log_weights[k];
    }
    const double max_grid = *std::max_element(vals.begin(), vals.end());
    double max_net = -kInf;
    for (std::size_t idx : net) {
        if (idx >= vals.size()) throw std::invalid_argument("net_sup_ratio: net index out of range");
        max_net = std::max(max_net, vals[idx]);
    }
    return std::exp(max_grid - max_net);
}

} // namespace wignerlab
