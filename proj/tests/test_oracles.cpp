#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "wignerlab/oracles.hpp"

using namespace wignerlab;

namespace {

// explicit sum formula, exact factorial arithmetic in double
double hermite_sum(int n, double z) {
    double total = 0.0;
    for (int k = 0; 2 * k <= n; ++k) {
        double term = 1.0;
        for (int t = 0; t < n - 2 * k; ++t) term *= 2.0 * z;
        for (int t = n; t > n - 2 * k; --t) term *= t;
        for (int t = 2; t <= k; ++t) term /= t;
        total += (k % 2 ? -1.0 : 1.0) * term;
    }
    return total;
}

// recurrence with the 2k factor dropped; used by the mutation check
double hermite_broken(int n, double z) {
    if (n == 0) return 1.0;
    double prev = 1.0, cur = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * z * cur - static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace

TEST_CASE("hermite recurrence") {
    CHECK(hermite(0, 1.7) == 1.0);
    CHECK(hermite(1, 1.7) == doctest::Approx(3.4));
    CHECK(hermite(2, 1.0) == doctest::Approx(2.0));
    CHECK(hermite(3, 1.0) == doctest::Approx(-4.0));
    for (int n = 0; n <= 20; ++n) {
        for (double z : {-2.0, -0.7, 0.0, 0.3, 1.0, 2.5}) {
            const double a = hermite(n, z);
            const double b = hermite_sum(n, z);
            CHECK(std::fabs(a - b) <= 1e-10 * std::max({std::fabs(a), std::fabs(b), 1.0}));
        }
    }
}

TEST_CASE("log-scaled hermite") {
    for (int n : {5, 40, 120}) {
        for (double z : {0.3, -1.8, 4.0}) {
            const auto [la, sign] = hermite_log_abs(n, z);
            const double plain = hermite(n, z);
            if (std::isfinite(plain) && plain != 0.0) {
                CHECK(la == doctest::Approx(std::log(std::fabs(plain))).epsilon(1e-12));
                CHECK(sign == (plain > 0 ? 1 : -1));
            }
        }
    }
    // n = 400 far beyond plain double range
    const auto [la, sign] = hermite_log_abs(400, 10.0);
    CHECK(std::isfinite(la));
    CHECK(sign != 0);
    CHECK(hermite_log_abs(1, 0.0).second == 0); // H_1(0) = 0
}

TEST_CASE("hermite bound ratio") {
    CHECK(hermite_bound_ratio(1, 0.0) == 0.0);
    CHECK(hermite_bound_ratio(2, 0.0) ==
          doctest::Approx(std::numbers::e / 4.0).epsilon(1e-12));
    for (int n : {1, 3, 10, 50, 200}) {
        for (double z = -5.0; z <= 5.0; z += 0.25) {
            const double r = hermite_bound_ratio(n, z);
            CHECK(std::isfinite(r));
            CHECK(r >= 0.0);
            CHECK(r < 10.0); // generous ceiling; the suite fits the real constant
        }
    }
}

TEST_CASE("expected characteristic polynomial of the zero-diagonal ensemble") {
    for (double z : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
        CHECK(expected_charpoly_zero_diag(1, z) == testsupport::approx_abs(z, 1e-14));
        CHECK(expected_charpoly_zero_diag(2, z) == testsupport::approx_abs(z * z - 1.0, 1e-13));
    }
    for (std::size_t n = 1; n <= 4; ++n) {
        for (double z : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            const double lhs =
                exhaustive_expectation(
                    n, [&](const HermitianMatrix& M) { return det_shifted(M, z); }, true)
                    .real();
            CHECK(lhs == testsupport::approx_abs(expected_charpoly_zero_diag(static_cast<int>(n), z), 1e-10));
        }
    }
}

TEST_CASE("mutation of the hermite recurrence is caught by the exhaustive check") {
    double worst = 0.0;
    for (std::size_t n = 2; n <= 4; ++n) {
        for (double z : {-2.0, -1.0, 1.0, 2.0}) {
            const double lhs =
                exhaustive_expectation(
                    n, [&](const HermitianMatrix& M) { return det_shifted(M, z); }, true)
                    .real();
            const double broken =
                std::exp2(-0.5 * static_cast<double>(n)) *
                hermite_broken(static_cast<int>(n), z / std::numbers::sqrt2);
            worst = std::max(worst, std::fabs(lhs - broken));
        }
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("exhaustive expectation basics") {
    const auto tr = exhaustive_expectation(
        3, [](const HermitianMatrix& M) { return std::complex<double>(M.trace(), 0.0); }, true);
    CHECK(std::abs(tr) == 0.0);
    const auto sq = exhaustive_expectation(
        3,
        [](const HermitianMatrix& M) {
            return std::complex<double>(M(0, 1).real() * M(0, 1).real(), 0.0);
        },
        true);
    CHECK(sq.real() == doctest::Approx(1.0));
    const auto det3 = exhaustive_expectation(
        3, [](const HermitianMatrix& M) { return det_shifted(M, 1.0); }, true);
    CHECK(det3.real() == testsupport::approx_abs(expected_charpoly_zero_diag(3, 1.0), 1e-12));
}

TEST_CASE("stirling cycle counts") {
    CHECK(stirling_cycle_count(3, 1) == 2);
    CHECK(stirling_cycle_count(3, 2) == 3);
    CHECK(stirling_cycle_count(3, 3) == 1);
    for (int n = 1; n <= 8; ++n) CHECK(stirling_cycle_count(n, n) == 1);

    // against factorial enumeration
    for (int n = 1; n <= 8; ++n) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::vector<std::uint64_t> hist(n + 1, 0);
        do {
            std::vector<char> seen(n, 0);
            int cycles = 0;
            for (int s = 0; s < n; ++s) {
                if (seen[s]) continue;
                ++cycles;
                int t = s;
                while (!seen[t]) {
                    seen[t] = 1;
                    t = perm[t];
                }
            }
            ++hist[cycles];
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (int l = 1; l <= n; ++l) {
            CHECK(stirling_cycle_count(n, l) == static_cast<uint128>(hist[l]));
        }
    }
    CHECK_THROWS_AS((void)stirling_cycle_count(21, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)stirling_cycle_count(4, 0), std::invalid_argument);
}

TEST_CASE("uint128 decimal strings") {
    CHECK(uint128_to_string(0) == "0");
    CHECK(uint128_to_string(1234567) == "1234567");
    uint128 f20 = 1;
    for (int k = 2; k <= 20; ++k) f20 *= k;
    CHECK(uint128_to_string(f20) == "2432902008176640000");
}

TEST_CASE("cycle count bound") {
    const CycleBoundCheck c31 = cycle_bound_check(3, 1);
    CHECK(c31.count == 2);
    CHECK(c31.bound_value == doctest::Approx(18.0));
    CHECK(c31.holds);
    const CycleBoundCheck c11 = cycle_bound_check(1, 1);
    CHECK(c11.count == 1);
    CHECK(c11.bound_value == doctest::Approx(1.0));
    CHECK(c11.holds);
    for (int n = 1; n <= 20; ++n) {
        for (int l = 1; l <= n; ++l) CHECK(cycle_bound_check(n, l).holds);
    }
}

TEST_CASE("partial sums of |det|^2, hand values at n = 2") {
    const MomentModel rad = MomentModel::rademacher();
    for (double z : {-1.5, 0.0, 0.7, 2.0}) {
        const double z2 = z * z;
        CHECK(partial_sum_R(RSumKind::R0, 2, z, rad) ==
              testsupport::approx_abs(z2 * z2 - 2.0 * z2, 1e-12));
        CHECK(partial_sum_R(RSumKind::R1, 2, z, rad) ==
              testsupport::approx_abs(z2 * z2 - 2.0 * z2, 1e-12));
        CHECK(partial_sum_R(RSumKind::R2, 2, z, rad) ==
              testsupport::approx_abs(z2 * z2 - 2.0 * z2, 1e-12));
        CHECK(partial_sum_R(RSumKind::R3, 2, z, rad) ==
              testsupport::approx_abs(z2 * z2 - 2.0 * z2 + 1.0, 1e-12));
    }
    // gaussian model differs only through the fourth moment
    const MomentModel g = MomentModel::real_gaussian();
    CHECK(partial_sum_R(RSumKind::R3, 2, 0.5, g) ==
          testsupport::approx_abs(0.0625 - 0.5 + 3.0, 1e-12));
}

TEST_CASE("r3 keystone against the exhaustive enumeration") {
    for (int n = 2; n <= 3; ++n) {
        for (double z : {-2.0, -1.0, -0.3, 0.0, 0.4, 1.0, 2.0}) {
            const double lhs = partial_sum_R(RSumKind::R3, n, z, MomentModel::rademacher());
            const double rhs =
                exhaustive_expectation(
                    static_cast<std::size_t>(n),
                    [&](const HermitianMatrix& M) {
                        const std::complex<double> d = det_shifted(M, z);
                        return std::complex<double>(std::norm(d), 0.0);
                    },
                    true)
                    .real();
            CHECK(lhs == testsupport::approx_abs(rhs, 1e-10));
        }
    }
}

TEST_CASE("keystone detects a corrupted fourth moment") {
    // feeding the wrong |xi|^4 must break the exhaustive cross-check
    MomentModel wrong = MomentModel::rademacher();
    wrong.off_abs4 = 2.0;
    double worst = 0.0;
    for (double z : {0.0, 1.0, 2.0}) {
        const double lhs = partial_sum_R(RSumKind::R3, 2, z, wrong);
        const double rhs =
            exhaustive_expectation(
                2,
                [&](const HermitianMatrix& M) {
                    const std::complex<double> d = det_shifted(M, z);
                    return std::complex<double>(std::norm(d), 0.0);
                },
                true)
                .real();
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    CHECK(worst > 0.5);
}

TEST_CASE("r2 equals r1 exactly and class counts are nested") {
    const MomentModel models[] = {MomentModel::rademacher(), MomentModel::real_gaussian(),
                                  MomentModel::centered_bernoulli(0.2)};
    for (int n = 2; n <= 5; ++n) {
        for (const MomentModel& m : models) {
            for (double z : {-3.0, -1.0, 0.0, 0.5, 1.7, 3.0}) {
                CHECK(partial_sum_R(RSumKind::R1, n, z, m) ==
                      partial_sum_R(RSumKind::R2, n, z, m));
            }
        }
        const auto c0 = partial_sum_R_count(RSumKind::R0, n);
        const auto c1 = partial_sum_R_count(RSumKind::R1, n);
        const auto c2 = partial_sum_R_count(RSumKind::R2, n);
        const auto c3 = partial_sum_R_count(RSumKind::R3, n);
        CHECK(c0 <= c1);
        CHECK(c1 <= c2);
        CHECK(c2 <= c3);
    }
    CHECK_THROWS_AS((void)partial_sum_R(RSumKind::R3, 6, 0.0, MomentModel::rademacher()),
                    std::invalid_argument);
}

TEST_CASE("r0 inclusion-exclusion route") {
    for (int n = 2; n <= 5; ++n) {
        for (double z : {-2.0, -0.5, 0.0, 1.0, 2.0, 3.0}) {
            CHECK(partial_sum_R(RSumKind::R0, n, z, MomentModel::rademacher()) ==
                  testsupport::approx_abs(r0_inclusion_exclusion(n, z), 1e-9));
        }
    }
}

TEST_CASE("bound shapes: ratios stay finite with no growth trend across n") {
    struct Shape {
        RSumKind kind;
        double extra_log; // log of the extra factor in the bound
        int power;        // n^{n+power}
    };
    const MomentModel rad = MomentModel::rademacher();
    const Shape shapes[] = {{RSumKind::R0, 0.0, 1},
                            {RSumKind::R1, 0.0, 4},
                            {RSumKind::R3, 0.5 * rad.off_abs4, 4}};
    for (const Shape& s : shapes) {
        std::vector<double> ratio(6, 0.0);
        for (int n = 2; n <= 5; ++n) {
            double worst = 0.0;
            for (double z = -3.0; z <= 3.0; z += 0.25) {
                const double v = std::fabs(partial_sum_R(s.kind, n, z, rad));
                const double log_bound = (n + s.power) * std::log(static_cast<double>(n)) +
                                         s.extra_log + 0.5 * z * z - n;
                worst = std::max(worst, v * std::exp(-log_bound));
            }
            ratio[n] = worst;
            CHECK(std::isfinite(worst));
        }
        // least squares slope of log ratio against n
        double mx = 0.0, my = 0.0;
        for (int n = 2; n <= 5; ++n) {
            mx += n;
            my += std::log(ratio[n]);
        }
        mx /= 4.0;
        my /= 4.0;
        double sxx = 0.0, sxy = 0.0;
        for (int n = 2; n <= 5; ++n) {
            sxx += (n - mx) * (n - mx);
            sxy += (n - mx) * (std::log(ratio[n]) - my);
        }
        CHECK(sxy / sxx <= 0.05);
    }
}

TEST_CASE("markov ratio") {
    // Q = z^d on [0,1]: max|Q'| = d, max|Q| = 1, ratio 1/d
    for (int d : {2, 5, 9}) {
        PolynomialR q(d + 1, 0.0);
        q[d] = 1.0;
        std::vector<ComplexPoint> grid;
        const int points = 64 * d * d;
        for (int k = 0; k < points; ++k) grid.emplace_back(static_cast<double>(k) / (points - 1), 0.0);
        CHECK(markov_ratio(q, grid) == doctest::Approx(1.0 / d).epsilon(1e-6));
    }
    // Q = z: ratio 1
    {
        PolynomialR q = {0.0, 1.0};
        std::vector<ComplexPoint> grid;
        for (int k = 0; k <= 256; ++k) grid.emplace_back(k / 256.0, 0.0);
        CHECK(markov_ratio(q, grid) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS((void)markov_ratio({1.0}, {{0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)markov_ratio({0.0, 1.0}, {}), std::invalid_argument);
}

TEST_CASE("net sup ratio") {
    RngStream rng(61, 0);
    // net equal to the grid gives exactly 1
    {
        const PolynomialR q = testsupport::poly_from_roots({-1.0, 0.5, 2.0});
        std::vector<ComplexPoint> grid;
        std::vector<double> logw;
        std::vector<std::size_t> net;
        for (int k = 0; k <= 500; ++k) {
            grid.emplace_back(-2.0 + 4.0 * k / 500.0, 0.0);
            logw.push_back(0.0);
            net.push_back(k);
        }
        CHECK(net_sup_ratio(q, grid, logw, net) == doctest::Approx(1.0));
        CHECK_THROWS_AS((void)net_sup_ratio(q, grid, logw, {}), std::invalid_argument);
    }
    // constant Q: the ratio is purely the weight-max ratio between grid and
    // net, and it tightens to 1 as the net refines
    {
        std::vector<ComplexPoint> grid;
        std::vector<double> logw;
        for (int k = 0; k <= 1024; ++k) {
            const double x = -2.0 + 4.0 * k / 1024.0;
            grid.emplace_back(x, 0.0);
            logw.push_back(-0.25 * x * x + x); // some smooth n*phi profile
        }
        const PolynomialR constant = {1.0};
        std::vector<std::size_t> coarse, fine;
        for (std::size_t k = 0; k < grid.size(); k += 128) coarse.push_back(k);
        for (std::size_t k = 0; k < grid.size(); k += 4) fine.push_back(k);
        const double max_all = *std::max_element(logw.begin(), logw.end());
        double max_coarse = -1e300;
        for (std::size_t k : coarse) max_coarse = std::max(max_coarse, logw[k]);
        CHECK(net_sup_ratio(constant, grid, logw, coarse) ==
              doctest::Approx(std::exp(max_all - max_coarse)));
        const double rc = net_sup_ratio(constant, grid, logw, coarse);
        const double rf = net_sup_ratio(constant, grid, logw, fine);
        CHECK(rf <= rc);
        CHECK(rf == doctest::Approx(1.0).epsilon(1e-3));
    }
    // random polynomials with roots in [-3,3], weight e^{-d u_sc}, spacing d^-3
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 49);
        std::vector<double> roots(d);
        for (double& r : roots) r = -3.0 + 6.0 * rng.next_uniform();
        const PolynomialR q = testsupport::poly_from_roots(roots);
        const double spacing = 1.0 / (static_cast<double>(d) * d * d);
        const std::size_t net_count =
            std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(4.0 / spacing)) + 1);
        const std::size_t grid_count = (net_count - 1) * 4 + 1;
        std::vector<ComplexPoint> grid(grid_count);
        std::vector<double> logw(grid_count);
        std::vector<std::size_t> net;
        for (std::size_t k = 0; k < grid_count; ++k) {
            const double x = -2.0 + 4.0 * static_cast<double>(k) / (grid_count - 1);
            grid[k] = ComplexPoint(x, 0.0);
            logw[k] = -static_cast<double>(d) * sc_potential(ComplexPoint(x, 0.0));
            if (k % 4 == 0) net.push_back(k);
        }
        const double ratio = net_sup_ratio(q, grid, logw, net);
        CHECK(ratio >= 1.0 - 1e-12);
        CHECK(ratio <= 2.0);
    }
}
