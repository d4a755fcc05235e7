#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "support.hpp"
#include "wignerlab/ensembles.hpp"

using namespace wignerlab;

TEST_CASE("rng streams are reproducible and decorrelated") {
    RngStream a(42, 7), b(42, 7), c(42, 8);
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t x = a.next_u64();
        CHECK(x == b.next_u64());
    }
    int same = 0;
    RngStream a2(42, 7);
    for (int i = 0; i < 100; ++i) {
        if (a2.next_u64() == c.next_u64()) ++same;
    }
    CHECK(same == 0);
    RngStream g(1, 1);
    for (int i = 0; i < 1000; ++i) {
        const double u = g.next_unit();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("analytic moments") {
    const Moments r = moments_of(EntryDistribution::rademacher());
    CHECK(r.mean == 0.0);
    CHECK(r.variance == 1.0);
    CHECK(r.second_moment_complex == 1.0);
    CHECK(r.abs_fourth_moment == 1.0);

    const Moments g = moments_of(EntryDistribution::real_gaussian(1.0));
    CHECK(g.abs_fourth_moment == doctest::Approx(3.0));

    const Moments cg = moments_of(EntryDistribution::complex_gaussian_unit());
    CHECK(cg.variance == doctest::Approx(1.0));
    CHECK(cg.second_moment_complex == doctest::Approx(0.0));
    CHECK(cg.abs_fourth_moment == doctest::Approx(2.0));

    for (double p : {0.1, 0.3, 0.5}) {
        const Moments b = moments_of(EntryDistribution::centered_bernoulli(p));
        const double q = 1.0 - p;
        CHECK(b.variance == doctest::Approx(1.0));
        CHECK(b.abs_fourth_moment ==
              doctest::Approx((p * p * p + q * q * q) / (p * q)).epsilon(1e-12));
    }

    const Moments cd = moments_of(
        EntryDistribution::custom_discrete({-2.0, 0.0, 2.0}, {0.125, 0.75, 0.125}));
    CHECK(cd.variance == doctest::Approx(1.0));
    CHECK(cd.abs_fourth_moment == doctest::Approx(4.0));
    CHECK_THROWS_AS(EntryDistribution::custom_discrete({1.0}, {1.0}), std::invalid_argument);
       CHECK_THROWS_AS(EntryDistribution::custom_discrete({-1.0, 1.0}, {0.7, 0.7}),
                    std::invalid_argument);
}

TEST_CASE("gaussian fourth moment by monte carlo") {
    RngStream rng(1234, 0);
    const EntryDistribution g = EntryDistribution::real_gaussian(1.0);
    double m4 = 0.0;
    const int samples = 10'000'000;
    for (int i = 0; i < samples; ++i) {
        const double x = g.sample_real(rng);
        m4 += x * x * x * x;
    }
    m4 /= samples;
    CHECK(m4 == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("empirical moments match analytic ones within 3 standard errors") {
    struct Case {
        EntryDistribution dist;
        const char* name;
    };
    const Case cases[] = {
        {EntryDistribution::rademacher(), "rademacher"},
        {EntryDistribution::real_gaussian(1.0), "real-gaussian"},
        {EntryDistribution::centered_bernoulli(0.3), "centered-bernoulli"},
        {EntryDistribution::custom_discrete({-2.0, 0.0, 2.0}, {0.125, 0.75, 0.125}),
         "custom-discrete"},
    };
    const int samples = 1'000'000;
    for (const Case& c : cases) {
        CAPTURE(c.name);
        RngStream rng(777, 3);
        const Moments m = moments_of(c.dist);
        double s1 = 0.0, s2 = 0.0, s4 = 0.0, s8 = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double x = c.dist.sample_real(rng);
            s1 += x;
            s2 += x * x;
            s4 += x * x * x * x;
            s8 += x * x * x * x * x * x * x * x;
        }
        s1 /= samples;
        s2 /= samples;
        s4 /= samples;
        s8 /= samples;
        const double se_mean = std::sqrt(m.variance / samples);
        const double se_var = std::sqrt(std::max(m.abs_fourth_moment - m.variance * m.variance,
                                                 1e-30) /
                                        samples);
        const double se_m4 = std::sqrt(std::max(s8 - s4 * s4, 1e-30) / samples);
        CHECK(std::fabs(s1 - m.mean) <= 3.0 * se_mean + 1e-12);
        CHECK(std::fabs(s2 - m.variance) <= 3.0 * se_var + 1e-12);
        CHECK(std::fabs(s4 - m.abs_fourth_moment) <= 3.0 * se_m4 + 1e-12);
    }
    // complex gaussian: unit absolute variance, zero pseudo-variance
    RngStream rng(778, 4);
    const EntryDistribution cg = EntryDistribution::complex_gaussian_unit();
    std::complex<double> e2(0.0, 0.0);
    double a2 = 0.0, a4 = 0.0;
    for (int i = 0; i < samples; ++i) {
        const std::complex<double> x = cg.sample(rng);
        e2 += x * x;
        a2 += std::norm(x);
        a4 += std::norm(x) * std::norm(x);
    }
    CHECK(std::abs(e2) / samples <= 3e-3);
    CHECK(a2 / samples == doctest::Approx(1.0).epsilon(0.01));
    CHECK(a4 / samples == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("wigner sampler") {
    const WignerSpec spec1(1, EntryDistribution::rademacher(),
                           EntryDistribution::real_gaussian(0.5));
    const HermitianMatrix m1 = sample_wigner(spec1, derive_seed(5, 0));
    CHECK(m1.size() == 1);
    CHECK(m1(0, 0).imag() == 0.0);

    const WignerSpec spec(40, EntryDistribution::complex_gaussian_unit());
    const HermitianMatrix a = sample_wigner(spec, derive_seed(5, 1));
    const HermitianMatrix b = sample_wigner(spec, derive_seed(5, 1));
    CHECK(a.entries() == b.entries()); // determinism, bit for bit
    const HermitianMatrix c = sample_wigner(spec, derive_seed(5, 2));
    CHECK(a.entries() != c.entries());

    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a(i, i).imag() == 0.0);
        CHECK(a(i, i).real() == 0.0); // default diagonal is the constant 0
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            CHECK(a(j, i) == std::conj(a(i, j)));
        }
    }

    // entry statistics at n = 2000
    const WignerSpec big(2000, EntryDistribution::rademacher());
    const HermitianMatrix M = sample_wigner(big, derive_seed(6, 0));
    double mean = 0.0, var = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < M.size(); ++i) {
        for (std::size_t j = i + 1; j < M.size(); ++j) {
            mean += M(i, j).real();
            var += std::norm(M(i, j));
            ++count;
        }
    }
    mean /= count;
    var /= count;
    CHECK(std::fabs(mean) < 3.0 / std::sqrt(static_cast<double>(count)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("scale to W") {
    const WignerSpec one(1, EntryDistribution::rademacher(),
                         EntryDistribution::real_gaussian(16.0));
    HermitianMatrix m(1);
    m.set(0, 0, 4.0);
    CHECK(scale_to_w(m)(0, 0).real() == 4.0);

    HermitianMatrix ones(4);
    for (std::size_t i = 0; i < 4; ++i) {
        ones.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < 4; ++j) ones.set(i, j, 1.0);
    }
    const HermitianMatrix w = scale_to_w(ones);
    CHECK(w(1, 2).real() == doctest::Approx(0.5));

    // spectrum scales by n^{-1/2}
    RngStream rng(9, 9);
    const HermitianMatrix H = testsupport::random_hermitian(9, rng);
    const Spectrum sm = eigenvalues(H);
    const Spectrum sw = eigenvalues(scale_to_w(H));
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(sw.eigenvalues[i] == testsupport::approx_abs(sm.eigenvalues[i] / 3.0, 1e-12));
    }
}

TEST_CASE("erdos-renyi sampler") {
    CHECK_THROWS_AS((void)sample_er_adjacency(10, 0.6, derive_seed(1, 0)), std::invalid_argument);
    CHECK_THROWS_AS((void)sample_er_adjacency(10, 0.0, derive_seed(1, 0)), std::invalid_argument);

    const HermitianMatrix tiny = sample_er_adjacency(10, 1e-9, derive_seed(1, 1));
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(tiny(i, i).real() == 0.0);
        for (std::size_t j = 0; j < 10; ++j) {
            const double v = tiny(i, j).real();
            CHECK((v == 0.0 || v == 1.0));
        }
    }

    const HermitianMatrix a3 = sample_er_adjacency(3, 0.5, derive_seed(1, 2));
    const HermitianMatrix b3 = sample_er_adjacency(3, 0.5, derive_seed(1, 2));
    CHECK(a3.entries() == b3.entries());

    const std::size_t n = 500;
    const double p = 0.3;
    const HermitianMatrix A = sample_er_adjacency(n, p, derive_seed(2, 0));
    double edges = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) edges += A(i, j).real();
    }
    const double expected = p * n * (n - 1) / 2.0;
    const double sigma = std::sqrt(expected * (1.0 - p));
    CHECK(std::fabs(edges - expected) <= 4.0 * sigma);
}

TEST_CASE("er normalization and centering") {
    HermitianMatrix zero(4);
    const HermitianMatrix wz = er_normalize(zero, 0.5);
    CHECK(wz.max_abs_entry() == 0.0);
    // n=4, p=1/2: 1/(sqrt(n) sigma) = 1/(2 * 1/2) = 1
    HermitianMatrix ones(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) ones.set(i, j, 1.0);
    }
    CHECK(er_normalize(ones, 0.5)(0, 1).real() == doctest::Approx(1.0));
    CHECK(er_normalize(ones, 0.3)(0, 1).real() ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(0.21))));

    // zero adjacency: off-diagonal -p/(sigma sqrt n), diagonal exactly 0
    const double p = 0.3;
    const HermitianMatrix wc = er_center(er_normalize(zero, p), p);
    const double shift = p / (std::sqrt(p * (1 - p)) * 2.0);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(wc(i, i).real() == 0.0);
        for (std::size_t j = i + 1; j < 4; ++j) {
            CHECK(wc(i, j).real() == doctest::Approx(-shift).epsilon(1e-14));
        }
    }

    // diagonal is exactly zero for sampled inputs too, and sqrt(n) W' has
    // mean-zero unit-variance entries
    const std::size_t n = 500;
    const HermitianMatrix A = sample_er_adjacency(n, p, derive_seed(3, 1));
    const HermitianMatrix W1 = er_center(er_normalize(A, p), p);
    double mean = 0.0, var = 0.0;
    std::size_t count = 0;
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(W1(i, i).real() == 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double e = root_n * W1(i, j).real();
            mean += e;
            var += e * e;
            ++count;
        }
    }
    mean /= count;
    var /= count;
    CHECK(std::fabs(mean) <= 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("symmetric rademacher enumeration") {
    CHECK(enumerate_symmetric_rademacher(2, true).size() == 2);
    CHECK(enumerate_symmetric_rademacher(3, true).size() == 8);
    CHECK(enumerate_symmetric_rademacher(2, false).size() == 8);

    const auto all4 = enumerate_symmetric_rademacher(4, true);
    CHECK(all4.size() == 64);
    std::set<std::string> distinct;
    for (const auto& M : all4) {
        distinct.insert(M.to_json());
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(M(i, i).real() == 0.0);
            for (std::size_t j = i + 1; j < 4; ++j) {
                CHECK(std::fabs(M(i, j).real()) == 1.0);
            }
        }
    }
    CHECK(distinct.size() == 64);
    CHECK(enumerate_symmetric_rademacher(4, false).size() == 1024);
    CHECK_THROWS_AS((void)enumerate_symmetric_rademacher(5, true), std::invalid_argument);

    // lexicographic order: first matrix all -1, last all +1
    CHECK(all4.front()(0, 1).real() == -1.0);
    CHECK(all4.back()(0, 1).real() == 1.0);
}

TEST_CASE("wigner spec validation") {
    CHECK_THROWS_AS(WignerSpec(3, EntryDistribution::real_gaussian(2.0)), std::invalid_argument);
    CHECK_THROWS_AS(WignerSpec(3, EntryDistribution::rademacher(),
                               EntryDistribution::complex_gaussian_unit()),
                    std::invalid_argument);
    const WignerSpec s(3, EntryDistribution::rademacher(), EntryDistribution::real_gaussian(0.25));
    CHECK(s.alpha() == doctest::Approx(0.25));
    CHECK(s.beta() == doctest::Approx(1.0));
}
