#include "randsurf/cycle_stats.hpp"
#include "randsurf_verify/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace randsurf;

TEST(Stirling, SmallRows)
{
    EXPECT_EQ(stirling_table(3).exact(), (std::vector<BigInt>{0, 2, 3, 1}));
    EXPECT_EQ(stirling_table(4).exact()[2], 11);
    EXPECT_EQ(stirling_table(1).exact(), (std::vector<BigInt>{0, 1}));
}

TEST(Stirling, MatchesEnumeration)
{
    for (int n = 1; n <= 8; ++n) {
        const auto brute = oracle::stirling_by_enumeration(n);
        const auto table = stirling_table(n);
        const auto& row = table.exact();
        for (int l = 0; l <= n; ++l) EXPECT_EQ(row[l], BigInt(brute[l])) << n << "," << l;
    }
}

TEST(Stirling, RowSumsAreFactorials)
{
    for (std::uint32_t n : {1u, 5u, 17u, 64u, 200u}) {
        BigInt sum = 0;
        const auto table = stirling_table(n);
        for (const auto& v : table.exact()) sum += v;
        EXPECT_EQ(sum, factorial(n)) << n;
    }
}

TEST(Stirling, CapAndBackends)
{
    EXPECT_THROW(stirling_table(501), CapExceeded);
    EXPECT_NO_THROW(stirling_table(2000, Backend::log_float));
    EXPECT_THROW(stirling_table(10, Backend::log_float).exact(), InvalidInput);
    EXPECT_THROW(stirling_table(0), InvalidInput);
}

TEST(Stirling, FloatAgreesWithExact)
{
    for (std::uint32_t n = 1; n <= 200; n += (n < 20 ? 1 : 13)) {
        const auto exact = stirling_table(n, Backend::exact);
        const auto flt = stirling_table(n, Backend::log_float);
        for (std::uint32_t l = 1; l <= n; ++l) {
            const double a = exact.log_value(l), b = flt.log_value(l);
            EXPECT_LE(std::abs(std::expm1(b - a)), 1e-10) << n << "," << l;
        }
        EXPECT_TRUE(std::isinf(flt.log_value(0)));
    }
}

TEST(CycleLaw, Examples)
{
    const auto all3 = cycle_law(3, CycleParity::all);
    EXPECT_EQ(all3.pmf, (std::vector<Rational>{0, Rational(1, 3), Rational(1, 2), Rational(1, 6)}));
    const auto even4 = cycle_law(4, CycleParity::even);
    EXPECT_EQ(even4.pmf, (std::vector<Rational>{0, 0, Rational(11, 12), 0, Rational(1, 12)}));
    const auto odd4 = cycle_law(4, CycleParity::odd);
    EXPECT_EQ(odd4.pmf, (std::vector<Rational>{0, Rational(1, 2), 0, Rational(1, 2), 0}));
    EXPECT_THROW(cycle_law(1, CycleParity::odd), InvalidInput);
    EXPECT_EQ(cycle_law(1, CycleParity::even).pmf[1], 1);
}

TEST(CycleLaw, ParityLawsInterlaceAndMix)
{
    for (std::uint32_t n = 2; n <= 12; ++n) {
        const auto all = cycle_law(n, CycleParity::all);
        const auto even = cycle_law(n, CycleParity::even);
        const auto odd = cycle_law(n, CycleParity::odd);
        Rational te = 0, to = 0;
        for (std::uint32_t l = 0; l <= n; ++l) {
            const bool even_l = (n - l) % 2 == 0;
            EXPECT_EQ(even_l ? odd.pmf[l] : even.pmf[l], 0);
            EXPECT_EQ((even.pmf[l] + odd.pmf[l]) / 2, all.pmf[l]);
            te += even.pmf[l];
            to += odd.pmf[l];
        }
        EXPECT_EQ(te, 1);
        EXPECT_EQ(to, 1);
    }
}

TEST(CycleLaw, PoissonBinomialMatchesStirling)
{
    for (std::uint32_t n = 1; n <= 40; ++n) {
        const auto pb = poisson_binomial_pmf(n);
        const auto ex = cycle_law(n, CycleParity::all);
        for (std::uint32_t l = 0; l <= n; ++l) EXPECT_NEAR(pb[l], to_double(ex.pmf[l]), 1e-12) << n << "," << l;
    }
    const auto big = poisson_binomial_pmf(10000);
    double total = 0;
    for (double p : big) total += p;
    EXPECT_NEAR(total, 1.0, 1e-9);
    EXPECT_EQ(big[0], 0.0);
    EXPECT_THROW(poisson_binomial_pmf(10001), CapExceeded);
}

TEST(CycleLaw, FloatParityRestriction)
{
    const auto f = cycle_law_float(9, CycleParity::odd);
    const auto e = cycle_law(9, CycleParity::odd);
    for (std::uint32_t l = 0; l <= 9; ++l) EXPECT_NEAR(f[l], to_double(e.pmf[l]), 1e-12);
}

TEST(Moments, Examples)
{
    auto [m1, v1] = mean_var_CN(1);
    EXPECT_EQ(m1, 1.0);
    EXPECT_EQ(v1, 0.0);
    auto [m3, v3] = mean_var_CN(3);
    EXPECT_NEAR(m3, 11.0 / 6.0, 1e-15);
    EXPECT_NEAR(v3, 17.0 / 36.0, 1e-15);
    EXPECT_THROW(mean_var_CN(0), InvalidInput);
}

TEST(Moments, MatchExactHarmonicAndMeanOfLaw)
{
    for (std::uint32_t n : {2u, 7u, 30u}) {
        const auto law = cycle_law(n, CycleParity::all);
        Rational m = 0, m2 = 0;
        for (std::uint32_t l = 0; l <= n; ++l) {
            m += law.pmf[l] * l;
            m2 += law.pmf[l] * l * l;
        }
        auto [mean, var] = mean_var_CN(n);
        EXPECT_EQ(m, oracle::harmonic_exact(n));
        EXPECT_NEAR(mean, to_double(m), 1e-14);
        EXPECT_NEAR(var, to_double(m2 - m * m), 1e-13);
    }
    for (std::uint32_t n : {100u, 1000u, 5000u}) {
        const double mean = mean_var_CN(n).first;
        EXPECT_NEAR(mean, to_double(oracle::harmonic_exact(n)), 1e-13);
        EXPECT_GT(mean - std::log(n), 0.5);
        EXPECT_LT(mean - std::log(n), 0.6);
    }
}

TEST(Lclt, GaussianShape)
{
    const auto [mean, var] = mean_var_CN(500);
    EXPECT_NEAR(lclt_gaussian(500, mean), 1.0 / std::sqrt(2 * std::numbers::pi * var), 1e-15);
    for (double d : {0.5, 1.0, 2.5, 4.0}) EXPECT_NEAR(lclt_gaussian(500, mean + d), lclt_gaussian(500, mean - d), 1e-15);
    EXPECT_LT(lclt_gaussian(500, mean + 3), lclt_gaussian(500, mean + 1));
    EXPECT_THROW(lclt_gaussian(1, 1.0), InvalidInput);
}

TEST(Lclt, RatioNearOneInTheBulk)
{
    const std::uint32_t n = 2000;
    const auto t = stirling_table(n, Backend::log_float);
    const double log_nf = std::lgamma(n + 1.0);
    const double p = std::exp(t.log_value(8) - log_nf);
    const double ratio = p / lclt_gaussian(n, 8);
    EXPECT_LE(std::abs(ratio - 1.0), 2.0 / std::sqrt(std::log(static_cast<double>(n))));
}

TEST(Sampler, SmallCases)
{
    RngStream rng(1);
    for (int t = 0; t < 100; ++t) EXPECT_EQ(sample_CN(1, rng), 1u);
    for (int t = 0; t < 100; ++t) {
        const auto c = sample_CN(2, rng);
        EXPECT_TRUE(c == 1 || c == 2);
    }
    EXPECT_THROW(sample_CN(0, rng), InvalidInput);
}

TEST(Sampler, MeanAtOneHundred)
{
    RngStream rng(2718);
    const std::uint64_t trials = 1000000;
    long double sum = 0;
    for (std::uint64_t t = 0; t < trials; ++t) sum += sample_CN(100, rng);
    const auto [mean, var] = mean_var_CN(100);
    EXPECT_NEAR(static_cast<double>(sum / trials), mean, 3 * std::sqrt(var / trials));
}

TEST(Sampler, ChiSquareAtEight)
{
    RngStream rng(88);
    const std::uint32_t n = 8;
    const auto law = cycle_law(n, CycleParity::all);
    std::vector<std::uint64_t> observed(n, 0);
    std::vector<double> expected(n);
    for (std::uint32_t l = 1; l <= n; ++l) expected[l - 1] = to_double(law.pmf[l]);
    const std::uint64_t trials = 400000;
    for (std::uint64_t t = 0; t < trials; ++t) ++observed[sample_CN(n, rng) - 1];
    // pool the two rarest cells so every expected count is large
    observed[n - 2] += observed[n - 1];
    expected[n - 2] += expected[n - 1];
    observed.pop_back();
    expected.pop_back();
    EXPECT_LT(oracle::chi_square_statistic(observed, expected), oracle::chi_square_critical(observed.size() - 1.0, 0.001));
}

TEST(Parity, ParseAndAdmissible)
{
    EXPECT_EQ(parse_cycle_parity("even"), CycleParity::even);
    EXPECT_EQ(parse_cycle_parity("odd"), CycleParity::odd);
    EXPECT_EQ(parse_cycle_parity("all"), CycleParity::all);
    EXPECT_THROW(parse_cycle_parity("both"), InvalidInput);
    EXPECT_TRUE(admissible(6, 2, CycleParity::even));
    EXPECT_FALSE(admissible(6, 3, CycleParity::even));
    EXPECT_TRUE(admissible(6, 3, CycleParity::odd));
}
