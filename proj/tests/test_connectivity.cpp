#include "randsurf/connectivity.hpp"
#include "randsurf/exact_enum.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace randsurf;

namespace {

GluingSpec S(std::string_view s) { return GluingSpec::parse(s); }

// Number of face subsets whose sides total n_prime, by listing all subsets.
BigInt subsets_with_sides(const GluingSpec& spec, std::uint64_t n_prime)
{
    std::vector<std::uint32_t> faces;
    for (auto [j, c] : spec.counts())
        for (std::uint64_t k = 0; k < c; ++k) faces.push_back(j);
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ull << faces.size()); ++mask) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (mask >> i & 1) s += faces[i];
        count += s == n_prime;
    }
    return count;
}

std::vector<GluingSpec> small_specs(std::uint32_t max_n)
{
    std::vector<GluingSpec> out;
    for (std::uint32_t n = 4; n <= max_n; n += 2)
        for (auto& s : all_gluing_specs(n)) out.push_back(std::move(s));
    return out;
}

} // namespace

TEST(NoMatch, Examples)
{
    EXPECT_EQ(no_match_prob(4, 4), Rational(3, 35));
    for (std::uint64_t n = 4; n <= 40; n += 2) EXPECT_EQ(no_match_prob(2, n - 2), Rational(1, n - 1));
    EXPECT_EQ(no_match_prob(6, 6), no_match_prob(6, 6));
    EXPECT_EQ(no_match_prob(2, 8), no_match_prob(8, 2));
    EXPECT_THROW(no_match_prob(8, 0), InvalidInput);
    EXPECT_THROW(no_match_prob(3, 5), InvalidInput);
}

TEST(NoMatch, CountsMatchingsThatStayOnEachSide)
{
    for (std::uint64_t n = 4; n <= 12; n += 2) {
        const auto all = enumerate_matchings(n);
        for (std::uint64_t n1 = 2; n1 < n; n1 += 2) {
            std::uint64_t inside = 0;
            for (const auto& m : all) {
                bool ok = true;
                for (Label i = 1; i <= n1; ++i) ok &= m(i) <= n1;
                inside += ok;
            }
            EXPECT_EQ(no_match_prob(n1, n - n1), Rational(BigInt(inside), BigInt(all.size()))) << n << "," << n1;
        }
    }
}

TEST(SplitCount, Examples)
{
    EXPECT_EQ(split_count(S("4x2"), 4), 2);
    EXPECT_EQ(split_count(S("3x2"), 3), 2);
    EXPECT_EQ(split_count(S("4x2"), 0), 1);
    EXPECT_EQ(split_count(S("4x2"), 8), 1);
    EXPECT_EQ(split_count(S("3x2,4x1"), 3), 2);
    EXPECT_EQ(split_count(S("3x2,4x1"), 5), 0);
    EXPECT_EQ(split_count(S("3x4"), 6), 6);
}

TEST(SplitCount, AgreesWithSubsetEnumeration)
{
    for (const auto& spec : small_specs(24)) {
        if (spec.faces() > 12) continue;
        const auto poly = split_polynomial(spec);
        ASSERT_EQ(poly.size(), spec.sides() + 1);
        BigInt total = 0;
        for (std::uint64_t k = 0; k <= spec.sides(); ++k) {
            EXPECT_EQ(poly[k], subsets_with_sides(spec, k)) << spec.to_string() << " N'=" << k;
            EXPECT_EQ(poly[k], poly[spec.sides() - k]);
            total += poly[k];
        }
        EXPECT_EQ(total, BigInt(1) << spec.faces());
    }
}

TEST(UnionBound, Examples)
{
    const auto two = union_bound(S("4x2"));
    EXPECT_EQ(two.total, Rational(6, 35));
    ASSERT_EQ(two.terms.size(), 1u);
    EXPECT_EQ(two.terms[0].n_prime, 4u);
    EXPECT_EQ(two.terms[0].P, Rational(3, 35));
    EXPECT_EQ(two.terms[0].Q, 2);

    EXPECT_TRUE(union_bound(S("3x2")).terms.empty());
    EXPECT_EQ(union_bound(S("3x2")).total, 0);
    EXPECT_EQ(union_bound(S("4x1")).total, 0);
}

TEST(UnionBound, MinimalGroupSize)
{
    EXPECT_EQ(min_group_sides(S("3x2")), 6u);
    EXPECT_EQ(min_group_sides(S("4x2")), 4u);
    EXPECT_EQ(min_group_sides(S("5x2,6x1")), 6u);
    EXPECT_EQ(min_group_sides(S("3x2,4x1")), 4u);
    EXPECT_EQ(min_group_sides(S("4x1,3x4")), 4u);
    EXPECT_EQ(min_group_sides(S("3x2,7x2")), 6u);
    for (const auto& spec : small_specs(30))
        for (const auto& t : union_bound(spec).terms) {
            EXPECT_GE(t.n_prime, min_group_sides(spec));
            EXPECT_GE(t.n_double_prime, min_group_sides(spec));
            EXPECT_EQ(t.n_prime % 2, 0u);
            EXPECT_EQ(t.product, t.P * t.Q);
        }
}

TEST(UnionBound, TrianglesShrinkLikeOneOverN)
{
    // the leading term is two triangles cut off: 2 * C(n,2) * P(6, N-6)
    for (std::uint64_t n : {20u, 40u, 80u}) {
        const auto spec = GluingSpec(std::map<std::uint32_t, std::uint64_t>{{3, n}});
        const double total = to_double(union_bound(spec).total);
        EXPECT_LT(total, 1.0);
        EXPECT_LT(total * 3 * n, 10.0) << n;
    }
}

TEST(YOpt, BalancedSplitIsOne)
{
    for (const auto& spec : small_specs(20)) EXPECT_EQ(y_opt(spec, spec.sides() / 2.0), 1.0);
}

TEST(YOpt, FourSquaresThree)
{
    // (1 + y^4)^3 y^-4 has stationary point y^4 = 1/2
    EXPECT_NEAR(y_opt(S("4x3"), 4), std::pow(2.0, -0.25), 1e-10);
}

TEST(YOpt, IncreasingInNPrime)
{
    const auto spec = S("3x6,5x2");
    double prev = 0;
    for (double np = 1; np <= spec.sides() / 2.0; np += 1) {
        const double y = y_opt(spec, np);
        EXPECT_GT(y, prev);
        EXPECT_NEAR(split_balance(spec, y), np, 1e-8);
        prev = y;
    }
    EXPECT_THROW(y_opt(spec, spec.sides() / 2.0 + 1), InvalidInput);
    EXPECT_THROW(y_opt(spec, 0), InvalidInput);
}

TEST(HValue, MinimisedAtYOpt)
{
    const auto spec = S("3x4,4x2");
    for (double np : {3.0, 6.0, 9.0}) {
        const double y = y_opt(spec, np);
        const double h = h_value(spec, y, np);
        for (double d : {-0.05, -0.01, 0.01, 0.05})
            if (y + d > 0 && y + d <= 1) EXPECT_LE(h, h_value(spec, y + d, np) + 1e-12);
    }
    EXPECT_NEAR(h_value(spec, 1.0, 7), 6 * std::log(2.0), 1e-14);
    EXPECT_THROW(h_value(spec, 0.0, 1), InvalidInput);
}

TEST(HValue, ExponentialDominatesSplitCount)
{
    for (const auto& spec : small_specs(24)) {
        const auto poly = split_polynomial(spec);
        for (std::uint64_t np = 1; 2 * np <= spec.sides(); ++np) {
            const double q = to_double(poly[np]);
            if (q == 0) continue;
            const double bound = std::exp(h_value(spec, y_opt(spec, static_cast<double>(np)), static_cast<double>(np)));
            EXPECT_GE(bound * (1 + 1e-9), q) << spec.to_string() << " N'=" << np;
            for (int k = 1; k <= 100; ++k) {
                const double y = k / 100.0;
                EXPECT_GE(std::exp(h_value(spec, y, static_cast<double>(np))) * (1 + 1e-9), q);
            }
        }
    }
}
