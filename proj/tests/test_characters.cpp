#include "randsurf/characters.hpp"
#include "randsurf/exact_enum.hpp"
#include "randsurf_verify/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace randsurf;

namespace {

BigInt chi(std::string_view lambda, std::string_view mu) { return character(CycleType::parse(lambda).parts(), CycleType::parse(mu)); }

} // namespace

TEST(Partitions, Counts)
{
    EXPECT_EQ(partitions(1).size(), 1u);
    EXPECT_EQ(partitions(4).size(), 5u);
    EXPECT_EQ(partitions(5).size(), 7u);
    EXPECT_EQ(partitions(10).size(), 42u);
    EXPECT_EQ(partitions(30).size(), 5604u);
    EXPECT_THROW(partitions(31), CapExceeded);
    EXPECT_EQ(partitions(31, 31).size(), 6842u);
}

TEST(Partitions, ReverseLexOrder)
{
    std::vector<std::string> names;
    for (const auto& p : partitions(4)) names.push_back(p.to_string());
    EXPECT_EQ(names, (std::vector<std::string>{"4", "3-1", "2-2", "2-1-1", "1-1-1-1"}));
}

TEST(Partitions, HooksAndDuals)
{
    const auto p = PartitionData::parse("3-2");
    EXPECT_EQ(p.hooks, (std::vector<std::vector<std::uint32_t>>{{4, 3, 1}, {2, 1}}));
    EXPECT_EQ(p.dual().parts, (Parts{2, 2, 1}));
    EXPECT_FALSE(p.is_self_dual);
    EXPECT_TRUE(PartitionData::parse("2-2").is_self_dual);
    EXPECT_TRUE(PartitionData::parse("3-1-1").is_self_dual);
}

TEST(Dimension, Examples)
{
    EXPECT_EQ(dimension(PartitionData::parse("4")), 1);
    EXPECT_EQ(dimension(PartitionData::parse("1-1-1-1")), 1);
    EXPECT_EQ(dimension(PartitionData::parse("2-1")), 2);
    EXPECT_EQ(dimension(PartitionData::parse("3-2")), 5);
    EXPECT_EQ(dimension(PartitionData::parse("3-3")), 5);
}

TEST(Dimension, CountsStandardTableaux)
{
    for (std::uint32_t n = 1; n <= 10; ++n)
        for (const auto& p : partitions(n)) EXPECT_EQ(p.dim, BigInt(oracle::count_standard_tableaux(p.parts))) << p.to_string();
}

TEST(Dimension, PlancherelAtThirtyNeedsBigIntegers)
{
    BigInt sum = 0;
    for (const auto& p : partitions(30)) sum += p.dim * p.dim;
    EXPECT_EQ(sum, factorial(30));
}

TEST(Characters, SpecialValues)
{
    EXPECT_EQ(chi("2-2", "2-2"), 2);
    EXPECT_EQ(chi("2-1", "3"), -1);
    EXPECT_EQ(chi("3-1", "2-1-1"), 1);
    for (std::uint32_t n = 1; n <= 9; ++n)
        for (const auto& p : partitions(n)) {
            const CycleType mu = CycleType(p.parts);
            // trivial and sign representations
            EXPECT_EQ(character(Parts{n}, mu), 1);
            EXPECT_EQ(character(Parts(n, 1), mu), mu.sign());
            // value at the identity is the dimension
            EXPECT_EQ(character(p.parts, CycleType::identity(n)), p.dim);
        }
}

TEST(Characters, AgreeWithBorderStripOracle)
{
    for (std::uint32_t n = 1; n <= 8; ++n)
        for (const auto& lambda : partitions(n))
            for (const auto& m : partitions(n)) {
                // the oracle strips parts from the back, so smallest first here
                const BigInt expected = oracle::character_by_strips(lambda.parts, m.parts);
                EXPECT_EQ(character(lambda.parts, CycleType(m.parts)), expected) << lambda.to_string() << " at " << m.to_string();
            }
}

TEST(Characters, BoundedByRimHookCount)
{
    for (std::uint32_t n = 2; n <= 8; ++n)
        for (const auto& lambda : partitions(n))
            for (const auto& m : partitions(n)) {
                const BigInt c = character(lambda.parts, CycleType(m.parts));
                EXPECT_LE(c < 0 ? BigInt(-c) : c, BigInt(oracle::rim_hook_count(lambda.parts, m.parts)));
            }
}

TEST(Characters, DualityTwistsBySign)
{
    for (std::uint32_t n = 1; n <= 9; ++n)
        for (const auto& lambda : partitions(n))
            for (const auto& m : partitions(n)) {
                const CycleType mu(m.parts);
                EXPECT_EQ(character(lambda.dual().parts, mu), mu.sign() * character(lambda.parts, mu));
            }
}

TEST(Characters, SelfDualVanishOnOddClasses)
{
    for (std::uint32_t n = 2; n <= 10; ++n)
        for (const auto& lambda : partitions(n)) {
            if (!lambda.is_self_dual) continue;
            for (const auto& m : partitions(n))
                if (CycleType(m.parts).parity() == Parity::odd) EXPECT_EQ(character(lambda.parts, CycleType(m.parts)), 0);
        }
}

TEST(CharacterTable, Orthogonality)
{
    for (std::uint32_t n = 1; n <= 7; ++n) {
        const auto& t = character_table(n);
        const BigInt nf = factorial(n);
        const std::size_t k = t.rows.size();
        ASSERT_EQ(t.cols.size(), k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                BigInt row = 0, col = 0;
                for (std::size_t c = 0; c < k; ++c) {
                    row += class_size(t.cols[c]) * t.values[a][c] * t.values[b][c];
                    col += t.values[c][a] * t.values[c][b];
                }
                EXPECT_EQ(row, a == b ? nf : BigInt(0));
                EXPECT_EQ(col * class_size(t.cols[a]), a == b ? nf : BigInt(0));
            }
    }
}

TEST(CharacterTable, ThreadedMatchesSerial)
{
    const auto& t = character_table(12, 4);
    CharacterCache fresh;
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        for (std::size_t c = 0; c < t.cols.size(); ++c) EXPECT_EQ(t.values[r][c], character(t.rows[r].parts, t.cols[c], fresh));
}

TEST(CharacterCache, BoundedAndClearable)
{
    CharacterCache small(8);
    for (const auto& p : partitions(9)) character(p.parts, CycleType::parse("3-3-3"), small);
    EXPECT_LE(small.size(), 8u);
    small.clear();
    EXPECT_EQ(small.size(), 0u);
}

TEST(DsBound, OneSquare)
{
    const auto b = ds_bound(GluingSpec::parse("4x1"));
    EXPECT_EQ(b.squared, Rational(1, 18));
    EXPECT_NEAR(b.value, 0.23570226, 1e-8);
}

TEST(DsBound, NonNegativeAndCapped)
{
    for (std::uint32_t n = 4; n <= 16; n += 2)
        for (const auto& spec : all_gluing_specs(n)) EXPECT_GE(ds_bound(spec).squared, 0);
    EXPECT_THROW(ds_bound(GluingSpec::parse("4x8")), CapExceeded);
}

TEST(Frobenius, OneSquare)
{
    const auto spec = GluingSpec::parse("4x1");
    EXPECT_EQ(frobenius_class_prob(spec, CycleType::parse("2-1-1")), Rational(2, 3));
    EXPECT_EQ(frobenius_class_prob(spec, CycleType::parse("4")), Rational(1, 3));
    EXPECT_EQ(frobenius_class_prob(spec, CycleType::parse("3-1")), 0);
    EXPECT_EQ(frobenius_class_prob(spec, CycleType::parse("2-2")), 0);
    EXPECT_THROW(frobenius_class_prob(spec, CycleType::parse("3")), InvalidInput);
}

TEST(Frobenius, SumsToOneAndStaysInCoset)
{
    for (std::uint32_t n = 4; n <= 18; n += 2)
        for (const auto& spec : all_gluing_specs(n)) {
            const auto d = frobenius_class_distribution(spec);
            EXPECT_EQ(d.total(), 1) << spec.to_string();
            for (const auto& [t, p] : d.support()) EXPECT_GT(p, 0);
        }
}

TEST(Frobenius, MatchesEnumerationOnMixedSpecs)
{
    for (const char* text : {"3x2,4x1", "5x2", "3x2,6x1", "4x3", "3x4"}) {
        const auto spec = GluingSpec::parse(text);
        EXPECT_EQ(frobenius_class_distribution(spec).support(), exact_gamma_class_distribution(spec).support()) << text;
    }
}

TEST(CharacterRatio, Examples)
{
    EXPECT_EQ(explore_character_ratio(PartitionData::parse("4"), CycleType::parse("4")), 0.0);
    EXPECT_TRUE(std::isinf(explore_character_ratio(PartitionData::parse("2-2"), CycleType::parse("4"))));
    EXPECT_NEAR(explore_character_ratio(PartitionData::parse("2-2"), CycleType::parse("2-2")), 1.0, 1e-12);
    EXPECT_NEAR(explore_character_ratio(PartitionData::parse("3-1"), CycleType::parse("2-1-1")), 0.0, 1e-12);
    const double r = explore_character_ratio(PartitionData::parse("3-2-1"), CycleType::parse("3-3"));
    EXPECT_NEAR(r, std::log(2.0) / std::log(16.0), 1e-12);
}
