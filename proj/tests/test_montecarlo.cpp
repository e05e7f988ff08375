#include "randsurf/exact_enum.hpp"
#include "randsurf/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace randsurf;

namespace {

ExperimentSummary run(std::string_view spec, std::uint64_t trials, std::uint64_t seed, unsigned workers = 1, bool components = false)
{
    return run_experiment({GluingSpec::parse(spec), trials, seed, workers, components});
}

} // namespace

TEST(Experiment, TrianglePairAlwaysConnected)
{
    const auto s = run("3x2", 20000, 1);
    EXPECT_EQ(s.trials, 20000u);
    EXPECT_EQ(s.connected, s.trials);
    EXPECT_EQ(s.p_connected(), 1.0);
    EXPECT_EQ(s.component_counts.size(), 1u);
}

TEST(Experiment, OneSquareMeanVertices)
{
    const auto s = run("4x1", 100000, 42, 3);
    const double sd = std::sqrt(8.0 / 9.0);   // V is 3 or 1 with odds 2:1
    EXPECT_NEAR(s.mean_vertices(), 7.0 / 3.0, 3 * sd / std::sqrt(1e5));
    EXPECT_NEAR(s.var_vertices(), 8.0 / 9.0, 0.02);
    EXPECT_EQ(s.vertex_counts.size(), 2u);
}

TEST(Experiment, CosetAlwaysAgrees)
{
    for (const char* spec : {"3x2", "4x1", "4x2", "3x2,4x1", "5x2", "3x30,4x1"}) {
        const auto s = run(spec, 5000, 7, 2);
        EXPECT_EQ(s.coset_agreement, s.trials) << spec;
    }
}

TEST(Experiment, ReproducibleForFixedConfig)
{
    const auto a = run("3x4,4x3", 20000, 2024, 4, true);
    const auto b = run("3x4,4x3", 20000, 2024, 4, true);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    const auto c = run("3x4,4x3", 20000, 2025, 4, true);
    EXPECT_NE(a.vertex_counts, c.vertex_counts);
}

TEST(Experiment, SliceMergeEqualsWhole)
{
    const auto spec = GluingSpec::parse("4x2");
    auto a = run_slice(spec, 300, RngStream(5, 0), false);
    const auto b = run_slice(spec, 700, RngStream(5, 1), false);
    a.merge(b);
    EXPECT_EQ(a.trials, 1000u);
    std::uint64_t total = 0;
    for (auto [v, c] : a.vertex_counts) total += c;
    EXPECT_EQ(total, 1000u);
}

TEST(Experiment, DisconnectedComponentsRecorded)
{
    const auto s = run("4x2", 20000, 3, 1, true);
    const std::uint64_t disconnected = s.trials - s.connected;
    EXPECT_GT(disconnected, 0u);
    std::uint64_t pieces = 0;
    for (auto [g, c] : s.component_genus_counts) pieces += c;
    EXPECT_EQ(pieces, 2 * disconnected);
    // 3/35 disconnected
    EXPECT_NEAR(s.p_connected(), 32.0 / 35.0, 3 * s.stderr_connected() + 1e-3);
}

TEST(EmpiricalTv, Basics)
{
    const auto s = run("4x2", 5000, 9);
    EXPECT_EQ(empirical_tv(s, s), 0.0);
    const double d = empirical_tv(s, run("4x2", 5000, 10));
    EXPECT_GT(d, 0.0);
    EXPECT_LE(d, 1.0);
}

TEST(EmpiricalTv, ShrinksAtTheSamplingRate)
{
    const auto spec = GluingSpec::parse("4x2");
    const auto law = exact_vertex_distribution(spec);
    const std::uint64_t trials = 4000;
    int within = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto s = run_experiment({spec, trials, seed, 1, false});
        within += empirical_tv(s, law) <= 3 * std::sqrt(static_cast<double>(law.support().size()) / trials);
    }
    EXPECT_GE(within, 99);
}

TEST(GaussianFit, ParityAndMoments)
{
    const auto s = run("3x100", 20000, 77, 2);
    const auto r = gaussian_fit_check(s, 300);
    EXPECT_EQ(r.parity_violations, 0u);
    EXPECT_NEAR(r.ln_n, std::log(300.0), 1e-12);
    EXPECT_NEAR(r.mean, s.mean_vertices(), 1e-12);
    EXPECT_LT(std::abs(r.mean_minus_ln_n), 2.0);
    EXPECT_NEAR(r.mean_minus_harmonic, r.mean - r.harmonic, 1e-12);
    EXPECT_GT(r.var, 0.5 * r.ln_n);
    EXPECT_LT(r.var, 1.5 * r.ln_n);
}

TEST(Json, SummaryKeys)
{
    const auto j = to_json(run("3x2", 100, 1));
    for (const char* k : {"spec", "N", "n", "trials", "vertex_counts", "connected"}) EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["N"], 6);
    EXPECT_EQ(j["trials"], 100);
}
