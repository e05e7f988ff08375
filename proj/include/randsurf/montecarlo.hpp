#pragma once

// Monte Carlo experiments on random glued surfaces.
//
// Trials are split into `workers` contiguous slices; slice k draws from
// RngStream(seed, k) and produces its own tally. Tallies are integer
// histograms, so merging is exact and the summary is a pure function of the
// config (workers included), independent of thread scheduling.

#include "randsurf/cycle_stats.hpp"
#include "randsurf/exact_dist.hpp"
#include "randsurf/surface.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace randsurf {

struct ExperimentConfig {
    GluingSpec spec;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    bool record_components = false;
};

struct ExperimentSummary {
    std::string spec;
    std::uint64_t N = 0;
    std::uint64_t n = 0;
    std::uint64_t trials = 0;
    std::map<std::uint64_t, std::uint64_t> vertex_counts;
    /// number of components -> trials
    std::map<std::uint64_t, std::uint64_t> component_counts;
    /// genus -> connected trials
    std::map<std::uint64_t, std::uint64_t> genus_counts;
    /// genus -> components of disconnected trials (record_components only)
    std::map<std::uint64_t, std::uint64_t> component_genus_counts;
    std::uint64_t connected = 0;
    std::uint64_t coset_agreement = 0;

    void merge(const ExperimentSummary& o)
    {
        trials += o.trials;
        for (auto [k, c] : o.vertex_counts) vertex_counts[k] += c;
        for (auto [k, c] : o.component_counts) component_counts[k] += c;
        for (auto [k, c] : o.genus_counts) genus_counts[k] += c;
        for (auto [k, c] : o.component_genus_counts) component_genus_counts[k] += c;
        connected += o.connected;
        coset_agreement += o.coset_agreement;
    }

    std::map<std::uint64_t, double> vertex_pmf() const
    {
        std::map<std::uint64_t, double> pmf;
        for (auto [k, c] : vertex_counts) pmf[k] = static_cast<double>(c) / static_cast<double>(trials);
        return pmf;
    }

    double mean_vertices() const
    {
        long double s = 0;
        for (auto [k, c] : vertex_counts) s += static_cast<long double>(k) * c;
        return static_cast<double>(s / trials);
    }

    /// Unbiased sample variance of V.
    double var_vertices() const
    {
        if (trials < 2) return 0.0;
        const long double m = mean_vertices();
        long double s = 0;
        for (auto [k, c] : vertex_counts) s += (k - m) * (k - m) * c;
        return static_cast<double>(s / (trials - 1));
    }

    double p_connected() const { return static_cast<double>(connected) / static_cast<double>(trials); }

    double stderr_connected() const
    {
        const double p = p_connected();
        return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    }
};

inline ExperimentSummary run_slice(const GluingSpec& spec, std::uint64_t trials, RngStream rng, bool record_components)
{
    const std::uint64_t n = spec.sides();
    const Parity coset = predict_coset(spec);
    ExperimentSummary s;
    s.spec = spec.to_string();
    s.N = n;
    s.n = spec.faces();
    s.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto alpha = sample_class(spec, rng);
        const auto beta = sample_matching(n, rng);
        const auto st = glue(alpha, beta, {.record_orbits = false, .verbose = false});
        ++s.vertex_counts[st.V];
        ++s.component_counts[st.components.size()];
        if (parity_of(n - st.V) == coset) ++s.coset_agreement;
        if (st.connected()) {
            ++s.connected;
            ++s.genus_counts[st.components.front().genus];
        } else if (record_components) {
            for (const auto& c : st.components) ++s.component_genus_counts[c.genus];
        }
    }
    return s;
}

inline ExperimentSummary run_experiment(const ExperimentConfig& cfg)
{
    if (cfg.trials < 1) throw InvalidInput("experiment needs at least one trial");
    if (cfg.spec.sides() > std::numeric_limits<Label>::max() / 2)
        throw InvalidInput("N=" + std::to_string(cfg.spec.sides()) +
                           " is beyond what a trial can hold in memory; reduce the polygon counts");
    const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(cfg.workers, cfg.trials)));
    std::vector<ExperimentSummary> parts(workers);
    auto slice = [&](unsigned k) {
        const std::uint64_t lo = cfg.trials * k / workers;
        const std::uint64_t hi = cfg.trials * (k + 1) / workers;
        parts[k] = run_slice(cfg.spec, hi - lo, RngStream(cfg.seed, k), cfg.record_components);
    };
    if (workers == 1) {
        slice(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < workers; ++k) pool.emplace_back(slice, k);
        for (auto& t : pool) t.join();
    }
    ExperimentSummary total;
    total.spec = cfg.spec.to_string();
    total.N = cfg.spec.sides();
    total.n = cfg.spec.faces();
    for (const auto& p : parts) total.merge(p);
    return total;
}

/// (1/2) sum |p_hat - q| over the union of supports.
inline double empirical_tv(const ExperimentSummary& s, const std::map<std::uint64_t, double>& reference)
{
    const auto pmf = s.vertex_pmf();
    double d = 0;
    for (auto [k, p] : pmf) {
        auto it = reference.find(k);
        d += std::abs(p - (it == reference.end() ? 0.0 : it->second));
    }
    for (auto [k, q] : reference)
        if (!pmf.contains(k)) d += std::abs(q);
    return d / 2;
}

inline double empirical_tv(const ExperimentSummary& s, const CountDist& reference)
{
    std::map<std::uint64_t, double> ref;
    for (const auto& [k, p] : reference.support()) ref[static_cast<std::uint64_t>(k)] = to_double(p);
    return empirical_tv(s, ref);
}

inline double empirical_tv(const ExperimentSummary& s, const CycleLaw& reference)
{
    std::map<std::uint64_t, double> ref;
    for (std::size_t l = 0; l < reference.pmf.size(); ++l)
        if (reference.pmf[l] != 0) ref[l] = to_double(reference.pmf[l]);
    return empirical_tv(s, ref);
}

inline double empirical_tv(const ExperimentSummary& a, const ExperimentSummary& b)
{
    return empirical_tv(a, b.vertex_pmf());
}

struct GaussianFitReport {
    double mean = 0;
    double var = 0;
    double stderr_mean = 0;
    double ln_n = 0;
    double harmonic = 0;     // E[C_N]
    double var_cycles = 0;   // Var(C_N)
    double mean_minus_ln_n = 0;
    double var_minus_ln_n = 0;
    double mean_minus_harmonic = 0;
    /// trials with N - V of the wrong parity for the predicted coset
    std::uint64_t parity_violations = 0;
};

inline GaussianFitReport gaussian_fit_check(const ExperimentSummary& s, std::uint64_t n)
{
    GaussianFitReport r;
    r.mean = s.mean_vertices();
    r.var = s.var_vertices();
    r.stderr_mean = std::sqrt(r.var / static_cast<double>(s.trials));
    r.ln_n = std::log(static_cast<double>(n));
    std::tie(r.harmonic, r.var_cycles) = mean_var_CN(n);
    r.mean_minus_ln_n = r.mean - r.ln_n;
    r.var_minus_ln_n = r.var - r.ln_n;
    r.mean_minus_harmonic = r.mean - r.harmonic;
    const auto spec = GluingSpec::parse(s.spec);
    const Parity coset = predict_coset(spec);
    for (auto [v, c] : s.vertex_counts)
        if (parity_of(n - v) != coset) r.parity_violations += c;
    return r;
}

inline nlohmann::ordered_json to_json(const ExperimentSummary& s)
{
    auto hist = [](const std::map<std::uint64_t, std::uint64_t>& m) {
        auto arr = nlohmann::ordered_json::array();
        for (auto [k, c] : m) arr.push_back({k, c});
        return arr;
    };
    nlohmann::ordered_json j;
    j["spec"] = s.spec;
    j["N"] = s.N;
    j["n"] = s.n;
    j["trials"] = s.trials;
    auto pmf = nlohmann::ordered_json::array();
    for (auto [k, p] : s.vertex_pmf()) pmf.push_back({k, p});
    j["vertex_pmf"] = std::move(pmf);
    j["vertex_counts"] = hist(s.vertex_counts);
    j["mean_V"] = s.mean_vertices();
    j["var_V"] = s.var_vertices();
    j["connected"] = s.connected;
    j["p_connected"] = s.p_connected();
    j["stderr_connected"] = s.stderr_connected();
    j["component_counts"] = hist(s.component_counts);
    j["genus_counts"] = hist(s.genus_counts);
    j["component_genus_counts"] = hist(s.component_genus_counts);
    j["coset_agreement"] = s.coset_agreement;
    return j;
}

inline nlohmann::ordered_json to_json(const GaussianFitReport& r)
{
    return {{"mean", r.mean},
            {"var", r.var},
            {"stderr_mean", r.stderr_mean},
            {"ln_N", r.ln_n},
            {"H_N", r.harmonic},
            {"var_C_N", r.var_cycles},
            {"mean_minus_ln_N", r.mean_minus_ln_n},
            {"var_minus_ln_N", r.var_minus_ln_n},
            {"mean_minus_H_N", r.mean_minus_harmonic},
            {"parity_violations", r.parity_violations}};
}

} // namespace randsurf
