#pragma once

// Exact laws at small N by enumerating every perfect matching beta against a
// fixed alpha. The law of gamma = alpha*beta is a class function that does
// not depend on which member of C_J plays alpha, so only beta is enumerated:
// (N-1)!! cases instead of |C_J| (N-1)!!.

#include "randsurf/cycle_stats.hpp"
#include "randsurf/exact_dist.hpp"
#include "randsurf/surface.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace randsurf {

inline constexpr std::uint32_t default_enumeration_cap = 14;

struct EnumerationConfig {
    std::uint32_t cap = default_enumeration_cap;
    unsigned workers = 1;
};

inline void check_cap(std::uint64_t n, std::uint32_t cap)
{
    if (n > cap)
        throw CapExceeded("N=" + std::to_string(n) + " exceeds the exact-enumeration cap " + std::to_string(cap) +
                          "; raise the cap or use the Monte Carlo tools (mc run) at this size");
}

// ---------------------------------------------------------------------------
// Matching enumeration

namespace detail {

template <class F>
void matchings_rec(std::vector<Label>& mate, std::vector<bool>& used, Label from, F& visit)
{
    const auto n = static_cast<Label>(mate.size());
    while (from < n && used[from]) ++from;
    if (from == n) {
        visit(std::span<const Label>(mate));
        return;
    }
    used[from] = true;
    for (Label k = from + 1; k < n; ++k) {
        if (used[k]) continue;
        used[k] = true;
        mate[from] = k;
        mate[k] = from;
        matchings_rec(mate, used, from + 1, visit);
        used[k] = false;
    }
    used[from] = false;
}

/// The matchings in which label 1 is paired with label partner+1.
template <class F>
void matchings_branch(std::size_t n, Label partner, F& visit)
{
    std::vector<Label> mate(n);
    std::vector<bool> used(n, false);
    used[0] = used[partner] = true;
    mate[0] = partner;
    mate[partner] = 0;
    matchings_rec(mate, used, 1, visit);
}

} // namespace detail

/// Visits every fixed-point-free involution of {1..n} as 0-based images, in
/// the deterministic order obtained by pairing the smallest unpaired label
/// with each candidate in increasing order.
template <class F>
void for_each_matching(std::size_t n, F&& visit, std::uint32_t cap = default_enumeration_cap)
{
    if (n < 2 || n % 2 != 0) throw InvalidInput("matchings need an even N >= 2, got " + std::to_string(n));
    check_cap(n, cap);
    for (Label k = 1; k < n; ++k) detail::matchings_branch(n, k, visit);
}

inline std::vector<Permutation> enumerate_matchings(std::size_t n, std::uint32_t cap = default_enumeration_cap)
{
    std::vector<Permutation> out;
    for_each_matching(n, [&](std::span<const Label> m) {
        out.emplace_back(Permutation::unchecked, std::vector<Label>(m.begin(), m.end()));
    }, cap);
    return out;
}

// ---------------------------------------------------------------------------
// Census over all matchings

struct GammaCensus {
    std::map<CycleType, std::uint64_t> type_counts;
    std::uint64_t connected = 0;
    std::uint64_t total = 0;

    void merge(const GammaCensus& o)
    {
        for (const auto& [t, c] : o.type_counts) type_counts[t] += c;
        connected += o.connected;
        total += o.total;
    }
};

/// Tallies gamma's cycle type and connectivity over all matchings against
/// the given alpha. Branches on the partner of label 1 run on `workers`
/// threads; per-branch integer tallies merge exactly.
inline GammaCensus gamma_census(const Permutation& alpha, EnumerationConfig cfg = {})
{
    const std::size_t n = alpha.size();
    if (n < 2 || n % 2 != 0) throw InvalidInput("exact enumeration needs an even N >= 2, got " + std::to_string(n));
    check_cap(n, cfg.cap);
    const auto a = std::vector<Label>(alpha.zero_based().begin(), alpha.zero_based().end());

    auto run_branch = [&](Label partner, GammaCensus& census) {
        std::vector<Label> g(n);
        std::vector<bool> seen(n);
        Parts parts;
        parts.reserve(n);
        std::vector<Label> parent(n);
        auto find = [&](Label x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto visit = [&](std::span<const Label> b) {
            for (std::size_t i = 0; i < n; ++i) g[i] = a[b[i]];
            std::fill(seen.begin(), seen.end(), false);
            parts.clear();
            for (Label i = 0; i < n; ++i) {
                if (seen[i]) continue;
                std::uint32_t len = 0;
                for (Label x = i; !seen[x]; x = g[x]) { seen[x] = true; ++len; }
                parts.push_back(len);
            }
            ++census.type_counts[CycleType(parts)];

            std::iota(parent.begin(), parent.end(), 0u);
            std::size_t comps = n;
            for (Label i = 0; i < n; ++i) {
                for (Label j : {a[i], b[i]}) {
                    auto ri = find(i), rj = find(j);
                    if (ri != rj) { parent[ri] = rj; --comps; }
                }
            }
            if (comps == 1) ++census.connected;
            ++census.total;
        };
        detail::matchings_branch(n, partner, visit);
    };

    GammaCensus result;
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(n - 1)));
    if (workers == 1) {
        for (Label k = 1; k < n; ++k) run_branch(k, result);
        return result;
    }
    std::atomic<Label> next{1};
    std::mutex merge_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            GammaCensus local;
            for (Label k = next++; k < n; k = next++) run_branch(k, local);
            std::lock_guard lock(merge_mutex);
            result.merge(local);
        });
    }
    for (auto& t : pool) t.join();
    return result;
}

inline GammaCensus gamma_census(const GluingSpec& spec, EnumerationConfig cfg = {})
{
    check_cap(spec.sides(), cfg.cap);
    return gamma_census(canonical_representative(spec), cfg);
}

/// P_gamma aggregated by cycle type, for the given alpha.
inline TypeDist exact_gamma_class_distribution(const Permutation& alpha, EnumerationConfig cfg = {})
{
    const auto census = gamma_census(alpha, cfg);
    TypeDist d;
    for (const auto& [t, c] : census.type_counts) d.add(t, Rational(c, census.total));
    return d;
}

inline TypeDist exact_gamma_class_distribution(const GluingSpec& spec, EnumerationConfig cfg = {})
{
    check_cap(spec.sides(), cfg.cap);
    return exact_gamma_class_distribution(canonical_representative(spec), cfg);
}

/// Law of V_N: pushforward of the class law under type -> number of parts.
inline CountDist vertex_distribution(const TypeDist& gamma_law)
{
    CountDist d;
    for (const auto& [t, p] : gamma_law.support()) d.add(static_cast<std::int64_t>(t.num_parts()), p);
    return d;
}

inline CountDist exact_vertex_distribution(const GluingSpec& spec, EnumerationConfig cfg = {})
{
    return vertex_distribution(exact_gamma_class_distribution(spec, cfg));
}

/// Uniform law on the coset H aggregated by cycle type: |C_mu| * 2 / N! on H.
inline TypeDist uniform_coset_type_law(std::uint32_t n, Parity coset)
{
    TypeDist d;
    const BigInt nf = factorial(n);
    for_each_partition(n, [&](const Parts& p) {
        CycleType t(p);
        if (t.parity() == coset) d.add(t, Rational(class_size(t) * 2, nf));
    });
    return d;
}

/// || P_gamma - U_H ||_TV, H the predicted coset. Computed on cycle types,
/// which equals the element-level distance because both laws are class functions.
inline Rational exact_tv_to_uniform_coset(const GluingSpec& spec, EnumerationConfig cfg = {})
{
    const auto law = exact_gamma_class_distribution(spec, cfg);
    return total_variation(law, uniform_coset_type_law(static_cast<std::uint32_t>(spec.sides()), predict_coset(spec)));
}

/// || P_{V_N} - P_{C_N^{e|o}} ||_TV with the parity of the predicted coset.
inline Rational exact_tv_vertexlaw_to_cyclelaw(const GluingSpec& spec, EnumerationConfig cfg = {})
{
    const auto v = exact_vertex_distribution(spec, cfg);
    const auto law = cycle_law(static_cast<std::uint32_t>(spec.sides()),
                               predict_coset(spec) == Parity::even ? CycleParity::even : CycleParity::odd);
    CountDist c;
    for (std::size_t l = 0; l < law.pmf.size(); ++l)
        if (law.pmf[l] != 0) c.add(static_cast<std::int64_t>(l), law.pmf[l]);
    return total_variation(v, c);
}

/// P(X_N = 1): fraction of matchings giving a single orbit of <alpha, beta>.
inline Rational exact_connectivity_probability(const GluingSpec& spec, EnumerationConfig cfg = {})
{
    const auto census = gamma_census(spec, cfg);
    return Rational(census.connected, census.total);
}

} // namespace randsurf
