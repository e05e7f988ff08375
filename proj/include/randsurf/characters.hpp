#pragma once

// Irreducible characters of S_N.
//
// Characters are evaluated with the Murnaghan-Nakayama rule on beta-sets
// (first-column hook lengths): removing a rim hook of length r moves one bead
// from position b to the free position b - r, and the sign is (-1)^k with k
// the number of beads jumped over, which equals the rim hook's height
// (rows occupied minus one). Parts of the class are removed in weakly
// decreasing order.

#include "randsurf/exact_dist.hpp"
#include "randsurf/perm.hpp"
#include "randsurf/surface.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <thread>
#include <unordered_map>

namespace randsurf {

inline constexpr std::uint32_t default_character_cap = 30;

inline void check_character_cap(std::uint64_t n, std::uint32_t cap)
{
    if (n > cap)
        throw CapExceeded("N=" + std::to_string(n) + " exceeds the character cap " + std::to_string(cap));
}

// ---------------------------------------------------------------------------
// Partitions with hook data

struct PartitionData {
    Parts parts;
    /// hooks[row][col] = arm + leg + 1
    std::vector<std::vector<std::uint32_t>> hooks;
    /// f^lambda = N! / prod h(u)
    BigInt dim;
    bool is_self_dual = false;

    std::uint32_t size() const noexcept { return std::accumulate(parts.begin(), parts.end(), 0u); }

    static PartitionData make(Parts parts)
    {
        if (parts.empty()) throw InvalidInput("partition must be nonempty");
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] == 0) throw InvalidInput("partition parts must be positive");
            if (i && parts[i] > parts[i - 1]) throw InvalidInput("partition parts must be weakly decreasing");
        }
        PartitionData p;
        const Parts conj = conjugate(parts);
        p.hooks.resize(parts.size());
        BigInt prod = 1;
        for (std::uint32_t r = 0; r < parts.size(); ++r) {
            p.hooks[r].resize(parts[r]);
            for (std::uint32_t c = 0; c < parts[r]; ++c) {
                const std::uint32_t h = (parts[r] - c - 1) + (conj[c] - r - 1) + 1;
                p.hooks[r][c] = h;
                prod *= h;
            }
        }
        const BigInt nf = factorial(std::accumulate(parts.begin(), parts.end(), 0u));
        if (nf % prod != 0) throw std::logic_error("hook product does not divide N!");
        p.dim = nf / prod;
        p.is_self_dual = conj == parts;
        p.parts = std::move(parts);
        return p;
    }

    static PartitionData parse(std::string_view text) { return make(CycleType::parse(text).parts()); }

    PartitionData dual() const { return make(conjugate(parts)); }
    std::string to_string() const { return join_parts(parts); }
};

inline BigInt dimension(const PartitionData& lambda) { return lambda.dim; }

/// All partitions of n in reverse-lexicographic order.
inline std::vector<PartitionData> partitions(std::uint32_t n, std::uint32_t cap = default_character_cap)
{
    if (n < 1) throw InvalidInput("partitions need N >= 1");
    check_character_cap(n, cap);
    std::vector<PartitionData> out;
    for_each_partition(n, [&](const Parts& p) { out.push_back(PartitionData::make(p)); });
    return out;
}

// ---------------------------------------------------------------------------
// Murnaghan-Nakayama with a shared memo

/// Memo keyed by (lambda, remaining class parts). Concurrent readers, exclusive
/// writers; cleared wholesale once it holds max_entries values.
class CharacterCache {
public:
    explicit CharacterCache(std::size_t max_entries = std::size_t{1} << 22) : max_entries_(max_entries) {}

    std::optional<BigInt> get(const std::string& key) const
    {
        std::shared_lock lock(mutex_);
        auto it = memo_.find(key);
        if (it == memo_.end()) return std::nullopt;
        return it->second;
    }

    void put(std::string key, BigInt value)
    {
        std::unique_lock lock(mutex_);
        if (memo_.size() >= max_entries_) memo_.clear();
        memo_.emplace(std::move(key), std::move(value));
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return memo_.size();
    }

    void clear()
    {
        std::unique_lock lock(mutex_);
        memo_.clear();
    }

    static CharacterCache& global()
    {
        static CharacterCache cache;
        return cache;
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, BigInt> memo_;
    std::size_t max_entries_;
};

namespace detail {

inline std::string memo_key(const Parts& lambda, std::span<const std::uint32_t> mu)
{
    std::string key;
    key.reserve(4 * (lambda.size() + mu.size()) + 1);
    auto put = [&](std::uint32_t v) {
        key.push_back(static_cast<char>(v & 0xff));
        key.push_back(static_cast<char>((v >> 8) & 0xff));
    };
    for (auto v : lambda) put(v);
    key.push_back('|');
    for (auto v : mu) put(v);
    return key;
}

/// Partitions reachable from lambda by removing one rim hook of length r,
/// with the sign (-1)^height.
inline std::vector<std::pair<Parts, int>> remove_rim_hooks(const Parts& lambda, std::uint32_t r)
{
    const auto k = static_cast<std::uint32_t>(lambda.size());
    std::vector<std::uint32_t> beta(k);
    for (std::uint32_t i = 0; i < k; ++i) beta[i] = lambda[i] + (k - 1 - i);
    // beta is strictly decreasing
    std::vector<std::pair<Parts, int>> out;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (beta[i] < r) break;
        const std::uint32_t target = beta[i] - r;
        if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int jumped = 0;
        for (std::uint32_t j = i + 1; j < k; ++j)
            if (beta[j] > target) ++jumped;
        std::vector<std::uint32_t> nb = beta;
        nb[i] = target;
        std::sort(nb.begin(), nb.end(), std::greater<>());
        Parts next(k);
        for (std::uint32_t t = 0; t < k; ++t) next[t] = nb[t] - (k - 1 - t);
        while (!next.empty() && next.back() == 0) next.pop_back();
        out.emplace_back(std::move(next), jumped % 2 == 0 ? 1 : -1);
    }
    return out;
}

inline BigInt mn_rec(const Parts& lambda, std::span<const std::uint32_t> mu, CharacterCache& cache)
{
    if (mu.empty()) return lambda.empty() ? 1 : 0;
    if (mu.size() == 1) {
        // one hook of the full size: lambda must itself be a hook (a, 1^b)
        const std::uint32_t n = mu[0];
        if (lambda.empty()) return 0;
        const auto legs = static_cast<std::uint32_t>(lambda.size() - 1);
        if (lambda[0] + legs != n) return 0;
        for (std::size_t i = 1; i < lambda.size(); ++i)
            if (lambda[i] != 1) return 0;
        return legs % 2 == 0 ? 1 : -1;
    }
    auto key = memo_key(lambda, mu);
    if (auto hit = cache.get(key)) return *hit;
    BigInt total = 0;
    for (auto& [rest, sgn] : remove_rim_hooks(lambda, mu[0])) {
        BigInt v = mn_rec(rest, mu.subspan(1), cache);
        if (sgn > 0) total += v;
        else total -= v;
    }
    cache.put(std::move(key), total);
    return total;
}

} // namespace detail

/// chi^lambda(mu), exact.
inline BigInt character(const Parts& lambda, const CycleType& mu, CharacterCache& cache = CharacterCache::global())
{
    const auto lsize = std::accumulate(lambda.begin(), lambda.end(), 0u);
    if (lsize != mu.size())
        throw InvalidInput("character: |lambda|=" + std::to_string(lsize) + " but |mu|=" + std::to_string(mu.size()));
    return detail::mn_rec(lambda, mu.parts(), cache);
}

struct CharacterValue {
    Parts lambda;
    CycleType mu;
    BigInt value;
};

inline CharacterValue mn_character(const PartitionData& lambda, const CycleType& mu)
{
    return {lambda.parts, mu, character(lambda.parts, mu)};
}

// ---------------------------------------------------------------------------
// Character tables

struct CharacterTable {
    std::uint32_t n = 0;
    std::vector<PartitionData> rows;
    std::vector<CycleType> cols;
    /// values[row][col]
    std::vector<std::vector<BigInt>> values;
};

/// Full table, rows and columns both in reverse-lexicographic order. Rows are
/// split across `workers` threads. Tables are kept for reuse per N.
inline const CharacterTable& character_table(std::uint32_t n, unsigned workers = 1,
                                             std::uint32_t cap = default_character_cap)
{
    static std::mutex mutex;
    static std::map<std::uint32_t, std::unique_ptr<CharacterTable>> tables;
    check_character_cap(n, cap);
    {
        std::lock_guard lock(mutex);
        if (auto it = tables.find(n); it != tables.end()) return *it->second;
    }
    auto t = std::make_unique<CharacterTable>();
    t->n = n;
    t->rows = partitions(n, cap);
    for (const auto& p : t->rows) t->cols.emplace_back(p.parts);
    t->values.assign(t->rows.size(), {});
    auto fill_row = [&](std::size_t r) {
        std::vector<BigInt> row;
        row.reserve(t->cols.size());
        for (const auto& mu : t->cols) row.push_back(character(t->rows[r].parts, mu));
        t->values[r] = std::move(row);
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        for (std::size_t r = 0; r < t->rows.size(); ++r) fill_row(r);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t r = w; r < t->rows.size(); r += workers) fill_row(r);
            });
        for (auto& th : pool) th.join();
    }
    std::lock_guard lock(mutex);
    auto [it, inserted] = tables.emplace(n, std::move(t));
    return *it->second;
}

// ---------------------------------------------------------------------------
// Bounds and convolution

inline CycleType matching_type(std::uint32_t n) { return CycleType(Parts(n / 2, 2)); }

struct DsBound {
    /// (1/4) sum over lambda != (N), (1^N) of (chi(C_J) chi(C_2) / f)^2
    Rational squared;
    double value = 0;
};

/// Character bound on || P_gamma - U_H ||_TV, valid for N >= 5.
inline DsBound ds_bound(const GluingSpec& spec, std::uint32_t cap = default_character_cap)
{
    const auto n = static_cast<std::uint32_t>(spec.sides());
    check_character_cap(n, cap);
    const CycleType cj = spec.cycle_type();
    const CycleType c2 = matching_type(n);
    Rational sum = 0;
    for_each_partition(n, [&](const Parts& lambda) {
        if (lambda.size() == 1 || lambda.size() == n) return;
        const auto pd = PartitionData::make(lambda);
        const BigInt prod = character(lambda, cj) * character(lambda, c2);
        if (prod == 0) return;
        Rational t(prod, pd.dim);
        sum += t * t;
    });
    DsBound b;
    b.squared = sum / 4;
    b.value = std::sqrt(to_double(b.squared));
    return b;
}

/// P(gamma in C_mu) = |C_mu|/N! * sum_lambda chi(C_J) chi(C_2) chi(mu) / f.
inline Rational frobenius_class_prob(const GluingSpec& spec, const CycleType& target,
                                     std::uint32_t cap = default_character_cap)
{
    const auto n = static_cast<std::uint32_t>(spec.sides());
    if (target.size() != n)
        throw InvalidInput("frobenius_class_prob: |target|=" + std::to_string(target.size()) + " but N=" + std::to_string(n));
    check_character_cap(n, cap);
    const CycleType cj = spec.cycle_type();
    const CycleType c2 = matching_type(n);
    Rational sum = 0;
    for_each_partition(n, [&](const Parts& lambda) {
        const BigInt prod = character(lambda, cj) * character(lambda, c2);
        if (prod == 0) return;
        const BigInt cm = character(lambda, target);
        if (cm == 0) return;
        sum += Rational(prod * cm, PartitionData::make(lambda).dim);
    });
    Rational p = sum * Rational(class_size(target), factorial(n));
    if (p < 0) throw std::logic_error("frobenius_class_prob produced a negative probability for " + target.to_string());
    return p;
}

/// The whole class law of gamma from characters, over types in the predicted coset.
inline TypeDist frobenius_class_distribution(const GluingSpec& spec, std::uint32_t cap = default_character_cap)
{
    const auto n = static_cast<std::uint32_t>(spec.sides());
    const Parity coset = predict_coset(spec);
    TypeDist d;
    for_each_partition(n, [&](const Parts& p) {
        CycleType mu(p);
        if (mu.parity() != coset) return;
        Rational q = frobenius_class_prob(spec, mu, cap);
        if (q != 0) d.add(mu, q);
    });
    return d;
}

/// ln|chi^lambda(mu)| / ln f^lambda. Zero when f = 1; -inf when chi = 0.
inline double explore_character_ratio(const PartitionData& lambda, const CycleType& mu)
{
    if (lambda.dim == 1) return 0.0;
    BigInt chi = character(lambda.parts, mu);
    if (chi == 0) return -std::numeric_limits<double>::infinity();
    if (chi < 0) chi = -chi;
    return std::log(to_double(chi)) / std::log(to_double(lambda.dim));
}

} // namespace randsurf
