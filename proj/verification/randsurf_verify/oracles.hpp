#pragma once

// Reference computations that share no code path with the library routines
// they check: brute force over S_N, Young-diagram cell manipulation,
// backtracking tableaux, and standard statistical tests.

#include "randsurf/numeric.hpp"
#include "randsurf/perm.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace randsurf::oracle {

/// Cycle type of the 0-based image vector, computed without Permutation.
inline Parts cycle_type_of(const std::vector<int>& img)
{
    std::vector<int> seen(img.size(), 0);
    Parts parts;
    for (std::size_t s = 0; s < img.size(); ++s) {
        if (seen[s]) continue;
        std::uint32_t len = 0;
        for (auto x = static_cast<int>(s); !seen[x]; x = img[x]) { seen[x] = 1; ++len; }
        parts.push_back(len);
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return parts;
}

/// Visits every permutation of {0..n-1} in lexicographic order.
template <class F>
void for_each_permutation(int n, F&& f)
{
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    do f(static_cast<const std::vector<int>&>(img));
    while (std::next_permutation(img.begin(), img.end()));
}

/// Census of S_n by cycle type.
inline std::map<Parts, std::uint64_t> symmetric_group_census(int n)
{
    std::map<Parts, std::uint64_t> m;
    for_each_permutation(n, [&](const std::vector<int>& p) { ++m[cycle_type_of(p)]; });
    return m;
}

/// Number of permutations of [n] with exactly l cycles, by enumeration.
inline std::vector<std::uint64_t> stirling_by_enumeration(int n)
{
    std::vector<std::uint64_t> s(n + 1, 0);
    for_each_permutation(n, [&](const std::vector<int>& p) { ++s[cycle_type_of(p).size()]; });
    return s;
}

/// Standard Young tableaux of shape lambda, by placing n, n-1, ... at corners.
inline std::uint64_t count_standard_tableaux(Parts lambda)
{
    while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
    if (lambda.empty()) return 1;
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < lambda.size(); ++r) {
        const bool corner = r + 1 == lambda.size() || lambda[r + 1] < lambda[r];
        if (!corner) continue;
        Parts next = lambda;
        --next[r];
        total += count_standard_tableaux(next);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Rim hooks on explicit cells

namespace detail {

/// Every partition nu contained in lambda with |nu| = target.
inline void subpartitions(const Parts& lambda, std::size_t row, std::uint32_t cap, std::uint32_t remaining,
                          Parts& cur, std::vector<Parts>& out)
{
    if (row == lambda.size()) {
        if (remaining == 0) {
            Parts nu = cur;
            while (!nu.empty() && nu.back() == 0) nu.pop_back();
            out.push_back(nu);
        }
        return;
    }
    const std::uint32_t hi = std::min(lambda[row], cap);
    for (std::uint32_t v = 0; v <= hi && v <= remaining; ++v) {
        cur.push_back(v);
        subpartitions(lambda, row + 1, v, remaining - v, cur, out);
        cur.pop_back();
    }
}

/// lambda/nu is a border strip: edge-connected with no 2x2 square.
/// Returns the number of rows it occupies, or 0 if it is not a strip.
inline std::size_t strip_rows(const Parts& lambda, const Parts& nu)
{
    std::set<std::pair<int, int>> cells;
    auto nu_at = [&](std::size_t r) -> std::uint32_t { return r < nu.size() ? nu[r] : 0; };
    for (std::size_t r = 0; r < lambda.size(); ++r)
        for (std::uint32_t c = nu_at(r); c < lambda[r]; ++c) cells.insert({static_cast<int>(r), static_cast<int>(c)});
    if (cells.empty()) return 0;
    for (auto [r, c] : cells)
        if (cells.count({r + 1, c}) && cells.count({r, c + 1}) && cells.count({r + 1, c + 1})) return 0;
    std::set<std::pair<int, int>> reached{*cells.begin()};
    std::vector<std::pair<int, int>> stack{*cells.begin()};
    while (!stack.empty()) {
        auto [r, c] = stack.back();
        stack.pop_back();
        for (auto [dr, dc] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            std::pair<int, int> nb{r + dr, c + dc};
            if (cells.count(nb) && !reached.count(nb)) {
                reached.insert(nb);
                stack.push_back(nb);
            }
        }
    }
    if (reached.size() != cells.size()) return 0;
    std::set<int> rows;
    for (auto [r, c] : cells) rows.insert(r);
    return rows.size();
}

/// (nu, sign) for each border strip of size r removable from lambda.
inline std::vector<std::pair<Parts, int>> strips(const Parts& lambda, std::uint32_t r)
{
    const auto n = std::accumulate(lambda.begin(), lambda.end(), 0u);
    std::vector<std::pair<Parts, int>> out;
    if (r > n) return out;
    std::vector<Parts> subs;
    Parts cur;
    subpartitions(lambda, 0, lambda.empty() ? 0 : lambda[0], n - r, cur, subs);
    for (auto& nu : subs) {
        const auto rows = strip_rows(lambda, nu);
        if (rows) out.emplace_back(nu, (rows - 1) % 2 == 0 ? 1 : -1);
    }
    return out;
}

} // namespace detail

/// chi^lambda at the class with the parts of `order`, removed in the given order.
inline BigInt character_by_strips(const Parts& lambda, Parts order)
{
    if (order.empty()) return lambda.empty() ? 1 : 0;
    const std::uint32_t r = order.back();
    order.pop_back();
    BigInt total = 0;
    for (auto& [nu, sgn] : detail::strips(lambda, r)) total += sgn * character_by_strips(nu, order);
    return total;
}

/// g^lambda(a): ways to empty lambda deleting rim hooks of lengths a_1, a_2, ... in turn.
inline std::uint64_t rim_hook_count(const Parts& lambda, const Parts& composition)
{
    std::uint64_t ways = 0;
    std::vector<std::pair<Parts, std::size_t>> stack{{lambda, 0}};
    while (!stack.empty()) {
        auto [shape, idx] = stack.back();
        stack.pop_back();
        if (idx == composition.size()) {
            if (shape.empty()) ++ways;
            continue;
        }
        for (auto& [nu, sgn] : detail::strips(shape, composition[idx])) stack.emplace_back(nu, idx + 1);
    }
    return ways;
}

// ---------------------------------------------------------------------------
// Brute-force law of gamma over ALL of C_J x C_2

/// Exact P(gamma has type mu) enumerating every alpha of the given type and
/// every matching; feasible for N <= 8.
inline std::map<Parts, Rational> gamma_law_brute_force(const Parts& alpha_type)
{
    const int n = static_cast<int>(std::accumulate(alpha_type.begin(), alpha_type.end(), 0u));
    std::vector<std::vector<int>> alphas, betas;
    Parts sorted_type = alpha_type;
    std::sort(sorted_type.begin(), sorted_type.end(), std::greater<>());
    const Parts two(n / 2, 2);
    for_each_permutation(n, [&](const std::vector<int>& p) {
        auto t = cycle_type_of(p);
        if (t == sorted_type) alphas.push_back(p);
        if (t == two) betas.push_back(p);
    });
    std::map<Parts, std::uint64_t> counts;
    std::vector<int> g(n);
    for (const auto& a : alphas)
        for (const auto& b : betas) {
            for (int i = 0; i < n; ++i) g[i] = a[b[i]];
            ++counts[cycle_type_of(g)];
        }
    std::map<Parts, Rational> law;
    const BigInt total = BigInt(alphas.size()) * betas.size();
    for (auto& [t, c] : counts) law[t] = Rational(BigInt(c), total);
    return law;
}

// ---------------------------------------------------------------------------
// Statistics

/// Pearson chi-square statistic against expected probabilities.
inline double chi_square_statistic(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected_p)
{
    const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
    double x2 = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = total * expected_p[i];
        x2 += (observed[i] - e) * (observed[i] - e) / e;
    }
    return x2;
}

/// Upper critical value at the given significance, df degrees of freedom.
inline double chi_square_critical(double df, double significance)
{
    boost::math::chi_squared_distribution<double> dist(df);
    return boost::math::quantile(boost::math::complement(dist, significance));
}

/// Harmonic number by exact rational summation.
inline Rational harmonic_exact(std::uint32_t n)
{
    Rational h = 0;
    for (std::uint32_t j = 1; j <= n; ++j) h += Rational(1, j);
    return h;
}

} // namespace randsurf::oracle
