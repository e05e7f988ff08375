#pragma once

// Union bound on the probability that the glued surface is disconnected.
//
// If the surface falls apart, some bipartition of the faces into groups with
// N' and N'' sides (both even) has no gluing across it. For a fixed
// bipartition that happens with probability
//     P(N', N'') = (N'-1)!! (N''-1)!! / (N-1)!!,
// and the number of ordered bipartitions with N' sides on the first side is
//     Q(N', N'') = [x^N'] prod_j (1 + x^j)^{n_j}.
// Q is dominated by exp(H(y, N')) for every y > 0, where
//     H(y, N') = sum_j n_j ln(1 + y^j) - N' ln y.

#include "randsurf/perm.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace randsurf {

/// (N'-1)!! (N''-1)!! / (N-1)!!, both arguments even and >= 2.
inline Rational no_match_prob(std::uint64_t n1, std::uint64_t n2)
{
    if (n1 < 2 || n2 < 2 || n1 % 2 != 0 || n2 % 2 != 0)
        throw InvalidInput("no_match_prob needs even N', N'' >= 2; got (" + std::to_string(n1) + ", " +
                           std::to_string(n2) + ")");
    if (n1 > n2) std::swap(n1, n2);
    // (N-1)!! / (N''-1)!! is the product of the odd numbers in (N'', N).
    BigInt num = odd_double_factorial(static_cast<std::int64_t>(n1) - 1);
    BigInt den = 1;
    for (std::uint64_t k = n2 + 1; k < n1 + n2; k += 2) den *= k;
    return Rational(num, den);
}

/// Coefficients of prod_j (1 + x^j)^{n_j}, index = N'. Built face by face.
inline std::vector<BigInt> split_polynomial(const GluingSpec& spec)
{
    std::vector<BigInt> coeff(spec.sides() + 1, BigInt(0));
    coeff[0] = 1;
    std::uint64_t reach = 0;
    for (auto [j, c] : spec.counts()) {
        for (std::uint64_t f = 0; f < c; ++f) {
            reach += j;
            for (std::uint64_t k = reach; k >= j; --k) coeff[k] += coeff[k - j];
        }
    }
    return coeff;
}

/// Q(N', N - N'): ordered face bipartitions with N' sides in the first group.
inline BigInt split_count(const GluingSpec& spec, std::uint64_t n_prime)
{
    if (n_prime > spec.sides()) return 0;
    return split_polynomial(spec)[n_prime];
}

/// Smallest side count a closed group of faces can have: an even total needs
/// either one even polygon or at least two odd ones. Equals min J (doubled
/// when odd) unless an even j below twice the smallest odd j is present.
inline std::uint64_t min_group_sides(const GluingSpec& spec)
{
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    bool seen_odd = false;
    for (auto [j, c] : spec.counts()) {
        if (j % 2 == 0) best = std::min<std::uint64_t>(best, j);
        else if (!seen_odd) {
            best = std::min<std::uint64_t>(best, 2ull * j);
            seen_odd = true;
        }
    }
    return best;
}

struct SplitTerm {
    std::uint64_t n_prime = 0;
    std::uint64_t n_double_prime = 0;
    Rational P;
    BigInt Q;
    Rational product;
};

struct UnionBound {
    std::vector<SplitTerm> terms;
    Rational total;
};

/// sum over even N' in [m, N - m] of P(N', N'') Q(N', N''); terms with Q = 0
/// are left out of `terms`.
inline UnionBound union_bound(const GluingSpec& spec)
{
    const std::uint64_t n = spec.sides();
    const std::uint64_t m = min_group_sides(spec);
    UnionBound ub;
    ub.total = 0;
    if (2 * m > n) return ub;
    const auto poly = split_polynomial(spec);
    for (std::uint64_t n1 = m; n1 <= n - m; n1 += 2) {
        if (n1 % 2 != 0) continue;
        if (poly[n1] == 0) continue;
        SplitTerm t;
        t.n_prime = n1;
        t.n_double_prime = n - n1;
        t.P = no_match_prob(n1, n - n1);
        t.Q = poly[n1];
        t.product = t.P * t.Q;
        ub.total += t.product;
        ub.terms.push_back(std::move(t));
    }
    return ub;
}

/// sum_j n_j j y^j / (y^j + 1); strictly increasing in y.
inline double split_balance(const GluingSpec& spec, double y)
{
    double s = 0;
    for (auto [j, c] : spec.counts()) {
        const double yj = std::pow(y, static_cast<double>(j));
        s += static_cast<double>(c) * j * yj / (yj + 1.0);
    }
    return s;
}

/// The minimiser of H(., N') on (0, 1]: the root of split_balance(y) = N'.
inline double y_opt(const GluingSpec& spec, double n_prime)
{
    const double half = static_cast<double>(spec.sides()) / 2.0;
    if (!(n_prime > 0)) throw InvalidInput("y_opt needs N' > 0");
    if (n_prime > half) throw InvalidInput("y_opt needs N' <= N/2");
    if (n_prime == half) return 1.0;
    double lo = 1e-9, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (split_balance(spec, mid) < n_prime) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline double h_value(const GluingSpec& spec, double y, double n_prime)
{
    if (!(y > 0)) throw InvalidInput("h_value needs y > 0");
    double s = 0;
    for (auto [j, c] : spec.counts()) s += static_cast<double>(c) * std::log1p(std::pow(y, static_cast<double>(j)));
    return s - n_prime * std::log(y);
}

} // namespace randsurf
