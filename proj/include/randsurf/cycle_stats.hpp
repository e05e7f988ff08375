#pragma once

// Laws of the number of cycles C_N of a uniform permutation of [N], and of
// C_N^e / C_N^o for uniform even / odd permutations:
//   P(C_N = l)   = s(N,l) / N!
//   P(C_N^e = l) = 2 s(N,l) / N!  when N - l is even, else 0
//   P(C_N^o = l) = 2 s(N,l) / N!  when N - l is odd,  else 0
// with s(N,l) the signless Stirling numbers of the first kind.

#include "randsurf/numeric.hpp"
#include "randsurf/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string_view>
#include <utility>
#include <vector>

namespace randsurf {

enum class CycleParity { all, even, odd };
enum class Backend { exact, log_float };

inline constexpr std::uint32_t default_stirling_exact_cap = 500;
inline constexpr std::uint32_t default_poisson_binomial_cap = 10000;

inline std::string_view to_string(CycleParity p) noexcept
{
    switch (p) {
    case CycleParity::all: return "all";
    case CycleParity::even: return "even";
    case CycleParity::odd: return "odd";
    }
    return "?";
}

inline CycleParity parse_cycle_parity(std::string_view s)
{
    if (s == "all") return CycleParity::all;
    if (s == "even") return CycleParity::even;
    if (s == "odd") return CycleParity::odd;
    throw InvalidInput("parity must be all, even or odd; got '" + std::string(s) + "'");
}

inline double log_add_exp(double a, double b) noexcept
{
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    if (a == ninf) return b;
    if (b == ninf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

/// Row s(N, 0..N). Exact rows are big integers; log_float rows hold
/// ln s(N,l) (-inf for zeros).
class StirlingTable {
public:
    StirlingTable(std::uint32_t n, Backend backend, std::uint32_t exact_cap = default_stirling_exact_cap)
        : n_(n), backend_(backend)
    {
        if (n < 1) throw InvalidInput("Stirling table needs N >= 1");
        if (backend == Backend::exact) {
            if (n > exact_cap)
                throw CapExceeded("exact Stirling table capped at N=" + std::to_string(exact_cap) +
                                  "; use the log_float backend for N=" + std::to_string(n));
            exact_.assign(1, BigInt(1));
            for (std::uint32_t m = 0; m < n; ++m) {
                // s(m+1, l) = s(m, l-1) + m s(m, l)
                std::vector<BigInt> next(m + 2);
                for (std::uint32_t l = 0; l <= m + 1; ++l) {
                    BigInt v = 0;
                    if (l >= 1) v += exact_[l - 1];
                    if (l <= m) v += exact_[l] * m;
                    next[l] = std::move(v);
                }
                exact_ = std::move(next);
            }
        } else {
            constexpr double ninf = -std::numeric_limits<double>::infinity();
            logs_.assign(1, 0.0);
            for (std::uint32_t m = 0; m < n; ++m) {
                std::vector<double> next(m + 2, ninf);
                const double lm = m > 0 ? std::log(static_cast<double>(m)) : ninf;
                for (std::uint32_t l = 0; l <= m + 1; ++l) {
                    double v = ninf;
                    if (l >= 1) v = logs_[l - 1];
                    if (l <= m && m > 0) v = log_add_exp(v, lm + logs_[l]);
                    next[l] = v;
                }
                logs_ = std::move(next);
            }
        }
    }

    std::uint32_t n() const noexcept { return n_; }
    Backend backend() const noexcept { return backend_; }

    /// Exact backend only.
    const std::vector<BigInt>& exact() const
    {
        if (backend_ != Backend::exact) throw InvalidInput("Stirling table was built with the log_float backend");
        return exact_;
    }

    /// ln s(N, l); available from both backends.
    double log_value(std::uint32_t l) const
    {
        if (backend_ == Backend::log_float) return logs_.at(l);
        const auto& v = exact_.at(l);
        if (v == 0) return -std::numeric_limits<double>::infinity();
        // ln of a big integer without overflowing double
        const auto bits = boost::multiprecision::msb(v);
        if (bits < 1000) return std::log(v.convert_to<double>());
        const unsigned shift = static_cast<unsigned>(bits - 60);
        BigInt top = v >> shift;
        return std::log(top.convert_to<double>()) + shift * std::numbers::ln2;
    }

private:
    std::uint32_t n_;
    Backend backend_;
    std::vector<BigInt> exact_;
    std::vector<double> logs_;
};

inline StirlingTable stirling_table(std::uint32_t n, Backend backend = Backend::exact)
{
    return StirlingTable(n, backend);
}

inline bool admissible(std::uint32_t n, std::uint32_t l, CycleParity parity) noexcept
{
    switch (parity) {
    case CycleParity::all: return true;
    case CycleParity::even: return (n - l) % 2 == 0;
    case CycleParity::odd: return (n - l) % 2 == 1;
    }
    return false;
}

/// Exact pmf over l = 0..N.
struct CycleLaw {
    std::uint32_t n = 0;
    CycleParity parity = CycleParity::all;
    std::vector<Rational> pmf;
};

inline CycleLaw cycle_law(std::uint32_t n, CycleParity parity)
{
    if (n < 1) throw InvalidInput("cycle law needs N >= 1");
    if (n == 1 && parity == CycleParity::odd) throw InvalidInput("there are no odd permutations of [1]");
    const StirlingTable table(n, Backend::exact);
    const BigInt nf = factorial(n);
    CycleLaw law{n, parity, std::vector<Rational>(n + 1, Rational(0))};
    const int mult = (parity == CycleParity::all || n == 1) ? 1 : 2;
    for (std::uint32_t l = 0; l <= n; ++l)
        if (admissible(n, l, parity)) law.pmf[l] = Rational(table.exact()[l] * mult, nf);
    return law;
}

/// pmf of C_N as the law of sum_{j=1..N} Bernoulli(1/j), by O(N^2) convolution.
inline std::vector<double> poisson_binomial_pmf(std::uint32_t n, std::uint32_t cap = default_poisson_binomial_cap)
{
    if (n < 1) throw InvalidInput("Poisson-binomial law needs N >= 1");
    if (n > cap) throw CapExceeded("Poisson-binomial pmf capped at N=" + std::to_string(cap) + " (quadratic cost)");
    std::vector<double> pmf(n + 1, 0.0);
    pmf[0] = 1.0;
    for (std::uint32_t j = 1; j <= n; ++j) {
        const double p = 1.0 / j;
        for (std::uint32_t l = j; l >= 1; --l) pmf[l] = pmf[l] * (1.0 - p) + pmf[l - 1] * p;
        pmf[0] *= (1.0 - p);
    }
    return pmf;
}

/// Float law with optional parity restriction, from the Poisson-binomial pmf.
inline std::vector<double> cycle_law_float(std::uint32_t n, CycleParity parity)
{
    auto pmf = poisson_binomial_pmf(n);
    if (parity == CycleParity::all || n == 1) return pmf;
    for (std::uint32_t l = 0; l <= n; ++l) pmf[l] = admissible(n, l, parity) ? 2.0 * pmf[l] : 0.0;
    return pmf;
}

/// E[C_N] = H_N, Var(C_N) = sum (1/j)(1 - 1/j); summed smallest terms first.
inline std::pair<double, double> mean_var_CN(std::uint64_t n)
{
    if (n < 1) throw InvalidInput("mean_var_CN needs N >= 1");
    long double mean = 0, var = 0;
    for (std::uint64_t j = n; j >= 1; --j) {
        const long double r = 1.0L / static_cast<long double>(j);
        mean += r;
        var += r * (1.0L - r);
    }
    return {static_cast<double>(mean), static_cast<double>(var)};
}

/// Gaussian density with the mean and variance of C_N, evaluated at l.
inline double lclt_gaussian(std::uint64_t n, double l)
{
    if (n < 2) throw InvalidInput("lclt_gaussian needs N >= 2");
    const auto [mean, var] = mean_var_CN(n);
    const double z = l - mean;
    return std::exp(-z * z / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

/// C_N via the Feller coupling: sum of independent Bernoulli(1/j).
inline std::uint64_t sample_CN(std::uint64_t n, RngStream& rng)
{
    if (n < 1) throw InvalidInput("sample_CN needs N >= 1");
    std::uint64_t count = 1; // Y_1 = 1
    for (std::uint64_t j = 2; j <= n; ++j)
        if (rng.below(j) == 0) ++count;
    return count;
}

} // namespace randsurf
