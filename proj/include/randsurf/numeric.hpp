#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace randsurf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Rejected input: a precondition the caller can fix.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size cap was exceeded; the message says which tool to use instead.
class CapExceeded : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

inline BigInt factorial(std::uint64_t n)
{
    BigInt r = 1;
    for (std::uint64_t k = 2; k <= n; ++k) r *= k;
    return r;
}

/// (n)!! for odd n; (-1)!! = 1.
inline BigInt odd_double_factorial(std::int64_t n)
{
    BigInt r = 1;
    for (std::int64_t k = n; k > 1; k -= 2) r *= k;
    return r;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& q)
{
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

} // namespace randsurf
