#pragma once

// Finite laws with exact rational probabilities.

#include "randsurf/numeric.hpp"
#include "randsurf/perm.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>

namespace randsurf {

/// Outcome -> exact probability.
template <class Key>
class ExactDist {
public:
    ExactDist() = default;
    explicit ExactDist(std::map<Key, Rational> support) : support_(std::move(support)) {}

    const std::map<Key, Rational>& support() const noexcept { return support_; }

    Rational prob(const Key& k) const
    {
        auto it = support_.find(k);
        return it == support_.end() ? Rational(0) : it->second;
    }

    Rational total() const
    {
        Rational t = 0;
        for (const auto& [k, p] : support_) t += p;
        return t;
    }

    void add(const Key& k, const Rational& p) { support_[k] += p; }

private:
    std::map<Key, Rational> support_;
};

using TypeDist = ExactDist<CycleType>;
using CountDist = ExactDist<std::int64_t>;

inline Rational mean(const CountDist& d)
{
    Rational m = 0;
    for (const auto& [k, p] : d.support()) m += p * k;
    return m;
}

/// (1/2) sum |p - q| over the union of supports.
template <class Key>
Rational total_variation(const ExactDist<Key>& p, const ExactDist<Key>& q)
{
    Rational s = 0;
    for (const auto& [k, v] : p.support()) s += abs(v - q.prob(k));
    for (const auto& [k, v] : q.support())
        if (!p.support().contains(k)) s += abs(v);
    return s / 2;
}

inline std::string outcome_string(const CycleType& t) { return t.to_string(); }
inline std::string outcome_string(std::int64_t v) { return std::to_string(v); }

/// [{"outcome": "...", "num": "...", "den": "..."}, ...] with decimal-string integers.
template <class Key>
nlohmann::ordered_json to_json(const ExactDist<Key>& d)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [k, p] : d.support()) {
        arr.push_back({{"outcome", outcome_string(k)},
                       {"num", boost::multiprecision::numerator(p).str()},
                       {"den", boost::multiprecision::denominator(p).str()}});
    }
    return arr;
}

} // namespace randsurf
