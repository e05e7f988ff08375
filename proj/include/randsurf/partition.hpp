#pragma once

// Integer partitions, generated in reverse-lexicographic order:
// (4), (3,1), (2,2), (2,1,1), (1,1,1,1).

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace randsurf {

using Parts = std::vector<std::uint32_t>;

namespace detail {

template <class F>
void partitions_rec(std::uint32_t remaining, std::uint32_t max_part, std::uint32_t min_part,
                    Parts& prefix, F& visit)
{
    if (remaining == 0) {
        visit(static_cast<const Parts&>(prefix));
        return;
    }
    for (std::uint32_t p = std::min(max_part, remaining); p >= min_part && p > 0; --p) {
        prefix.push_back(p);
        partitions_rec(remaining - p, p, min_part, prefix, visit);
        prefix.pop_back();
    }
}

} // namespace detail

/// Calls visit(parts) for every partition of n whose parts lie in
/// [min_part, max_part]. n == 0 visits the empty partition once.
template <class F>
void for_each_partition(std::uint32_t n, F&& visit, std::uint32_t min_part = 1,
                        std::uint32_t max_part = ~std::uint32_t{0})
{
    Parts prefix;
    if (min_part == 0) min_part = 1;
    detail::partitions_rec(n, max_part, min_part, prefix, visit);
}

inline std::vector<Parts> all_partitions(std::uint32_t n, std::uint32_t min_part = 1)
{
    std::vector<Parts> out;
    for_each_partition(n, [&](const Parts& p) { out.push_back(p); }, min_part);
    return out;
}

/// Conjugate (transposed Young diagram).
inline Parts conjugate(const Parts& parts)
{
    Parts out;
    if (parts.empty()) return out;
    out.assign(parts.front(), 0);
    for (auto p : parts)
        for (std::uint32_t c = 0; c < p; ++c) ++out[c];
    return out;
}

inline std::string join_parts(const Parts& parts, char sep = '-')
{
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(parts[i]);
    }
    return s;
}

} // namespace randsurf
