#pragma once

// Seedable, splittable random streams. Every sampler in the library takes a
// stream explicitly; the same (seed, stream id) reproduces the same draws on
// any platform because bounded draws do not go through
// std::uniform_int_distribution (whose algorithm is implementation-defined).

#include <algorithm>
#include <cstdint>
#include <random>

namespace randsurf {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id), engine_(derive(seed, stream_id))
    {
    }

    /// Child stream; children with distinct ids are independent of each other
    /// and of the parent.
    [[nodiscard]] RngStream split(std::uint64_t child_id) const
    {
        return RngStream(derive(seed_, stream_id_), child_id);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }
    result_type operator()() { return engine_(); }

    /// Uniform integer in [0, bound), bound > 0. Lemire's multiply-and-reject.
    std::uint64_t below(std::uint64_t bound)
    {
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t id) noexcept
    {
        return splitmix64(splitmix64(seed) ^ splitmix64(id + 0x632be59bd9b4e019ULL));
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// Fisher-Yates with the portable bounded draw.
template <class RandomIt>
void shuffle(RandomIt first, RandomIt last, RngStream& rng)
{
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
        const auto j = rng.below(i);
        std::iter_swap(first + (i - 1), first + j);
    }
}

} // namespace randsurf
