#pragma once

// Permutations of {1..N}, cycle types, gluing specifications and the uniform
// samplers for a conjugacy class and for perfect matchings.
//
// Composition convention: compose(p, q)(i) = p(q(i)). The vertex permutation
// of a glued surface is compose(alpha, beta): follow the gluing beta first,
// then step along the polygon with alpha.
//
// Labels are 1-based in every constructor that takes labels and in every
// printed form. Internally images are stored 0-based.

#include "randsurf/numeric.hpp"
#include "randsurf/partition.hpp"
#include "randsurf/rng.hpp"

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace randsurf {

using Label = std::uint32_t;
using Cycle = std::vector<Label>;

enum class Parity { even, odd };

inline constexpr Parity parity_of(std::uint64_t x) noexcept { return x % 2 == 0 ? Parity::even : Parity::odd; }
inline constexpr int sign_of(Parity p) noexcept { return p == Parity::even ? 1 : -1; }
inline constexpr std::string_view to_string(Parity p) noexcept { return p == Parity::even ? "even" : "odd"; }

// ---------------------------------------------------------------------------
// CycleType

/// Weakly decreasing positive parts summing to N.
class CycleType {
public:
    CycleType() = default;

    /// Parts in any order; they are sorted into weakly decreasing order.
    explicit CycleType(Parts parts) : parts_(std::move(parts))
    {
        if (parts_.empty()) throw InvalidInput("cycle type must have at least one part");
        if (std::find(parts_.begin(), parts_.end(), 0u) != parts_.end())
            throw InvalidInput("cycle type parts must be positive");
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
    }

    static CycleType identity(std::uint32_t n) { return CycleType(Parts(n, 1)); }

    /// Dash-joined parts, e.g. "3-2-1".
    static CycleType parse(std::string_view text)
    {
        Parts parts;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto dash = text.find('-', pos);
            if (dash == std::string_view::npos) dash = text.size();
            auto tok = text.substr(pos, dash - pos);
            std::uint32_t v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || v == 0)
                throw InvalidInput("bad partition term '" + std::string(tok) + "' in '" + std::string(text) + "'");
            parts.push_back(v);
            pos = dash + 1;
        }
        return CycleType(std::move(parts));
    }

    const Parts& parts() const noexcept { return parts_; }
    std::uint32_t size() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0u); }
    std::size_t num_parts() const noexcept { return parts_.size(); }
    Parity parity() const noexcept { return parity_of(size() - num_parts()); }
    int sign() const noexcept { return sign_of(parity()); }

    /// part -> multiplicity
    std::map<std::uint32_t, std::uint32_t> multiplicities() const
    {
        std::map<std::uint32_t, std::uint32_t> m;
        for (auto p : parts_) ++m[p];
        return m;
    }

    std::string to_string() const { return join_parts(parts_); }

    friend auto operator<=>(const CycleType&, const CycleType&) = default;

private:
    Parts parts_;
};

/// |C| = N! / prod_j j^{m_j} m_j!
inline BigInt class_size(const CycleType& type)
{
    BigInt denom = 1;
    for (auto [part, mult] : type.multiplicities()) {
        BigInt jm = 1;
        for (std::uint32_t i = 0; i < mult; ++i) jm *= part;
        denom *= jm * factorial(mult);
    }
    return factorial(type.size()) / denom;
}

inline Parity class_parity(const CycleType& type) { return type.parity(); }

// ---------------------------------------------------------------------------
// GluingSpec

/// Polygon census {j -> n_j}: n_j discs with j sides each.
class GluingSpec {
public:
    explicit GluingSpec(std::map<std::uint32_t, std::uint64_t> counts) : counts_(std::move(counts))
    {
        if (counts_.empty()) throw InvalidInput("gluing spec needs at least one polygon");
        for (auto [j, c] : counts_) {
            if (j < 3) throw InvalidInput("polygon size j=" + std::to_string(j) + " violates j >= 3");
            if (c == 0) throw InvalidInput("polygon count for j=" + std::to_string(j) + " must be >= 1");
            sides_ += static_cast<std::uint64_t>(j) * c;
            faces_ += c;
        }
        if (sides_ % 2 != 0) throw InvalidInput("total side count N=" + std::to_string(sides_) + " is odd");
    }

    /// Grammar: jxCOUNT(,jxCOUNT)*, e.g. "3x40" or "3x2,4x1". Repeated j merge.
    static GluingSpec parse(std::string_view text)
    {
        std::map<std::uint32_t, std::uint64_t> counts;
        std::size_t pos = 0;
        if (text.empty()) throw InvalidInput("empty gluing spec");
        while (pos <= text.size()) {
            auto comma = text.find(',', pos);
            if (comma == std::string_view::npos) comma = text.size();
            auto term = text.substr(pos, comma - pos);
            while (!term.empty() && term.front() == ' ') term.remove_prefix(1);
            while (!term.empty() && term.back() == ' ') term.remove_suffix(1);
            auto x = term.find('x');
            std::uint32_t j = 0;
            std::uint64_t c = 0;
            bool ok = x != std::string_view::npos && x > 0 && x + 1 < term.size();
            if (ok) {
                auto [p1, e1] = std::from_chars(term.data(), term.data() + x, j);
                auto [p2, e2] = std::from_chars(term.data() + x + 1, term.data() + term.size(), c);
                ok = e1 == std::errc{} && p1 == term.data() + x && e2 == std::errc{} &&
                     p2 == term.data() + term.size();
            }
            if (!ok)
                throw InvalidInput("malformed term '" + std::string(term) + "': expected jxCOUNT, e.g. 3x2");
            if (j < 3) throw InvalidInput("term '" + std::string(term) + "': polygon size j=" + std::to_string(j) + " violates j >= 3");
            if (c == 0) throw InvalidInput("term '" + std::string(term) + "': zero count");
            counts[j] += c;
            pos = comma + 1;
        }
        return GluingSpec(std::move(counts));
    }

    const std::map<std::uint32_t, std::uint64_t>& counts() const noexcept { return counts_; }
    /// N = sum j n_j
    std::uint64_t sides() const noexcept { return sides_; }
    /// n = sum n_j
    std::uint64_t faces() const noexcept { return faces_; }
    std::uint32_t min_side() const noexcept { return counts_.begin()->first; }

    CycleType cycle_type() const
    {
        Parts parts;
        for (auto [j, c] : counts_) parts.insert(parts.end(), c, j);
        return CycleType(std::move(parts));
    }

    std::string to_string() const
    {
        std::string s;
        for (auto [j, c] : counts_) {
            if (!s.empty()) s += ',';
            s += std::to_string(j) + "x" + std::to_string(c);
        }
        return s;
    }

    friend bool operator==(const GluingSpec&, const GluingSpec&) = default;

private:
    std::map<std::uint32_t, std::uint64_t> counts_;
    std::uint64_t sides_ = 0;
    std::uint64_t faces_ = 0;
};

inline BigInt class_size(const GluingSpec& spec) { return class_size(spec.cycle_type()); }

/// Parity of every member of C_J: parity of N - n.
inline Parity class_parity(const GluingSpec& spec) { return parity_of(spec.sides() - spec.faces()); }

/// All gluing specs with exactly n sides (parts >= 3); empty for odd n.
inline std::vector<GluingSpec> all_gluing_specs(std::uint32_t n)
{
    std::vector<GluingSpec> out;
    if (n % 2 != 0) return out;
    for_each_partition(n, [&](const Parts& p) {
        std::map<std::uint32_t, std::uint64_t> counts;
        for (auto j : p) ++counts[j];
        out.emplace_back(std::move(counts));
    }, 3);
    return out;
}

// ---------------------------------------------------------------------------
// Permutation

class Permutation {
public:
    struct unchecked_t {};
    static constexpr unchecked_t unchecked{};

    static Permutation identity(std::size_t n)
    {
        std::vector<Label> img(n);
        std::iota(img.begin(), img.end(), 0u);
        return Permutation(unchecked, std::move(img));
    }

    /// images[i-1] = image of i, 1-based labels.
    static Permutation from_images(std::span<const Label> one_based)
    {
        std::vector<Label> img(one_based.begin(), one_based.end());
        for (auto& v : img) {
            if (v == 0) throw InvalidInput("labels are 1-based; got 0");
            --v;
        }
        return Permutation(std::move(img));
    }

    /// Disjoint cycles of 1-based labels on {1..n}; unlisted labels are fixed.
    static Permutation from_cycles(std::size_t n, const std::vector<Cycle>& cycles)
    {
        std::vector<Label> img(n);
        std::iota(img.begin(), img.end(), 0u);
        std::vector<bool> seen(n, false);
        for (const auto& c : cycles) {
            for (std::size_t k = 0; k < c.size(); ++k) {
                const Label a = c[k];
                const Label b = c[(k + 1) % c.size()];
                if (a == 0 || a > n || b == 0 || b > n)
                    throw InvalidInput("cycle label out of range 1.." + std::to_string(n));
                if (seen[a - 1]) throw InvalidInput("label " + std::to_string(a) + " appears twice in cycle notation");
                seen[a - 1] = true;
                img[a - 1] = b - 1;
            }
        }
        return Permutation(unchecked, std::move(img));
    }

    /// Cycle notation. "(1234)(5678)" reads each digit as a label; a cycle
    /// containing spaces or commas, "(10 11 12)" or "(1,2,3)", is split on them.
    /// n = 0 infers the ground set as {1..max label}.
    static Permutation parse_cycles(std::string_view text, std::size_t n = 0)
    {
        std::vector<Cycle> cycles;
        std::size_t pos = 0;
        Label max_label = 0;
        while (pos < text.size()) {
            const char ch = text[pos];
            if (ch == ' ' || ch == '\t') { ++pos; continue; }
            if (ch != '(') throw InvalidInput("cycle notation: expected '(' at offset " + std::to_string(pos));
            auto close = text.find(')', pos);
            if (close == std::string_view::npos) throw InvalidInput("cycle notation: unbalanced '('");
            auto body = text.substr(pos + 1, close - pos - 1);
            Cycle c;
            const bool separated = body.find_first_of(" ,") != std::string_view::npos;
            if (separated) {
                std::size_t i = 0;
                while (i < body.size()) {
                    while (i < body.size() && (body[i] == ' ' || body[i] == ',')) ++i;
                    std::size_t j = i;
                    while (j < body.size() && body[j] != ' ' && body[j] != ',') ++j;
                    if (j > i) {
                        Label v = 0;
                        auto [p, ec] = std::from_chars(body.data() + i, body.data() + j, v);
                        if (ec != std::errc{} || p != body.data() + j)
                            throw InvalidInput("cycle notation: bad label '" + std::string(body.substr(i, j - i)) + "'");
                        c.push_back(v);
                    }
                    i = j;
                }
            } else {
                for (char d : body) {
                    if (d < '0' || d > '9') throw InvalidInput(std::string("cycle notation: bad character '") + d + "'");
                    c.push_back(static_cast<Label>(d - '0'));
                }
            }
            for (auto v : c) max_label = std::max(max_label, v);
            if (!c.empty()) cycles.push_back(std::move(c));
            pos = close + 1;
        }
        if (n == 0) n = max_label;
        return from_cycles(n, cycles);
    }

    /// Trusted 0-based images; callers guarantee a bijection.
    Permutation(unchecked_t, std::vector<Label> zero_based) noexcept : images_(std::move(zero_based)) {}

    std::size_t size() const noexcept { return images_.size(); }

    /// 1-based application.
    Label operator()(Label i) const { return images_.at(i - 1) + 1; }

    std::span<const Label> zero_based() const noexcept { return images_; }

    /// 1-based images.
    std::vector<Label> images() const
    {
        std::vector<Label> out(images_);
        for (auto& v : out) ++v;
        return out;
    }

    Permutation inverse() const
    {
        std::vector<Label> inv(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Label>(i);
        return Permutation(unchecked, std::move(inv));
    }

    /// Canonical form: each cycle starts at its minimum, cycles sorted by minimum.
    std::vector<Cycle> cycles() const
    {
        std::vector<Cycle> out;
        std::vector<bool> seen(images_.size(), false);
        for (Label s = 0; s < images_.size(); ++s) {
            if (seen[s]) continue;
            Cycle c;
            for (Label x = s; !seen[x]; x = images_[x]) {
                seen[x] = true;
                c.push_back(x + 1);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    std::size_t cycle_count() const
    {
        std::size_t count = 0;
        std::vector<bool> seen(images_.size(), false);
        for (Label s = 0; s < images_.size(); ++s) {
            if (seen[s]) continue;
            ++count;
            for (Label x = s; !seen[x]; x = images_[x]) seen[x] = true;
        }
        return count;
    }

    CycleType cycle_type() const
    {
        Parts parts;
        std::vector<bool> seen(images_.size(), false);
        for (Label s = 0; s < images_.size(); ++s) {
            if (seen[s]) continue;
            std::uint32_t len = 0;
            for (Label x = s; !seen[x]; x = images_[x]) { seen[x] = true; ++len; }
            parts.push_back(len);
        }
        return CycleType(std::move(parts));
    }

    Parity parity() const { return parity_of(size() - cycle_count()); }
    int sign() const { return sign_of(parity()); }

    bool is_fixed_point_free_involution() const noexcept
    {
        for (Label i = 0; i < images_.size(); ++i)
            if (images_[i] == i || images_[images_[i]] != i) return false;
        return true;
    }

    /// Cycle notation with fixed points omitted; "()" for the identity.
    /// Labels above 9 switch to space-separated cycles so the text parses back.
    std::string to_string() const
    {
        const bool spaced = images_.size() > 9;
        std::string s;
        for (const auto& c : cycles()) {
            if (c.size() == 1) continue;
            s += '(';
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (spaced && k) s += ' ';
                s += std::to_string(c[k]);
            }
            s += ')';
        }
        return s.empty() ? "()" : s;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    explicit Permutation(std::vector<Label> zero_based) : images_(std::move(zero_based))
    {
        std::vector<bool> hit(images_.size(), false);
        for (auto v : images_) {
            if (v >= images_.size() || hit[v]) throw InvalidInput("images do not form a bijection");
            hit[v] = true;
        }
    }

    std::vector<Label> images_;
};

/// result(i) = p(q(i)).
inline Permutation compose(const Permutation& p, const Permutation& q)
{
    if (p.size() != q.size())
        throw InvalidInput("compose: size mismatch " + std::to_string(p.size()) + " vs " + std::to_string(q.size()));
    auto pi = p.zero_based();
    auto qi = q.zero_based();
    std::vector<Label> r(pi.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = pi[qi[i]];
    return Permutation(Permutation::unchecked, std::move(r));
}

inline std::vector<Cycle> cycle_decomposition(const Permutation& p) { return p.cycles(); }
inline int sign(const Permutation& p) { return p.sign(); }

/// The member of C_J whose cycles are runs of consecutive labels, polygons
/// listed by increasing j: for 4x2, (1234)(5678).
inline Permutation canonical_representative(const GluingSpec& spec)
{
    std::vector<Label> img(spec.sides());
    Label start = 0;
    for (auto [j, c] : spec.counts()) {
        for (std::uint64_t k = 0; k < c; ++k) {
            for (Label t = 0; t < j; ++t) img[start + t] = start + (t + 1) % j;
            start += j;
        }
    }
    return Permutation(Permutation::unchecked, std::move(img));
}

/// Uniform fixed-point-free involution on {1..n}, n even.
inline Permutation sample_matching(std::size_t n, RngStream& rng)
{
    if (n < 2 || n % 2 != 0) throw InvalidInput("sample_matching: N must be even and >= 2, got " + std::to_string(n));
    std::vector<Label> order(n);
    std::iota(order.begin(), order.end(), 0u);
    shuffle(order.begin(), order.end(), rng);
    std::vector<Label> img(n);
    for (std::size_t k = 0; k < n; k += 2) {
        img[order[k]] = order[k + 1];
        img[order[k + 1]] = order[k];
    }
    return Permutation(Permutation::unchecked, std::move(img));
}

/// Uniform member of C_J: one shuffle of {1..N} read off into consecutive
/// cycle slots. Each class member arises from exactly prod j^{n_j} n_j!
/// arrangements.
inline Permutation sample_class(const GluingSpec& spec, RngStream& rng)
{
    const std::size_t n = spec.sides();
    std::vector<Label> order(n);
    std::iota(order.begin(), order.end(), 0u);
    shuffle(order.begin(), order.end(), rng);
    std::vector<Label> img(n);
    std::size_t start = 0;
    for (auto [j, c] : spec.counts()) {
        for (std::uint64_t k = 0; k < c; ++k) {
            for (std::size_t t = 0; t < j; ++t) img[order[start + t]] = order[start + (t + 1) % j];
            start += j;
        }
    }
    return Permutation(Permutation::unchecked, std::move(img));
}

} // namespace randsurf
