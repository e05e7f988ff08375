#pragma once

// Topology of the oriented surface glued from polygons.
//
// alpha lists the sides of each directed polygon in cyclic order, beta pairs
// the sides that are glued, and gamma = alpha*beta walks the sides around a
// vertex. Then V = #cycles(gamma), E = N/2, F = #cycles(alpha), and the
// connected components are the orbits of <alpha, beta>.

#include "randsurf/perm.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <vector>

namespace randsurf {

struct ComponentStats {
    std::uint64_t v = 0;
    std::uint64_t e = 0;
    std::uint64_t f = 0;
    std::int64_t chi = 0;
    std::uint64_t genus = 0;
    /// Orbit as sorted 1-based labels; empty unless orbits were requested.
    std::vector<Label> edge_labels;
};

struct SurfaceStats {
    std::uint64_t N = 0;
    std::uint64_t V = 0;
    std::uint64_t E = 0;
    std::uint64_t F = 0;
    std::int64_t chi = 0;
    /// Ordered by smallest label in the orbit.
    std::vector<ComponentStats> components;
    CycleType gamma_type;
    /// Retained only in verbose mode.
    std::optional<Permutation> alpha, beta, gamma;

    bool connected() const noexcept { return components.size() == 1; }
};

struct GlueOptions {
    bool record_orbits = true;
    bool verbose = false;
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1)
    {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    Label find(Label x) noexcept
    {
        Label root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            const Label next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    void unite(Label a, Label b) noexcept
    {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<Label> parent_;
    std::vector<Label> size_;
};

} // namespace detail

/// Builds the surface for (alpha, beta). alpha must have every cycle of
/// length >= 3, beta must be a fixed-point-free involution of the same size.
inline SurfaceStats glue(const Permutation& alpha, const Permutation& beta, GlueOptions opts = {})
{
    const std::size_t n = alpha.size();
    if (beta.size() != n)
        throw InvalidInput("glue: size mismatch " + std::to_string(n) + " vs " + std::to_string(beta.size()));
    if (!beta.is_fixed_point_free_involution())
        throw InvalidInput("glue: beta must be a fixed-point-free involution");

    auto a = alpha.zero_based();
    auto b = beta.zero_based();
    std::vector<Label> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = a[b[i]];

    detail::UnionFind uf(n);
    for (Label i = 0; i < n; ++i) {
        uf.unite(i, a[i]);
        uf.unite(i, b[i]);
    }

    // Component index by root, assigned in order of smallest label.
    std::vector<Label> comp_of_root(n, ~Label{0});
    std::vector<Label> comp(n);
    SurfaceStats s;
    for (Label i = 0; i < n; ++i) {
        const Label r = uf.find(i);
        if (comp_of_root[r] == ~Label{0}) {
            comp_of_root[r] = static_cast<Label>(s.components.size());
            s.components.emplace_back();
        }
        comp[i] = comp_of_root[r];
        auto& c = s.components[comp[i]];
        ++c.e; // halved below
        if (opts.record_orbits) c.edge_labels.push_back(i + 1);
    }

    std::vector<bool> seen(n, false);
    for (Label i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::uint32_t len = 0;
        for (Label x = i; !seen[x]; x = a[x]) { seen[x] = true; ++len; }
        if (len < 3) throw InvalidInput("glue: alpha has a cycle of length " + std::to_string(len) + " (polygons need >= 3 sides)");
        ++s.components[comp[i]].f;
    }

    std::fill(seen.begin(), seen.end(), false);
    Parts gamma_parts;
    for (Label i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::uint32_t len = 0;
        for (Label x = i; !seen[x]; x = g[x]) { seen[x] = true; ++len; }
        gamma_parts.push_back(len);
        ++s.components[comp[i]].v;
    }

    s.N = n;
    s.E = n / 2;
    for (auto& c : s.components) {
        c.e /= 2;
        c.chi = static_cast<std::int64_t>(c.v) - static_cast<std::int64_t>(c.e) + static_cast<std::int64_t>(c.f);
        c.genus = static_cast<std::uint64_t>(1 - c.chi / 2);
        s.V += c.v;
        s.F += c.f;
    }
    s.chi = static_cast<std::int64_t>(s.V) - static_cast<std::int64_t>(s.E) + static_cast<std::int64_t>(s.F);
    s.gamma_type = CycleType(std::move(gamma_parts));
    if (opts.verbose) {
        s.alpha = alpha;
        s.beta = beta;
        s.gamma = Permutation(Permutation::unchecked, std::move(g));
    }
    return s;
}

/// The coset of A_N that gamma = alpha*beta lands in, for any alpha in C_J and
/// beta in C_2: even iff N - n and N/2 have the same parity.
inline Parity predict_coset(const GluingSpec& spec)
{
    const auto alpha_parity = class_parity(spec);
    const auto beta_parity = parity_of(spec.sides() / 2);
    return alpha_parity == beta_parity ? Parity::even : Parity::odd;
}

/// 1 - chi/2 on a connected surface; undefined otherwise.
inline std::optional<std::uint64_t> genus_of(const SurfaceStats& s)
{
    if (!s.connected()) return std::nullopt;
    return static_cast<std::uint64_t>(1 - s.chi / 2);
}

inline nlohmann::ordered_json to_json(const SurfaceStats& s)
{
    nlohmann::ordered_json j;
    j["N"] = s.N;
    j["V"] = s.V;
    j["E"] = s.E;
    j["F"] = s.F;
    j["chi"] = s.chi;
    auto comps = nlohmann::ordered_json::array();
    for (const auto& c : s.components)
        comps.push_back({{"v", c.v}, {"e", c.e}, {"f", c.f}, {"genus", c.genus}});
    j["components"] = std::move(comps);
    j["connected"] = s.connected();
    if (auto g = genus_of(s)) j["genus"] = *g;
    else j["genus"] = nullptr;
    if (s.gamma) {
        j["alpha"] = s.alpha->to_string();
        j["beta"] = s.beta->to_string();
        j["gamma"] = s.gamma->to_string();
    }
    return j;
}

} // namespace randsurf
