#pragma once

// The acceptance criteria, each a self-contained check with its tolerance
// pinned here. Shared by the acceptance test binary and `randsurf verify`.

#include "randsurf/randsurf.hpp"
#include "randsurf_verify/oracles.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace randsurf::verify {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0;
};

struct CriteriaOptions {
    unsigned workers = 8;
    /// Skip the Monte Carlo criteria (reported as skipped, not passed).
    bool quick = false;
};

struct Criterion {
    int id;
    std::string title;
    bool monte_carlo;
    std::function<CriterionResult(const CriteriaOptions&)> run;
};

namespace detail {

class Check {
public:
    explicit Check(std::string title) : title_(std::move(title)) {}

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok_ = false;
            if (!failures_.empty()) failures_ += "; ";
            failures_ += what;
        }
    }

    void note(const std::string& s)
    {
        if (!notes_.empty()) notes_ += "; ";
        notes_ += s;
    }

    CriterionResult finish(int id, double seconds) const
    {
        CriterionResult r;
        r.id = id;
        r.title = title_;
        r.passed = ok_;
        r.seconds = seconds;
        r.detail = ok_ ? notes_ : "FAILED: " + failures_ + (notes_.empty() ? "" : " | " + notes_);
        return r;
    }

    bool ok() const { return ok_; }

private:
    std::string title_;
    bool ok_ = true;
    std::string failures_;
    std::string notes_;
};

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline std::string fmt(double v, int prec = 6)
{
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

} // namespace detail

// 1. The three gluings of two squares.
inline CriterionResult criterion_worked_examples(const CriteriaOptions&)
{
    detail::Check ck("two squares glue into a sphere, a torus and two tori");
    struct Case { const char* beta; const char* gamma; std::int64_t chi; std::size_t comps; };
    const Case cases[] = {
        {"(15)(28)(37)(46)", "(16)(25)(38)(47)", 2, 1},
        {"(15)(24)(37)(68)", "(1652)(3874)", 0, 1},
        {"(13)(24)(57)(68)", "(1432)(5876)", 0, 2},
    };
    const auto t0 = detail::Clock::now();
    std::vector<SurfaceStats> out;
    const auto alpha = Permutation::parse_cycles("(1234)(5678)");
    for (const auto& c : cases) out.push_back(glue(alpha, Permutation::parse_cycles(c.beta), {.verbose = true}));
    const double elapsed = detail::seconds_since(t0);

    for (std::size_t i = 0; i < 3; ++i) {
        const auto& s = out[i];
        const std::string tag = "gluing " + std::to_string(i + 1);
        ck.expect(s.gamma->to_string() == cases[i].gamma, tag + ": gamma " + s.gamma->to_string());
        ck.expect(s.chi == cases[i].chi, tag + ": chi " + std::to_string(s.chi));
        ck.expect(s.components.size() == cases[i].comps, tag + ": components " + std::to_string(s.components.size()));
        ck.expect(s.E == 4 && s.F == 2, tag + ": E/F");
    }
    ck.expect(out[0].V == 4 && genus_of(out[0]) == 0u, "sphere: V=4, genus 0");
    ck.expect(out[1].V == 2 && genus_of(out[1]) == 1u, "torus: V=2, genus 1");
    ck.expect(!genus_of(out[2]).has_value(), "two tori: genus undefined");
    for (const auto& c : out[2].components)
        ck.expect(c.v == 1 && c.e == 2 && c.f == 1 && c.chi == 0 && c.genus == 1, "two tori: component (1,2,1) genus 1");
    ck.expect(elapsed < 1e-3, "runtime " + detail::fmt(elapsed) + " s >= 1 ms");
    ck.note("gamma = " + out[0].gamma->to_string() + ", " + out[1].gamma->to_string() + ", " + out[2].gamma->to_string());
    return ck.finish(1, elapsed);
}

// 2. Character table integrity.
inline CriterionResult criterion_character_integrity(const CriteriaOptions& opt)
{
    detail::Check ck("character table integrity: Plancherel, orthogonality, rim-hook bound");
    const auto t0 = detail::Clock::now();
    for (std::uint32_t n = 1; n <= 10; ++n) {
        BigInt s = 0;
        for (const auto& p : partitions(n)) s += p.dim * p.dim;
        ck.expect(s == factorial(n), "sum f^2 != N! at N=" + std::to_string(n));
    }
    std::size_t bound_checks = 0;
    for (std::uint32_t n = 1; n <= 8; ++n) {
        const auto& t = character_table(n, opt.workers);
        const BigInt nf = factorial(n);
        const std::size_t k = t.rows.size();
        std::vector<BigInt> csize;
        for (const auto& mu : t.cols) csize.push_back(class_size(mu));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                BigInt row = 0, col = 0;
                for (std::size_t c = 0; c < k; ++c) {
                    row += csize[c] * t.values[a][c] * t.values[b][c];
                    col += t.values[c][a] * t.values[c][b];
                }
                ck.expect(row == (a == b ? nf : BigInt(0)), "row orthogonality at N=" + std::to_string(n));
                ck.expect(col == (a == b ? nf / csize[a] : BigInt(0)), "column orthogonality at N=" + std::to_string(n));
            }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t c = 0; c < k; ++c) {
                BigInt v = t.values[a][c];
                if (v < 0) v = -v;
                const auto g = oracle::rim_hook_count(t.rows[a].parts, t.cols[c].parts());
                ck.expect(v <= g, "|chi| > rim-hook count for " + t.rows[a].to_string() + " at " + t.cols[c].to_string());
                ++bound_checks;
            }
    }
    const double elapsed = detail::seconds_since(t0);
    ck.expect(elapsed < 30.0, "runtime " + detail::fmt(elapsed) + " s >= 30 s");
    ck.note(std::to_string(bound_checks) + " rim-hook bound checks");
    return ck.finish(2, elapsed);
}

// 3. Character convolution equals brute-force enumeration.
inline CriterionResult criterion_frobenius_oracle(const CriteriaOptions& opt)
{
    detail::Check ck("character convolution law equals enumerated law of gamma");
    const auto t0 = detail::Clock::now();
    const char* specs[] = {"4x1", "3x2", "4x2", "3x2,6x1", "4x1,4x1"};
    for (const char* text : specs) {
        const auto spec = GluingSpec::parse(text);
        const auto enumerated = exact_gamma_class_distribution(spec, {.workers = opt.workers});
        const auto frob = frobenius_class_distribution(spec);
        ck.expect(enumerated.support() == frob.support(), std::string("mismatch for ") + text);
        ck.expect(enumerated.total() == 1 && frob.total() == 1, std::string("mass != 1 for ") + text);
        ck.note(std::string(text) + ": " + std::to_string(frob.support().size()) + " classes");
    }
    const double elapsed = detail::seconds_since(t0);
    ck.expect(elapsed < 60.0, "runtime " + detail::fmt(elapsed) + " s >= 60 s");
    return ck.finish(3, elapsed);
}

// 4. Exact TV to the uniform coset law is below the character bound.
inline CriterionResult criterion_bound_chain(const CriteriaOptions& opt)
{
    detail::Check ck("exact TV <= character bound for 5 <= N <= 10");
    const auto t0 = detail::Clock::now();
    std::size_t checked = 0;
    double worst = 0;
    for (std::uint32_t n = 6; n <= 10; n += 2) {
        for (const auto& spec : all_gluing_specs(n)) {
            const Rational tv = exact_tv_to_uniform_coset(spec, {.workers = opt.workers});
            const auto ds = ds_bound(spec);
            ck.expect(tv * tv <= ds.squared, "TV^2 > bound^2 for " + spec.to_string());
            if (ds.value > 0) worst = std::max(worst, to_double(tv) / ds.value);
            ++checked;
        }
    }
    const auto s4 = GluingSpec::parse("4x1");
    const Rational tv4 = exact_tv_to_uniform_coset(s4);
    const auto ds4 = ds_bound(s4);
    ck.expect(tv4 == Rational(1, 6), "N=4: TV = " + to_string(tv4));
    ck.expect(ds4.squared == Rational(1, 18), "N=4: bound^2 = " + to_string(ds4.squared));
    ck.expect(tv4 * tv4 <= ds4.squared, "N=4: TV > bound");
    ck.note(std::to_string(checked) + " specs; max TV/bound " + detail::fmt(worst, 4) + "; N=4 TV=1/6, bound=sqrt(1/18)=" +
            detail::fmt(ds4.value, 4));
    return ck.finish(4, detail::seconds_since(t0));
}

// 5. Connectivity: exact probabilities and the union bound.
inline CriterionResult criterion_connectivity(const CriteriaOptions& opt)
{
    detail::Check ck("connectivity: exact P(X_N > 1) and union bound");
    const auto t0 = detail::Clock::now();
    const auto s42 = GluingSpec::parse("4x2");
    const Rational disc = 1 - exact_connectivity_probability(s42, {.workers = opt.workers});
    const auto ub = union_bound(s42);
    ck.expect(disc == Rational(3, 35), "4x2: P(X>1) = " + to_string(disc));
    ck.expect(ub.total == Rational(6, 35), "4x2: union bound = " + to_string(ub.total));
    ck.expect(ub.total >= disc, "4x2: union bound below exact");
    const auto s32 = GluingSpec::parse("3x2");
    ck.expect(exact_connectivity_probability(s32) == 1, "3x2: not always connected");
    const auto ub32 = union_bound(s32);
    ck.expect(ub32.terms.empty() && ub32.total == 0, "3x2: union bound not empty");
    ck.note("4x2: P(X>1)=" + to_string(disc) + " <= " + to_string(ub.total));
    return ck.finish(5, detail::seconds_since(t0));
}

// 6. Connectivity frequency for triangles at N = 300 against 1 - 5/(6N).
inline CriterionResult criterion_triangle_connectivity(const CriteriaOptions& opt)
{
    detail::Check ck("triangles 3x100: P(connected) = 1 - 5/(6N) within 3 pooled stderr");
    const auto t0 = detail::Clock::now();
    const auto spec = GluingSpec::parse("3x100");
    std::uint64_t connected = 0, trials = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto s = run_experiment({spec, 100000, seed, opt.workers, false});
        connected += s.connected;
        trials += s.trials;
    }
    const double p = static_cast<double>(connected) / static_cast<double>(trials);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(trials));
    const double target = 1.0 - 5.0 / 1800.0;
    const double elapsed = detail::seconds_since(t0);
    ck.expect(std::abs(p - target) <= 3 * se, "|p_hat - target| = " + detail::fmt(std::abs(p - target)) + " > 3*se = " + detail::fmt(3 * se));
    ck.expect(elapsed < 60.0, "runtime " + detail::fmt(elapsed) + " s >= 60 s");
    ck.note("p_hat=" + detail::fmt(p, 8) + " target=" + detail::fmt(target, 8) + " se=" + detail::fmt(se, 3) +
            " over " + std::to_string(trials) + " trials");
    return ck.finish(6, elapsed);
}

// 7. Cycle-count laws.
inline CriterionResult criterion_cycle_laws(const CriteriaOptions&)
{
    detail::Check ck("cycle laws: even/odd interlacing and Stirling row sums");
    const auto t0 = detail::Clock::now();
    ck.expect(cycle_law(4, CycleParity::even).pmf[2] == Rational(11, 12), "P(C_4^e = 2) != 11/12");
    for (std::uint32_t n = 2; n <= 12; ++n) {
        const auto e = cycle_law(n, CycleParity::even);
        const auto o = cycle_law(n, CycleParity::odd);
        const auto a = cycle_law(n, CycleParity::all);
        for (std::uint32_t l = 0; l <= n; ++l) {
            ck.expect(!(e.pmf[l] != 0 && o.pmf[l] != 0), "supports overlap at N=" + std::to_string(n));
            ck.expect((l == 0) == (e.pmf[l] == 0 && o.pmf[l] == 0), "support union != {1..N} at N=" + std::to_string(n));
            ck.expect((e.pmf[l] + o.pmf[l]) / 2 == a.pmf[l], "mixture != unrestricted at N=" + std::to_string(n));
        }
    }
    // Rows for N = 1..200, grown by the recurrence and summed exactly.
    for (std::uint32_t n = 1; n <= 200; ++n) {
        const StirlingTable t(n, Backend::exact);
        BigInt s = 0;
        for (const auto& v : t.exact()) s += v;
        ck.expect(s == factorial(n), "Stirling row sum != N! at N=" + std::to_string(n));
    }
    return ck.finish(7, detail::seconds_since(t0));
}

/// Largest |P(C_N = l) / gaussian(l) - 1| over integer l with |l - E| <= sd.
inline double lclt_worst_deviation(std::uint32_t n)
{
    const auto pmf = poisson_binomial_pmf(n);
    const auto [mean, var] = mean_var_CN(n);
    const double sd = std::sqrt(var);
    double worst = 0;
    for (auto l = static_cast<std::uint32_t>(std::ceil(mean - sd)); l <= mean + sd; ++l)
        worst = std::max(worst, std::abs(pmf[l] / lclt_gaussian(n, l) - 1.0));
    return worst;
}

// 8. Local Gaussian approximation of the cycle-count law.
inline CriterionResult criterion_lclt(const CriteriaOptions&)
{
    detail::Check ck("local Gaussian approximation of P(C_N = l) at N = 2000");
    const auto t0 = detail::Clock::now();
    const double tol = 2.0 / std::sqrt(std::log(2000.0));
    const double w2000 = lclt_worst_deviation(2000);
    const double w200 = lclt_worst_deviation(200);
    const double elapsed = detail::seconds_since(t0);
    ck.expect(w2000 <= tol, "worst deviation " + detail::fmt(w2000) + " > " + detail::fmt(tol));
    ck.expect(w2000 < w200, "deviation did not shrink: N=2000 " + detail::fmt(w2000) + " vs N=200 " + detail::fmt(w200));
    ck.expect(elapsed < 10.0, "runtime " + detail::fmt(elapsed) + " s >= 10 s");
    ck.note("worst |ratio-1|: N=200 " + detail::fmt(w200, 4) + ", N=2000 " + detail::fmt(w2000, 4) + " (band " +
            detail::fmt(tol, 4) + ")");
    return ck.finish(8, elapsed);
}

// 9. sign(gamma) always lands in the predicted coset.
inline CriterionResult criterion_coset(const CriteriaOptions& opt)
{
    detail::Check ck("sign(gamma) matches the predicted coset in every trial");
    const auto t0 = detail::Clock::now();
    const char* specs[] = {"3x2", "4x1", "4x2", "3x2,4x1", "5x2"};
    std::uint64_t seed = 900;
    for (const char* text : specs) {
        const auto spec = GluingSpec::parse(text);
        const auto s = run_experiment({spec, 100000, ++seed, opt.workers, false});
        ck.expect(s.coset_agreement == s.trials, std::string(text) + ": " + std::to_string(s.trials - s.coset_agreement) + " disagreements");
        ck.note(std::string(text) + " -> " + std::string(to_string(predict_coset(spec))));
    }
    return ck.finish(9, detail::seconds_since(t0));
}

// 10. Empirical vertex law for one square.
inline CriterionResult criterion_vertex_law(const CriteriaOptions& opt)
{
    detail::Check ck("4x1: empirical law of V within TV 0.005 of {3: 2/3, 1: 1/3}");
    const auto t0 = detail::Clock::now();
    const auto spec = GluingSpec::parse("4x1");
    const auto exact = exact_vertex_distribution(spec);
    const auto s = run_experiment({spec, 1000000, 20240610, opt.workers, false});
    const double tv = empirical_tv(s, exact);
    const double elapsed = detail::seconds_since(t0);
    ck.expect(exact.prob(3) == Rational(2, 3) && exact.prob(1) == Rational(1, 3), "exact law is not {3: 2/3, 1: 1/3}");
    ck.expect(tv <= 0.005, "TV " + detail::fmt(tv) + " > 0.005");
    ck.expect(elapsed < 10.0, "runtime " + detail::fmt(elapsed) + " s >= 10 s");
    ck.note("TV=" + detail::fmt(tv, 4));
    return ck.finish(10, elapsed);
}

// 11. Gaussian behaviour of V at N = 3000.
inline CriterionResult criterion_gaussian_scale(const CriteriaOptions& opt)
{
    detail::Check ck("3x1000: mean of V near H_N, variance in [0.5, 1.5] ln N, admissible parity only");
    const auto t0 = detail::Clock::now();
    const auto spec = GluingSpec::parse("3x1000");
    const auto s = run_experiment({spec, 100000, 3000, opt.workers, false});
    const auto r = gaussian_fit_check(s, spec.sides());
    const double elapsed = detail::seconds_since(t0);
    const double band = 3 * r.stderr_mean;
    ck.expect(std::abs(r.mean - r.harmonic) <= band,
              "|mean - H_N| = " + detail::fmt(std::abs(r.mean - r.harmonic)) + " > 3*stderr = " + detail::fmt(band));
    ck.expect(r.var >= 0.5 * r.ln_n && r.var <= 1.5 * r.ln_n, "variance " + detail::fmt(r.var) + " outside [0.5, 1.5] ln N");
    ck.expect(r.parity_violations == 0, std::to_string(r.parity_violations) + " parity violations");
    ck.expect(elapsed < 120.0, "runtime " + detail::fmt(elapsed) + " s >= 120 s");
    ck.note("mean=" + detail::fmt(r.mean, 5) + " H_N=" + detail::fmt(r.harmonic, 5) + " stderr=" + detail::fmt(r.stderr_mean, 3) +
            " var=" + detail::fmt(r.var, 4) + " ln N=" + detail::fmt(r.ln_n, 4));
    return ck.finish(11, elapsed);
}

inline const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all = {
        {1, "worked examples", false, criterion_worked_examples},
        {2, "character integrity", false, criterion_character_integrity},
        {3, "character convolution oracle", false, criterion_frobenius_oracle},
        {4, "bound chain", false, criterion_bound_chain},
        {5, "connectivity", false, criterion_connectivity},
        {6, "triangle connectivity benchmark", true, criterion_triangle_connectivity},
        {7, "cycle laws", false, criterion_cycle_laws},
        {8, "local Gaussian approximation", false, criterion_lclt},
        {9, "coset invariant", true, criterion_coset},
        {10, "vertex-law convergence", true, criterion_vertex_law},
        {11, "Gaussian at scale", true, criterion_gaussian_scale},
    };
    return all;
}

inline CriterionResult run_criterion(const Criterion& c, const CriteriaOptions& opt)
{
    if (opt.quick && c.monte_carlo) {
        CriterionResult r;
        r.id = c.id;
        r.title = c.title;
        r.skipped = true;
        r.passed = true;
        r.detail = "skipped (--quick)";
        return r;
    }
    try {
        return c.run(opt);
    } catch (const std::exception& e) {
        CriterionResult r;
        r.id = c.id;
        r.title = c.title;
        r.detail = std::string("FAILED: exception: ") + e.what();
        return r;
    }
}

inline std::string format_line(const CriterionResult& r)
{
    std::ostringstream os;
    os << (r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL") << "  AC" << r.id << "  " << r.title << "  ["
       << detail::fmt(r.seconds, 3) << " s]  " << r.detail;
    return os.str();
}

} // namespace randsurf::verify
