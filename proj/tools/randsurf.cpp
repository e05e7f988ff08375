// randsurf: command-line front end for the random-surface library.
//
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include "csv.hpp"

#include "randsurf/randsurf.hpp"
#include "randsurf_verify/criteria.hpp"
#include "randsurf_verify/manifest.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace randsurf;
using Json = nlohmann::ordered_json;

unsigned default_workers()
{
    if (const char* env = std::getenv("RANDSURF_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

/// JSON integers beyond 2^53 go out as decimal strings.
Json json_integer(const BigInt& v)
{
    static const BigInt limit = BigInt(1) << 53;
    if (v < limit && v > -limit) return v.convert_to<std::int64_t>();
    return v.str();
}

std::ostream* open_output(const std::string& path, std::ofstream& file)
{
    if (path.empty() || path == "-") return &std::cout;
    file.open(path);
    if (!file) throw InvalidInput("cannot write " + path);
    return &file;
}

void print_dist_text(const TypeDist& d)
{
    for (const auto& [k, p] : d.support()) std::cout << k.to_string() << '\t' << to_string(p) << '\n';
}

void print_dist_text(const CountDist& d)
{
    for (const auto& [k, p] : d.support()) std::cout << k << '\t' << to_string(p) << '\n';
}

struct Options {
    std::string spec, alpha, beta, lambda, mu, parity = "all", format = "text", backend = "exact", out, hist, manifest, bin;
    std::uint64_t n = 0, trials = 1000, seed = 0, count = 1;
    double ell = 0, nprime = 0, y = 0;
    unsigned workers = default_workers();
    std::uint32_t cap = 0;
    bool verbose = false, quick = false, record_components = false;
    std::vector<int> criteria;
};

int cmd_glue(const Options& o)
{
    const auto alpha = Permutation::parse_cycles(o.alpha);
    const auto beta = Permutation::parse_cycles(o.beta, alpha.size());
    const auto s = glue(alpha, beta, {.record_orbits = false, .verbose = o.verbose});
    std::cout << to_json(s).dump() << '\n';
    return 0;
}

int cmd_sample(const Options& o)
{
    const auto spec = GluingSpec::parse(o.spec);
    RngStream rng(o.seed);
    for (std::uint64_t k = 0; k < o.count; ++k) {
        const auto alpha = sample_class(spec, rng);
        const auto beta = sample_matching(spec.sides(), rng);
        auto j = to_json(glue(alpha, beta, {.record_orbits = false, .verbose = true}));
        std::cout << j.dump() << '\n';
    }
    return 0;
}

EnumerationConfig enum_config(const Options& o)
{
    EnumerationConfig c;
    if (o.cap) c.cap = o.cap;
    c.workers = o.workers;
    return c;
}

int cmd_exact(const std::string& what, const Options& o)
{
    const auto cfg = enum_config(o);
    const bool json = o.format == "json";
    if (what == "matchings") {
        if (o.n == 0) throw InvalidInput("exact matchings needs --n");
        std::uint64_t count = 0;
        for_each_matching(o.n, [&](std::span<const Label> m) {
            ++count;
            if (o.verbose) std::cout << Permutation(Permutation::unchecked, {m.begin(), m.end()}).to_string() << '\n';
        }, cfg.cap);
        std::cout << count << '\n';
        return 0;
    }
    const auto spec = GluingSpec::parse(o.spec);
    if (what == "gamma") {
        const auto d = exact_gamma_class_distribution(spec, cfg);
        if (json) std::cout << to_json(d).dump() << '\n';
        else print_dist_text(d);
    } else if (what == "vertex") {
        const auto d = exact_vertex_distribution(spec, cfg);
        if (json) std::cout << to_json(d).dump() << '\n';
        else print_dist_text(d);
    } else if (what == "tv") {
        std::cout << to_string(exact_tv_to_uniform_coset(spec, cfg)) << '\n';
    } else if (what == "tvlaw") {
        std::cout << to_string(exact_tv_vertexlaw_to_cyclelaw(spec, cfg)) << '\n';
    } else if (what == "connect") {
        std::cout << to_string(exact_connectivity_probability(spec, cfg)) << '\n';
    } else {
        throw InvalidInput("unknown exact query '" + what + "'");
    }
    return 0;
}

int cmd_characters(const std::string& what, const Options& o)
{
    const std::uint32_t cap = o.cap ? o.cap : default_character_cap;
    if (what == "table") {
        if (o.n == 0) throw InvalidInput("characters table needs --n");
        const auto& t = character_table(static_cast<std::uint32_t>(o.n), o.workers, cap);
        if (o.format == "csv") {
            cli::csv_row(std::cout, {"lambda", "mu", "chi"});
            for (std::size_t r = 0; r < t.rows.size(); ++r)
                for (std::size_t c = 0; c < t.cols.size(); ++c)
                    cli::csv_row(std::cout, {t.rows[r].to_string(), t.cols[c].to_string(), t.values[r][c].str()});
        } else {
            auto arr = Json::array();
            for (std::size_t r = 0; r < t.rows.size(); ++r)
                for (std::size_t c = 0; c < t.cols.size(); ++c)
                    arr.push_back({{"lambda", t.rows[r].to_string()}, {"mu", t.cols[c].to_string()}, {"chi", json_integer(t.values[r][c])}});
            std::cout << arr.dump() << '\n';
        }
    } else if (what == "dim") {
        std::cout << PartitionData::parse(o.lambda).dim << '\n';
    } else if (what == "chi") {
        const auto lambda = PartitionData::parse(o.lambda);
        std::cout << mn_character(lambda, CycleType::parse(o.mu)).value << '\n';
    } else if (what == "ds") {
        const auto b = ds_bound(GluingSpec::parse(o.spec), cap);
        Json j{{"squared", to_string(b.squared)}, {"value", b.value}};
        std::cout << j.dump() << '\n';
    } else if (what == "frob") {
        const auto spec = GluingSpec::parse(o.spec);
        if (!o.mu.empty()) {
            std::cout << to_string(frobenius_class_prob(spec, CycleType::parse(o.mu), cap)) << '\n';
        } else {
            const auto d = frobenius_class_distribution(spec, cap);
            if (o.format == "json") std::cout << to_json(d).dump() << '\n';
            else print_dist_text(d);
        }
    } else if (what == "ratio") {
        std::cout << explore_character_ratio(PartitionData::parse(o.lambda), CycleType::parse(o.mu)) << '\n';
    } else {
        throw InvalidInput("unknown characters query '" + what + "'");
    }
    return 0;
}

int cmd_cyclestats(const std::string& what, const Options& o)
{
    if (o.n == 0) throw InvalidInput("cyclestats needs --n");
    const auto n = static_cast<std::uint32_t>(o.n);
    if (what == "law") {
        const auto parity = parse_cycle_parity(o.parity);
        if (o.backend == "exact") {
            const auto law = cycle_law(n, parity);
            if (o.format == "csv") {
                cli::csv_row(std::cout, {"ell", "prob_num", "prob_den"});
                for (std::uint32_t l = 0; l <= n; ++l)
                    cli::csv_row(std::cout, {std::to_string(l), boost::multiprecision::numerator(law.pmf[l]).str(),
                                             boost::multiprecision::denominator(law.pmf[l]).str()});
            } else {
                for (std::uint32_t l = 0; l <= n; ++l) std::cout << l << '\t' << to_string(law.pmf[l]) << '\n';
            }
        } else if (o.backend == "float") {
            const auto pmf = cycle_law_float(n, parity);
            std::ostringstream num;
            num.precision(17);
            if (o.format == "csv") cli::csv_row(std::cout, {"ell", "prob"});
            for (std::uint32_t l = 0; l <= n; ++l) {
                num.str("");
                num << pmf[l];
                if (o.format == "csv") cli::csv_row(std::cout, {std::to_string(l), num.str()});
                else std::cout << l << '\t' << num.str() << '\n';
            }
        } else {
            throw InvalidInput("backend must be exact or float");
        }
    } else if (what == "stirling") {
        if (o.backend == "float") {
            // ln s(N, l); s(N, 0) = 0 prints as -inf
            const StirlingTable t(n, Backend::log_float);
            std::ostringstream v;
            v.precision(17);
            if (o.format == "csv") cli::csv_row(std::cout, {"ell", "ln_s"});
            for (std::uint32_t l = 0; l <= n; ++l) {
                v.str("");
                v << t.log_value(l);
                if (o.format == "csv") cli::csv_row(std::cout, {std::to_string(l), v.str()});
                else std::cout << l << '\t' << v.str() << '\n';
            }
        } else {
            const StirlingTable t(n, Backend::exact);
            if (o.format == "csv") cli::csv_row(std::cout, {"ell", "s"});
            for (std::uint32_t l = 0; l <= n; ++l) {
                if (o.format == "csv") cli::csv_row(std::cout, {std::to_string(l), t.exact()[l].str()});
                else std::cout << l << '\t' << t.exact()[l] << '\n';
            }
        }
    } else if (what == "moments") {
        const auto [m, v] = mean_var_CN(n);
        Json j{{"N", n}, {"mean", m}, {"var", v}};
        std::cout << j.dump() << '\n';
    } else if (what == "lclt") {
        const auto pmf = poisson_binomial_pmf(n);
        const auto l = static_cast<std::uint32_t>(o.ell);
        Json j{{"N", n}, {"ell", l}, {"gaussian", lclt_gaussian(n, l)}, {"pmf", l <= n ? pmf[l] : 0.0}};
        std::cout << j.dump() << '\n';
    } else {
        throw InvalidInput("unknown cyclestats query '" + what + "'");
    }
    return 0;
}

int cmd_bounds(const std::string& what, const Options& o)
{
    const auto spec = GluingSpec::parse(o.spec);
    if (what == "union") {
        const auto ub = union_bound(spec);
        std::cout << "N'\tN''\tP\tQ\tP*Q\tP*Q(float)\n";
        for (const auto& t : ub.terms)
            std::cout << t.n_prime << '\t' << t.n_double_prime << '\t' << to_string(t.P) << '\t' << t.Q << '\t'
                      << to_string(t.product) << '\t' << to_double(t.product) << '\n';
        std::cout << "total\t" << to_string(ub.total) << '\t' << to_double(ub.total) << '\n';
    } else if (what == "split") {
        std::cout << split_count(spec, static_cast<std::uint64_t>(o.nprime)) << '\n';
    } else if (what == "yopt") {
        const double y = y_opt(spec, o.nprime);
        Json j{{"y", y}, {"H", h_value(spec, y, o.nprime)}};
        std::cout << j.dump() << '\n';
    } else if (what == "h") {
        std::cout << h_value(spec, o.y, o.nprime) << '\n';
    } else {
        throw InvalidInput("unknown bounds query '" + what + "'");
    }
    return 0;
}

int cmd_mc(const Options& o)
{
    const auto spec = GluingSpec::parse(o.spec);
    const auto s = run_experiment({spec, o.trials, o.seed, o.workers, o.record_components});
    auto j = to_json(s);
    j["gaussian_fit"] = to_json(gaussian_fit_check(s, spec.sides()));
    std::ofstream file;
    *open_output(o.out, file) << j.dump(2) << '\n';
    if (!o.hist.empty()) {
        std::ofstream h(o.hist);
        if (!h) throw InvalidInput("cannot write " + o.hist);
        cli::csv_row(h, {"ell", "count"});
        for (auto [k, c] : s.vertex_counts) cli::csv_row(h, {std::to_string(k), std::to_string(c)});
    }
    return 0;
}

int cmd_verify(const Options& o, const std::string& self)
{
    if (!o.manifest.empty()) {
        const auto outcomes = verify::verify_all(verify::load_manifest(o.manifest), o.bin.empty() ? self : o.bin);
        bool ok = true;
        for (const auto& c : outcomes) {
            std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.entry.claim << "  " << c.entry.locus << "  ["
                      << c.entry.cmd << "]  observed: " << c.observed << '\n';
            ok = ok && c.passed;
        }
        return ok ? 0 : 1;
    }
    verify::CriteriaOptions opt{.workers = o.workers, .quick = o.quick};
    bool ok = true;
    for (const auto& c : verify::criteria()) {
        if (!o.criteria.empty() && std::find(o.criteria.begin(), o.criteria.end(), c.id) == o.criteria.end()) continue;
        const auto r = verify::run_criterion(c, opt);
        std::cout << verify::format_line(r) << std::endl;
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Random oriented surfaces from glued polygons: sampling, exact laws, characters, bounds"};
    app.require_subcommand(1);
    Options o;
    std::string query;

    auto* glue_cmd = app.add_subcommand("glue", "Surface invariants for given alpha and beta");
    glue_cmd->add_option("--alpha", o.alpha, "polygon permutation in cycle notation")->required();
    glue_cmd->add_option("--beta", o.beta, "gluing matching in cycle notation")->required();
    glue_cmd->add_flag("--verbose", o.verbose, "include alpha, beta, gamma");

    auto* sample_cmd = app.add_subcommand("sample", "Sample random surfaces");
    sample_cmd->add_option("--spec", o.spec, "polygon census, e.g. 3x2,4x1")->required();
    sample_cmd->add_option("--seed", o.seed);
    sample_cmd->add_option("--count", o.count);

    auto* exact_cmd = app.add_subcommand("exact", "Exact laws by enumerating matchings");
    exact_cmd->add_option("query", query, "gamma | vertex | tv | tvlaw | connect | matchings")->required();
    exact_cmd->add_option("--spec", o.spec);
    exact_cmd->add_option("--n", o.n, "N for matchings");
    exact_cmd->add_option("--cap", o.cap, "enumeration cap (default 14)");
    exact_cmd->add_option("--workers", o.workers);
    exact_cmd->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
    exact_cmd->add_flag("--verbose", o.verbose, "list each matching");

    auto* char_cmd = app.add_subcommand("characters", "Characters of S_N");
    char_cmd->add_option("query", query, "table | dim | chi | ds | frob | ratio")->required();
    char_cmd->add_option("--n", o.n);
    char_cmd->add_option("--lambda", o.lambda, "partition, e.g. 3-2");
    char_cmd->add_option("--mu", o.mu, "cycle type, e.g. 2-2-1");
    char_cmd->add_option("--spec", o.spec);
    char_cmd->add_option("--cap", o.cap, "character cap (default 30)");
    char_cmd->add_option("--workers", o.workers);
    char_cmd->add_option("--format", o.format)->check(CLI::IsMember({"text", "csv", "json"}));

    auto* cyc_cmd = app.add_subcommand("cyclestats", "Cycle-count laws");
    cyc_cmd->add_option("query", query, "law | stirling | moments | lclt")->required();
    cyc_cmd->add_option("--n", o.n)->required();
    cyc_cmd->add_option("--parity", o.parity)->check(CLI::IsMember({"all", "even", "odd"}));
    cyc_cmd->add_option("--backend", o.backend)->check(CLI::IsMember({"exact", "float"}));
    cyc_cmd->add_option("--ell", o.ell);
    cyc_cmd->add_option("--format", o.format)->check(CLI::IsMember({"text", "csv"}));

    auto* bounds_cmd = app.add_subcommand("bounds", "Connectivity union bound");
    bounds_cmd->add_option("query", query, "union | split | yopt | h")->required();
    bounds_cmd->add_option("--spec", o.spec)->required();
    bounds_cmd->add_option("--nprime", o.nprime);
    bounds_cmd->add_option("--y", o.y);

    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo experiments");
    mc_cmd->add_option("query", query, "run")->required()->check(CLI::IsMember({"run"}));
    mc_cmd->add_option("--spec", o.spec)->required();
    mc_cmd->add_option("--trials", o.trials);
    mc_cmd->add_option("--seed", o.seed);
    mc_cmd->add_option("--workers", o.workers);
    mc_cmd->add_option("--out", o.out, "summary JSON path (default stdout)");
    mc_cmd->add_option("--hist", o.hist, "vertex histogram CSV path");
    mc_cmd->add_flag("--record-components", o.record_components);

    auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance criteria or a claims manifest");
    verify_cmd->add_flag("--quick", o.quick, "skip the Monte Carlo criteria");
    verify_cmd->add_option("--criterion", o.criteria, "run only these criterion ids");
    verify_cmd->add_option("--workers", o.workers);
    verify_cmd->add_option("--manifest", o.manifest, "claims manifest (JSON lines)");
    verify_cmd->add_option("--bin", o.bin, "CLI binary the manifest commands run against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*glue_cmd) return cmd_glue(o);
        if (*sample_cmd) return cmd_sample(o);
        if (*exact_cmd) return cmd_exact(query, o);
        if (*char_cmd) return cmd_characters(query, o);
        if (*cyc_cmd) return cmd_cyclestats(query, o);
        if (*bounds_cmd) return cmd_bounds(query, o);
        if (*mc_cmd) return cmd_mc(o);
        if (*verify_cmd) return cmd_verify(o, argv[0]);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
