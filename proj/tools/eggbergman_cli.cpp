// Command-line front end for the eggbergman verification library. Parses
// flags, forwards them into a run configuration through the C API, and maps
// outcomes onto exit codes: 0 all checks passed, 1 check failures, 2 usage or
// configuration errors.

#include "eggbergman.h"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Flags {
    std::string config_file;
    std::optional<std::int64_t> n, m;
    std::optional<double> a, p, lambda, sigma, d, h_floor;
    std::optional<std::uint64_t> samples, seed;
    std::optional<std::int64_t> degree, grid;
    std::optional<std::string> out;
    std::vector<std::string> suites;
    bool quiet = false;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
    cmd->add_option("--config", flags.config_file,
                    "flat key-value configuration file (flags override it)");
    cmd->add_option("--n", flags.n, "z-block dimension (default 1)");
    cmd->add_option("--m", flags.m, "w-block dimension (default 1)");
    cmd->add_option("--a", flags.a, "egg exponent in (0, 2] (default 1)");
    cmd->add_option("--p", flags.p, "integrability exponent p >= 1 (default 2)");
    cmd->add_option("--lambda", flags.lambda, "weight exponent lambda > -1 (default 0)");
    cmd->add_option("--sigma", flags.sigma, "kernel weight override (default: derived)");
    cmd->add_option("--d", flags.d, "auxiliary exponent override (default: derived)");
    cmd->add_option("--samples", flags.samples, "Monte-Carlo budget (default 1000000)");
    cmd->add_option("--seed", flags.seed, "base RNG seed (default 1)");
    cmd->add_option("--degree", flags.degree, "random polynomial degree (default 8)");
    cmd->add_option("--grid", flags.grid, "index-scan grid size (default 10000)");
    cmd->add_option("--h-floor", flags.h_floor,
                    "near-boundary cutoff for sup scans (default 1e-6)");
    cmd->add_option("--out", flags.out, "report path prefix (default eggbergman_report)");
    cmd->add_flag("--quiet", flags.quiet, "suppress progress logging");
}

class Config {
  public:
    Config() { egg_config_create(&cfg_); }
    ~Config() { egg_config_free(cfg_); }
    Config(const Config&) = delete;
    Config& operator=(const Config&) = delete;
    egg_config* get() const { return cfg_; }

  private:
    egg_config* cfg_ = nullptr;
};

int fail_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

// Returns 0 on success, 2 on configuration errors.
int build_config(const Flags& flags, egg_config* cfg) {
    if (!flags.config_file.empty() &&
        egg_config_load_file(cfg, flags.config_file.c_str()) != EGG_OK)
        return fail_usage(egg_last_error());
    auto set = [&](const char* key, const std::string& value) {
        if (egg_config_set(cfg, key, value.c_str()) != EGG_OK) {
            fail_usage(egg_last_error());
            return false;
        }
        return true;
    };
    auto set_num = [&](const char* key, auto opt) {
        if (!opt) return true;
        std::ostringstream ss;
        ss.precision(17);
        ss << *opt;
        return set(key, ss.str());
    };
    if (!set_num("n", flags.n) || !set_num("m", flags.m) || !set_num("a", flags.a) ||
        !set_num("p", flags.p) || !set_num("lambda", flags.lambda) ||
        !set_num("sigma", flags.sigma) || !set_num("d", flags.d) ||
        !set_num("samples", flags.samples) || !set_num("seed", flags.seed) ||
        !set_num("degree", flags.degree) || !set_num("grid", flags.grid) ||
        !set_num("h-floor", flags.h_floor))
        return 2;
    if (flags.out && !set("out", *flags.out)) return 2;
    if (!flags.suites.empty()) {
        std::string joined;
        for (const std::string& s : flags.suites) {
            if (!joined.empty()) joined += ",";
            joined += s;
        }
        if (!set("suites", joined)) return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification CLI for weighted Bergman analysis on egg domains"};
    app.require_subcommand(1);

    Flags verify_flags;
    CLI::App* verify = app.add_subcommand(
        "verify", "run verification suites and write JSON-lines + CSV reports");
    verify
        ->add_option("suites", verify_flags.suites,
                     "suites to run (default: all): decomposition multiplier kernel "
                     "parseval gamma schur lemma1 lemma2 opnorm")
        ->expected(-1);
    add_common_flags(verify, verify_flags);

    Flags solve_flags;
    CLI::App* solve = app.add_subcommand(
        "solve", "solve kernel coefficients once and cache the record");
    add_common_flags(solve, solve_flags);

    // polynomial utility: read the one-term-per-row literal, apply one
    // coefficient operation, print the resulting literal(s)
    std::string poly_file, poly_op = "components";
    std::int64_t poly_nvars = 2, poly_k = 0, poly_order = 1;
    CLI::App* poly = app.add_subcommand(
        "poly", "apply a coefficient operation to a polynomial literal file");
    poly->add_option("file", poly_file, "literal file: alpha_1..alpha_nv re im rows")
        ->required();
    poly->add_option("--nvars", poly_nvars, "number of variables (default 2)");
    poly->add_option("--op", poly_op,
                     "operation: components | multiplier | derivative | decompose "
                     "(default components)");
    poly->add_option("--k", poly_k, "coordinate index, 0-based (default 0)");
    poly->add_option("--order", poly_order, "decomposition order (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (poly->parsed()) {
        std::ifstream in(poly_file);
        if (!in) return fail_usage("cannot open polynomial file " + poly_file);
        std::ostringstream buf;
        buf << in.rdbuf();
        egg_poly* f = nullptr;
        if (egg_poly_parse(static_cast<int>(poly_nvars), buf.str().c_str(), &f) !=
            EGG_OK)
            return fail_usage(egg_last_error());
        auto print_poly = [](egg_poly* g) {
            size_t size = 0;
            egg_poly_format(g, nullptr, &size);
            std::string text(size, '\0');
            if (egg_poly_format(g, text.data(), &size) != EGG_OK) return false;
            text.resize(size);
            std::cout << text;
            return true;
        };
        int rc = 0;
        egg_status status = EGG_OK;
        egg_poly* out = nullptr;
        if (poly_op == "components")
            status = egg_poly_leibenson(f, static_cast<int>(poly_k), &out);
        else if (poly_op == "multiplier")
            status = egg_poly_multiplier(f, static_cast<int>(poly_k), &out);
        else if (poly_op == "derivative")
            status = egg_poly_derivative(f, static_cast<int>(poly_k), &out);
        else if (poly_op == "decompose") {
            egg_decomposition* dec = nullptr;
            status = egg_poly_gleason(f, static_cast<int>(poly_order), &dec);
            if (status == EGG_OK) {
                size_t count = 0;
                egg_decomposition_size(dec, &count);
                std::vector<int> alpha(poly_nvars);
                for (size_t i = 0; i < count && rc == 0; ++i) {
                    egg_decomposition_index(dec, i, alpha.data());
                    std::cout << "#";
                    for (int v : alpha) std::cout << " " << v;
                    std::cout << "\n";
                    egg_poly* part = nullptr;
                    egg_decomposition_component(dec, i, &part);
                    if (!print_poly(part)) rc = 1;
                    egg_poly_free(part);
                }
                egg_decomposition_free(dec);
            }
        } else {
            egg_poly_free(f);
            return fail_usage("unknown --op '" + poly_op + "'");
        }
        if (status != EGG_OK) {
            egg_poly_free(f);
            return fail_usage(egg_last_error());
        }
        if (out) {
            if (!print_poly(out)) rc = 1;
            egg_poly_free(out);
        }
        egg_poly_free(f);
        return rc;
    }

    if (verify->parsed()) {
        Config cfg;
        if (int rc = build_config(verify_flags, cfg.get())) return rc;
        int exit_code = 0;
        egg_status status =
            egg_run_suites(cfg.get(), verify_flags.quiet ? 0 : 1, &exit_code);
        if (status == EGG_ERR_BAD_ARGUMENT) return fail_usage(egg_last_error());
        if (status != EGG_OK) {
            std::cerr << "error: " << egg_last_error() << "\n";
            return 1;
        }
        if (exit_code != 0 && verify_flags.quiet)
            std::cerr << "some checks failed; see the report written next to --out\n";
        return exit_code;
    }

    Config cfg;
    if (int rc = build_config(solve_flags, cfg.get())) return rc;
    egg_status status = egg_solve_and_cache(cfg.get(), solve_flags.quiet ? 0 : 1);
    if (status == EGG_ERR_BAD_ARGUMENT) return fail_usage(egg_last_error());
    if (status != EGG_OK) {
        std::cerr << "error: " << egg_last_error() << "\n";
        return 1;
    }
    return 0;
}
