#ifndef EGGBERGMAN_SUITES_HPP
#define EGGBERGMAN_SUITES_HPP

#include "eggbergman/kernel.hpp"
#include "eggbergman/report.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eggb {

/// Everything a verification run needs. Parsed from flat key-value config
/// files and/or command-line flags; validated before any suite starts.
struct RunConfig {
    int n = 1;
    int m = 1;
    double a = 1.0;
    double p = 2.0;
    double lambda = 0.0;
    std::optional<double> sigma_override;
    std::optional<double> d_override;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    int degree = 8;
    long grid = 10'000;
    double h_floor = 1e-6;
    std::vector<std::string> suites; // empty means "all"
    std::string out = "eggbergman_report"; // path prefix for .jsonl / .csv

    void validate() const; // throws std::invalid_argument with the offending key
};

/// All suite names, in execution order.
const std::vector<std::string>& known_suites();

/// Applies one key=value setting; throws std::invalid_argument for unknown
/// keys or malformed values.
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value);

/// Flat key-value config file: one `key value` (or `key = value`) pair per
/// line, '#' comments. Unknown keys are errors.
RunConfig load_config_file(const std::string& path);

/// The weight exponent the kernel-based suites run at (the override if
/// given, else the midpoint policy for (p, lambda)).
double effective_sigma(const RunConfig& cfg);

/// Solves the kernel coefficients for the configured domain and weight,
/// consulting the on-disk cache next to cfg.out first. A cached record with
/// mismatched parameters or a failed residual re-validation is recomputed
/// (with a warning on `log`).
KernelParams solve_and_cache(const RunConfig& cfg, std::ostream& log);

/// Runs the requested suites, writing <out>.jsonl and <out>.csv.
/// Returns 0 if every check passed, 1 otherwise (failing checks are listed
/// on `log`). Configuration errors throw std::invalid_argument.
int run_suites(const RunConfig& cfg, std::ostream& log);

} // namespace eggb

#endif
