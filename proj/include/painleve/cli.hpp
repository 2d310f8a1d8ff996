#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "painleve/mkdv.hpp"

namespace painleve {

inline constexpr const char* kToolVersion = "0.1.0";

// Keys accepted in a config document (one "key = value" per line, '#'
// starts a comment):
//   alpha, k            one Ablowitz-Segur pair
//   a, b                or initial-data coefficients (exclusive with alpha, k)
//   x_lo, x_hi, step    grid range (defaults -60, 4, 0.01)
//   tol                 ODE tolerance (1e-10)
//   cutoff              X for the profile and the tails (60)
//   seed_depth          left launch start is -seed_depth (4000)
//   threads             worker threads for suites (0: hardware concurrency)
//   report, grid_out    output paths (report.jsonl, grid.csv)
struct RunConfig {
    std::optional<double> alpha, k, a, b;
    double x_lo = -60.0;
    double x_hi = 4.0;
    double step = 0.01;
    double tol = 1e-10;
    double cutoff = 60.0;
    double seed_depth = 4000.0;
    int threads = 0;
    std::string report = "report.jsonl";
    std::string grid_out = "grid.csv";

    // The pair selected by alpha/k or a/b, if any. Throws ConfigError when
    // the selection is incomplete or both forms are given.
    std::optional<ASParams> params() const;
    void validate() const;
};

// Throws ConfigError on unknown or repeated keys and unparsable values.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

// PAINLEVE_MKDV_REPORT and PAINLEVE_MKDV_GRID replace the output paths.
void apply_env_overrides(RunConfig& cfg, const std::function<const char*(const char*)>& getenv_fn);

using CheckValue = std::variant<double, cplx>;

struct CheckReport {
    std::string check_id;
    CheckValue lhs;
    CheckValue rhs;
    double abs_err;
    double tol;
    bool pass;  // abs_err <= tol
    double runtime_ms;
};

// One JSON object, no trailing newline. Complex values are [re, im];
// non-finite numbers are null.
std::string to_json_line(const CheckReport& r);

const std::vector<std::string>& suite_names();

// Runs a suite ("all" runs every suite). Numerical failures propagate.
std::vector<CheckReport> run_suite(const std::string& suite, const RunConfig& cfg);

// 0 if every check passes, 1 otherwise.
int exit_status(const std::vector<CheckReport>& reports);

// Writes to a temporary file next to path, then renames it over path.
void write_atomic(const std::string& path, const std::string& content);

void write_report(const std::string& path, const std::vector<CheckReport>& reports);

// CSV text: a '#' line with the tool version and parameters, the column
// names, then one row per abscissa. Out-of-domain fields are empty.
std::string grid_csv(const RunConfig& cfg);
void emit_grid(const RunConfig& cfg);

}  // namespace painleve
