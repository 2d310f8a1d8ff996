#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "painleve/cli.hpp"
#include "painleve/error.hpp"

using namespace painleve;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ablowitz-Segur Painleve II solutions and self-similar mKdV checks", "painleve-mkdv"};
    app.set_version_flag("--version", kToolVersion);

    std::string command, config_path, out;
    std::optional<double> alpha, k, a, b, tol;
    std::vector<std::string> commands = suite_names();
    commands.push_back("grid");
    app.add_option("command", command, "suite to run, or grid")->required()->check(CLI::IsMember(commands));
    app.add_option("--config", config_path, "key = value config file")->required();
    auto* oa = app.add_option("--alpha", alpha, "alpha");
    auto* ok = app.add_option("--k", k, "k");
    auto* oA = app.add_option("--a", a, "delta coefficient of u(0, x)");
    auto* oB = app.add_option("--b", b, "p.v. 1/x coefficient of u(0, x)");
    oa->needs(ok);
    ok->needs(oa);
    oA->needs(oB);
    oB->needs(oA);
    oa->excludes(oA)->excludes(oB);
    ok->excludes(oA)->excludes(oB);
    app.add_option("--out", out, "report path (suites) or CSV path (grid)");
    app.add_option("--tol", tol, "ODE tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        apply_env_overrides(cfg, [](const char* name) { return std::getenv(name); });
        if (alpha) {
            cfg.alpha = alpha, cfg.k = k;
            cfg.a.reset(), cfg.b.reset();
        }
        if (a) {
            cfg.a = a, cfg.b = b;
            cfg.alpha.reset(), cfg.k.reset();
        }
        if (tol) cfg.tol = *tol;
        if (!out.empty()) (command == "grid" ? cfg.grid_out : cfg.report) = out;
        cfg.validate();
        if (command == "grid" && !cfg.params()) throw ConfigError("grid needs alpha/k or a/b");
    } catch (const Error& e) {
        std::fprintf(stderr, "painleve-mkdv: %s\n", e.what());
        return kExitUsage;
    }

    try {
        if (command == "grid") {
            emit_grid(cfg);
            std::printf("wrote %s\n", cfg.grid_out.c_str());
            return kExitPass;
        }
        const auto reports = run_suite(command, cfg);
        write_report(cfg.report, reports);
        int failed = 0;
        for (const auto& r : reports) {
            std::printf("%s %-60s abs_err=%.3e tol=%.1e\n", r.pass ? "PASS" : "FAIL", r.check_id.c_str(), r.abs_err, r.tol);
            failed += !r.pass;
        }
        std::printf("%zu checks, %d failed; report: %s\n", reports.size(), failed, cfg.report.c_str());
        return exit_status(reports) == 0 ? kExitPass : kExitCheckFailed;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "painleve-mkdv: %s\n", e.what());
        return kExitUsage;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "painleve-mkdv: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "painleve-mkdv: numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
}
