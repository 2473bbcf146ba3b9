// fuchs-verify: run the verification suites for the p-adic Fuchs calculus and
// its dual 2-cocycle at a chosen truncation level, and report residuals.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "fuchs/report.hpp"
#include "fuchs/suites.hpp"
#include "fuchs/version.hpp"

int main(int argc, char** argv) {
    fuchs::RunConfig config;
    std::vector<std::string> suites{"all"};
    std::string format = "text";

    CLI::App app{"verification driver for the p-adic Fuchs quantization and the dual 2-cocycle "
                 "on U_n ⋉ Γ_n at finite resolution"};
    app.set_version_flag("--version", std::string(fuchs::kLibraryVersion));
    app.add_option("--prime", config.prime, "odd prime p of the base field Q_p")
        ->envname("FUCHS_PRIME")
        ->capture_default_str();
    app.add_option("--n", config.n, "unit-group level n (U_n = 1 + p^n Z_p)")
        ->envname("FUCHS_N")
        ->capture_default_str();
    app.add_option("--level,--resolution", config.m, "resolution level m of the truncated model")
        ->envname("FUCHS_LEVEL")
        ->capture_default_str();
    app.add_option("--guard", config.guard, "extra working digits for the p-adic arithmetic")
        ->envname("FUCHS_GUARD")
        ->capture_default_str();
    app.add_option("--tolerance", config.tolerance,
                   "residual tolerance for the standard float checks")
        ->envname("FUCHS_TOLERANCE")
        ->capture_default_str();
    app.add_option("--seed", config.seed, "seed for the deterministic test data")
        ->envname("FUCHS_SEED")
        ->capture_default_str();
    app.add_option("--budget-mb", config.budget_mb,
                   "memory budget for dense matrices (<= 0: unlimited)")
        ->envname("FUCHS_BUDGET_MB")
        ->capture_default_str();
    app.add_option("--suite", suites,
                   "suites to run (repeatable; 'all' or one of: substitution, plancherel, "
                   "omega-isometry, covariance, star-agreement, star-associativity, xi-roundtrip, "
                   "xi-jacobian, xi-permutation, twist-oracle, unitarity, cocycle)")
        ->envname("FUCHS_SUITE");
    app.add_option("--format", format, "report format: text or json")
        ->envname("FUCHS_FORMAT")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--output", config.output_path, "write the report to this file (default: stdout)")
        ->envname("FUCHS_OUTPUT");
    app.add_flag("--timings", config.include_timings,
                 "include elapsed_ms in JSON output (off by default so that a fixed config and "
                 "seed give byte-identical reports)")
        ->envname("FUCHS_TIMINGS");

    CLI11_PARSE(app, argc, argv);
    config.format = format == "json" ? fuchs::ReportFormat::Json : fuchs::ReportFormat::Text;

    try {
        config.validate();
        for (const auto& s : suites)
            if (!fuchs::is_suite_name(s)) throw fuchs::ConfigError("unknown suite: " + s);

        std::vector<fuchs::CheckReport> reports;
        for (const auto& s : suites) {
            auto part = fuchs::run_suite(config, s);
            reports.insert(reports.end(), part.begin(), part.end());
        }
        fuchs::write_report(config.output_path, fuchs::emit_report(reports, config));
        return fuchs::all_pass(reports) ? 0 : 1;
    } catch (const fuchs::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const fuchs::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
