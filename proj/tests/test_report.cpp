#include <doctest.h>

#include <limits>
#include <string>

#include "fuchs/report.hpp"
#include "fuchs/suites.hpp"

using namespace fuchs;

namespace {

RunConfig small_config() {
    RunConfig cfg;
    cfg.prime = 3;
    cfg.n = 1;
    cfg.m = 1;
    cfg.seed = 424242;
    return cfg;
}

} // namespace

TEST_CASE("config validation messages name the dyadic exclusion") {
    RunConfig cfg = small_config();
    cfg.prime = 2;
    try {
        cfg.validate();
        FAIL("p = 2 must be rejected");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("dyadic") != std::string::npos);
    }
    cfg = small_config();
    cfg.tolerance = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.m = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("make_report enforces pass = (residual <= tolerance)") {
    const LevelParams P{3, 1, 1, 4};
    CHECK(make_report("x", "s", P, 1e-12, 1e-10, 0, {}).pass);
    CHECK_FALSE(make_report("x", "s", P, 1e-8, 1e-10, 0, {}).pass);
    CHECK_FALSE(
        make_report("x", "s", P, std::numeric_limits<double>::infinity(), 1e-10, 0, {}).pass);
    CHECK(make_report("x", "s", P, 0.0, 0.0, 0, {}).pass);
}

TEST_CASE("JSON round trip is lossless") {
    RunConfig cfg = small_config();
    cfg.format = ReportFormat::Json;
    cfg.include_timings = true;
    std::vector<CheckReport> reports;
    reports.push_back(make_report("unitarity/residual", "unitarity", cfg.level(), 3.2e-15, 1e-10,
                                  17, {{"unit", 3}, {"xn", 9}}, "dense"));
    reports.push_back(make_report("cocycle/relation", "cocycle", cfg.level(),
                                  std::numeric_limits<double>::infinity(), 1e-10, 2,
                                  {{"triple_dim", 729}}, "budget"));
    const std::string payload = emit_report(reports, cfg);
    CHECK(parse_reports(payload) == reports);
}

TEST_CASE("empty report list is a valid document") {
    RunConfig cfg = small_config();
    cfg.format = ReportFormat::Json;
    const std::vector<CheckReport> none;
    CHECK(parse_reports(emit_report(none, cfg)).empty());
    CHECK(all_pass(none));
}

TEST_CASE("JSON omits timings by default for byte-identical output") {
    RunConfig cfg = small_config();
    cfg.format = ReportFormat::Json;
    const auto reports =
        std::vector<CheckReport>{make_report("a/b", "a", cfg.level(), 0.0, 1e-10, 123, {})};
    const std::string payload = emit_report(reports, cfg);
    CHECK(payload.find("elapsed_ms") == std::string::npos);
    cfg.include_timings = true;
    CHECK(emit_report(reports, cfg).find("elapsed_ms") != std::string::npos);
}

TEST_CASE("run_suite: deterministic, ordered, and correct on a tiny instance") {
    const RunConfig cfg = small_config();
    const auto first = run_suite(cfg, "xi-permutation");
    const auto second = run_suite(cfg, "xi-permutation");
    REQUIRE(first.size() == 2);
    CHECK(first[0].name == "xi-permutation/bijective");
    CHECK(first[0].residual == 0.0);
    CHECK(first[0].pass);
    CHECK(first[1].name == "xi-permutation/inverse-consistency");
    CHECK(first[1].pass);
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].residual == second[i].residual); // bitwise determinism
        CHECK(first[i].name == second[i].name);
    }
    // emitted JSON is byte-identical without timings
    RunConfig jcfg = cfg;
    jcfg.format = ReportFormat::Json;
    CHECK(emit_report(first, jcfg) == emit_report(second, jcfg));
}

TEST_CASE("run_suite rejects unknown suites and bad configs") {
    CHECK_THROWS_AS((void)run_suite(small_config(), "no-such-suite"), ConfigError);
    RunConfig cfg = small_config();
    cfg.prime = 2;
    CHECK_THROWS_AS((void)run_suite(cfg, "unitarity"), ConfigError);
}

TEST_CASE("over-budget checks are reported, not fatal") {
    RunConfig cfg = small_config();
    cfg.prime = 7;
    cfg.budget_mb = 1; // too small even for the coefficient-space route at p = 7
    const auto reports = run_suite(cfg, "cocycle");
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
        CHECK_FALSE(r.pass);
        CHECK_FALSE(std::isfinite(r.residual));
        CHECK(r.note.find("budget") != std::string::npos);
    }
    CHECK_FALSE(all_pass(reports));

    // at p = 3 the same budget still admits the coefficient-space route
    RunConfig tiny = small_config();
    tiny.budget_mb = 1;
    const auto fallback = run_suite(tiny, "cocycle");
    REQUIRE(fallback.size() == 3);
    for (const auto& r : fallback) {
        CHECK(r.pass);
        CHECK(r.note.find("coefficient") != std::string::npos);
    }

    // when the dense matrix is over budget, unitarity falls back to the
    // structured certificate instead of failing
    RunConfig big = small_config();
    big.m = 2;
    big.budget_mb = 64;
    const auto unit = run_suite(big, "unitarity");
    REQUIRE(unit.size() == 1);
    CHECK(unit[0].pass);
    CHECK(unit[0].note.find("structured") != std::string::npos);

    // within budget the same suite runs the dense residual
    const auto dense = run_suite(small_config(), "unitarity");
    REQUIRE(dense.size() == 1);
    CHECK(dense[0].pass);
    CHECK(dense[0].note == "dense");
}

TEST_CASE("suite registry covers the documented names") {
    for (const auto& name : suite_names()) CHECK(is_suite_name(name));
    CHECK(is_suite_name("all"));
    CHECK_FALSE(is_suite_name("bogus"));
    CHECK(suite_names().size() == 12);
}
