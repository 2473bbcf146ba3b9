#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fuchs/grids.hpp"

namespace fuchs {

enum class ReportFormat { Text, Json };

// Configuration of one verification run. Validation enforces the field
// hypotheses of the construction; in particular p = 2 (and with it every
// dyadic field) is rejected because 2 must be a unit for the square and
// hyperbolic-sine maps to be bijective on U_n.
struct RunConfig {
    std::int64_t prime = 3;
    int n = 1;            // unit-group level: U_n = 1 + p^n Z_p
    int m = 1;            // resolution level of the truncated model
    int guard = 4;        // extra working digits
    double tolerance = 1e-10; // residual tolerance for the standard float checks
    std::uint64_t seed = 1;
    std::int64_t budget_mb = 512;
    ReportFormat format = ReportFormat::Text;
    std::string output_path;      // empty = stdout
    bool include_timings = false; // JSON omits elapsed_ms unless set

    LevelParams level() const { return LevelParams{prime, n, m, guard}; }
    void validate() const; // ConfigError
};

// Result of one named check. The pass flag always equals
// residual <= tolerance; a check that could not run within the memory budget
// carries residual = +infinity and an explanatory note.
struct CheckReport {
    std::string name;
    std::string suite;
    std::int64_t prime = 0;
    int n = 0;
    int m = 0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::int64_t elapsed_ms = 0;
    std::map<std::string, std::int64_t> grid_sizes;
    std::string note;
    std::string library_version;

    bool operator==(const CheckReport&) const = default;
};

CheckReport make_report(std::string name, std::string suite, const LevelParams& params,
                        double residual, double tolerance, std::int64_t elapsed_ms,
                        std::map<std::string, std::int64_t> grid_sizes, std::string note = {});

// Serialized report document. The JSON schema is stable: top-level keys
// schema_version, library_version, config, all_pass, checks; each check
// carries the CheckReport fields under fixed key names, with grids listed in
// canonical enumeration order. elapsed_ms is emitted only when timings are
// requested, so that a fixed build, config and seed produce byte-identical
// output by default.
std::string emit_report(const std::vector<CheckReport>& reports, const RunConfig& config);
std::vector<CheckReport> parse_reports(const std::string& json_text);

// Writes the payload to the path (or stdout when the path is empty).
void write_report(const std::string& path, const std::string& payload);

bool all_pass(const std::vector<CheckReport>& reports);

} // namespace fuchs
