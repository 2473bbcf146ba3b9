#include "fuchs/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fuchs/version.hpp"

namespace fuchs {

using nlohmann::json;

void RunConfig::validate() const {
    level().validate();
    if (tolerance <= 0) throw ConfigError("tolerance must be positive");
}

CheckReport make_report(std::string name, std::string suite, const LevelParams& params,
                        double residual, double tolerance, std::int64_t elapsed_ms,
                        std::map<std::string, std::int64_t> grid_sizes, std::string note) {
    CheckReport r;
    r.name = std::move(name);
    r.suite = std::move(suite);
    r.prime = params.prime;
    r.n = params.level_n;
    r.m = params.resolution_m;
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = std::isfinite(residual) && residual <= tolerance;
    r.elapsed_ms = elapsed_ms;
    r.grid_sizes = std::move(grid_sizes);
    r.note = std::move(note);
    r.library_version = kLibraryVersion;
    return r;
}

bool all_pass(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

namespace {

json report_to_json(const CheckReport& r, bool include_timings) {
    json j;
    j["name"] = r.name;
    j["suite"] = r.suite;
    j["prime"] = r.prime;
    j["n"] = r.n;
    j["m"] = r.m;
    if (std::isfinite(r.residual))
        j["residual"] = r.residual;
    else
        j["residual"] = nullptr; // +inf: the check could not run
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    if (include_timings) j["elapsed_ms"] = r.elapsed_ms;
    j["grid_sizes"] = r.grid_sizes;
    if (!r.note.empty()) j["note"] = r.note;
    j["library_version"] = r.library_version;
    return j;
}

CheckReport report_from_json(const json& j) {
    CheckReport r;
    r.name = j.at("name").get<std::string>();
    r.suite = j.at("suite").get<std::string>();
    r.prime = j.at("prime").get<std::int64_t>();
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<int>();
    r.residual = j.at("residual").is_null() ? std::numeric_limits<double>::infinity()
                                            : j.at("residual").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.pass = j.at("pass").get<bool>();
    if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
    r.grid_sizes = j.at("grid_sizes").get<std::map<std::string, std::int64_t>>();
    if (j.contains("note")) r.note = j.at("note").get<std::string>();
    r.library_version = j.at("library_version").get<std::string>();
    return r;
}

std::string format_residual(double residual) {
    if (!std::isfinite(residual)) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", residual);
    return buf;
}

std::string emit_text(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    constexpr int name_w = 42;
    os << std::string(name_w, ' ').replace(0, 5, "check");
    os << "p   n  m  residual    tolerance   result  time\n";
    os << std::string(name_w + 47, '-') << "\n";
    for (const auto& r : reports) {
        std::string name = r.name;
        if (static_cast<int>(name.size()) > name_w - 1) name.resize(name_w - 1);
        os << name << std::string(name_w - name.size(), ' ');
        char line[96];
        std::snprintf(line, sizeof line, "%-3lld %-2d %-2d %-11s %-11s %-7s %lld ms",
                      static_cast<long long>(r.prime), r.n, r.m,
                      format_residual(r.residual).c_str(), format_residual(r.tolerance).c_str(),
                      r.pass ? "PASS" : "FAIL", static_cast<long long>(r.elapsed_ms));
        os << line;
        if (!r.note.empty()) os << "  [" << r.note << "]";
        os << "\n";
    }
    os << std::string(name_w + 47, '-') << "\n";
    std::size_t passed = 0;
    for (const auto& r : reports) passed += r.pass ? 1 : 0;
    os << passed << "/" << reports.size() << " checks passed\n";
    return os.str();
}

} // namespace

std::string emit_report(const std::vector<CheckReport>& reports, const RunConfig& config) {
    if (config.format == ReportFormat::Text) return emit_text(reports);
    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["library_version"] = kLibraryVersion;
    doc["config"] = {{"prime", config.prime},       {"n", config.n},
                     {"m", config.m},               {"guard", config.guard},
                     {"tolerance", config.tolerance}, {"seed", config.seed},
                     {"budget_mb", config.budget_mb}};
    doc["all_pass"] = all_pass(reports);
    json checks = json::array();
    for (const auto& r : reports) checks.push_back(report_to_json(r, config.include_timings));
    doc["checks"] = checks;
    return doc.dump(2) + "\n";
}

std::vector<CheckReport> parse_reports(const std::string& json_text) {
    json doc = json::parse(json_text);
    std::vector<CheckReport> reports;
    for (const auto& j : doc.at("checks")) reports.push_back(report_from_json(j));
    return reports;
}

void write_report(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open report file for writing: " + path);
    out << payload;
    if (!out) throw IoError("failed while writing report file: " + path);
}

} // namespace fuchs
