#pragma once

#include <string>
#include <vector>

#include "fuchs/report.hpp"

namespace fuchs {

// Suite names in their fixed execution/report order. Each maps to one piece
// of the construction: substitution and plancherel to the harmonic-analysis
// identities, omega-isometry and covariance to the quantization map,
// star-agreement and star-associativity to the product, xi-* to the change of
// variables, twist-oracle to the two constructions of F, unitarity and
// cocycle to the two operator identities satisfied by F.
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

// Runs the named suite ("all" for every suite) deterministically for the
// given config and returns one report per check. Checks that exceed the
// memory budget are reported as failed with an explanatory note; the
// remaining checks still run.
std::vector<CheckReport> run_suite(const RunConfig& config, const std::string& suite);

} // namespace fuchs
