#pragma once

#include <string>
#include <vector>

#include "nijenhuis/model.hpp"
#include "nijenhuis/report.hpp"

namespace nijenhuis::cli {

/// Every check the verifier knows, in report order.
const std::vector<std::string>& check_names();

/// Checks whose inputs are present in the model.
std::vector<std::string> applicable_checks(const Model& model);

/// Empty when `check` can run on `model`, otherwise the reason it cannot.
std::string missing_inputs(const Model& model, const std::string& check);

Report run_check(const Model& model, const std::string& check);

/// Runs the checks concurrently; the result is sorted by check name. Series-mode reports
/// carry a note with the truncation order.
std::vector<Report> run_checks(const Model& model, const std::vector<std::string>& checks);

}  // namespace nijenhuis::cli
