#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nijenhuis::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable that replaces the built-in default series order.
inline constexpr const char* kSeriesOrderEnv = "NIJENHUIS_SERIES_ORDER";

/// Default truncation order: the environment variable when set, else 8.
/// Throws std::invalid_argument for a malformed value.
int default_series_order();

/// Runs the command line `args` (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nijenhuis::cli
