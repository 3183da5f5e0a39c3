#pragma once

#include <cstdint>
#include <vector>

#include "nijenhuis/report.hpp"

namespace nijenhuis::cli {

struct SelftestOptions {
  /// Ship the first-section sign for the Jordan family; the regression matrix must then fail.
  bool inject_jordan_sign = false;
  std::uint32_t seed = 20240531;
  int series_order = 8;
};

/// Form regression matrix, the sign-variant assertion, the F-manifold family and the
/// randomized suites. One report per group, sorted by name.
std::vector<Report> run_selftest(const SelftestOptions& options);

}  // namespace nijenhuis::cli
