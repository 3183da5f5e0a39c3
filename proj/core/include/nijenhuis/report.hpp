#pragma once

#include <span>
#include <string>
#include <vector>

#include "nijenhuis/expression.hpp"
#include "nijenhuis/ring.hpp"

namespace nijenhuis {

/// One nonzero entry of a residual tensor or PDE. Indices are 1-based, matching the
/// coordinate labels x1..xn.
struct Residual {
  std::string component;
  std::vector<int> index;
  RingElem value;

  friend bool operator==(const Residual&, const Residual&) = default;
};

/// Outcome of one identity check. `pass()` holds exactly when no residual survived.
struct Report {
  std::string check;
  std::vector<Residual> residuals;
  std::string notes;

  bool pass() const { return residuals.empty(); }
  /// Records `value` under (component, index) unless it is zero.
  void add(const std::string& component, std::vector<int> index, const RingElem& value);
  void note(const std::string& text);

  friend bool operator==(const Report&, const Report&) = default;
};

/// Concatenates the residuals of `parts` under one check name; each sub-verdict goes to notes.
Report merge_reports(const std::string& check, const std::vector<Report>& parts);

/// JSON object {check, verdict, residuals: [{component, index, value}], notes}; values are
/// printed with `names`.
std::string to_json(const Report& report, std::span<const std::string> names);
std::string to_json(const std::vector<Report>& reports, std::span<const std::string> names);
/// Inverse of `to_json` for a single report. Throws ParseError / ModelError on bad input.
Report report_from_json(const std::string& text, std::span<const std::string> names,
                        const RingMode& mode);

std::string to_text(const Report& report, std::span<const std::string> names);

/// Stable order by check name.
void sort_reports(std::vector<Report>& reports);

}  // namespace nijenhuis
