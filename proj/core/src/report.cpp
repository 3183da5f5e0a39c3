#include "nijenhuis/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "nijenhuis/errors.hpp"

namespace nijenhuis {

namespace {

using nlohmann::json;

json residual_json(const Residual& r, std::span<const std::string> names) {
  return json{{"component", r.component}, {"index", r.index}, {"value", to_string(r.value, names)}};
}

json report_json(const Report& report, std::span<const std::string> names) {
  json residuals = json::array();
  for (const auto& r : report.residuals) residuals.push_back(residual_json(r, names));
  return json{{"check", report.check},
              {"verdict", report.pass() ? "pass" : "fail"},
              {"residuals", std::move(residuals)},
              {"notes", report.notes}};
}

std::string index_label(const std::vector<int>& index) {
  std::string out = "[";
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(index[i]);
  }
  return out + "]";
}

}  // namespace

void Report::add(const std::string& component, std::vector<int> index, const RingElem& value) {
  if (!value.is_zero()) residuals.push_back({component, std::move(index), value});
}

void Report::note(const std::string& text) {
  if (!notes.empty()) notes += "; ";
  notes += text;
}

Report merge_reports(const std::string& check, const std::vector<Report>& parts) {
  Report merged{check, {}, {}};
  for (const auto& part : parts) {
    merged.residuals.insert(merged.residuals.end(), part.residuals.begin(), part.residuals.end());
    merged.note(part.check + ": " + (part.pass() ? "pass" : "fail"));
    if (!part.notes.empty()) merged.note(part.notes);
  }
  return merged;
}

std::string to_json(const Report& report, std::span<const std::string> names) {
  return report_json(report, names).dump(2);
}

std::string to_json(const std::vector<Report>& reports, std::span<const std::string> names) {
  json all = json::array();
  for (const auto& r : reports) all.push_back(report_json(r, names));
  return all.dump(2);
}

Report report_from_json(const std::string& text, std::span<const std::string> names,
                        const RingMode& mode) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ModelError("", std::string("invalid JSON: ") + err.what());
  }
  try {
    Report report{doc.at("check").get<std::string>(), {}, doc.value("notes", std::string())};
    const auto& residuals = doc.at("residuals");
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      const auto& r = residuals[i];
      report.residuals.push_back({r.at("component").get<std::string>(),
                                  r.at("index").get<std::vector<int>>(),
                                  parse_expression(r.at("value").get<std::string>(), names, mode)});
    }
    const std::string verdict = doc.at("verdict").get<std::string>();
    if (verdict != (report.pass() ? "pass" : "fail")) {
      throw ModelError("verdict", "verdict disagrees with the residual list");
    }
    return report;
  } catch (const json::exception& err) {
    throw ModelError("", std::string("malformed report: ") + err.what());
  }
}

std::string to_text(const Report& report, std::span<const std::string> names) {
  std::ostringstream out;
  out << report.check << ": " << (report.pass() ? "PASS" : "FAIL");
  if (!report.notes.empty()) out << " (" << report.notes << ")";
  out << "\n";
  for (const auto& r : report.residuals) {
    out << "  " << r.component << index_label(r.index) << " = " << to_string(r.value, names)
        << "\n";
  }
  return out.str();
}

void sort_reports(std::vector<Report>& reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const Report& a, const Report& b) { return a.check < b.check; });
}

}  // namespace nijenhuis
