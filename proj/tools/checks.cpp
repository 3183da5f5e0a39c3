#include "checks.hpp"

#include <algorithm>
#include <future>

#include "nijenhuis/errors.hpp"
#include "nijenhuis/fman.hpp"
#include "nijenhuis/verify.hpp"

namespace nijenhuis::cli {

namespace {

RingElem meta_expr(const Model& m, const std::string& text) {
  return parse_expression(text, m.variables, m.mode);
}

Report eigen_reports(const Model& m) {
  std::vector<Report> parts;
  for (const auto& text : m.meta.eigenvalues) {
    Report r = check_eigen_invariant(*m.L, meta_expr(m, text));
    r.check = "lambda = " + text;
    parts.push_back(std::move(r));
  }
  return merge_reports("eigen-invariant", parts);
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "2d-criterion", "eigen-invariant", "fmanifold",   "frame-relations", "nijenhuis",
      "pde-thm4",     "pde-thm6",        "sigma",       "split",           "unity"};
  return names;
}

std::string missing_inputs(const Model& m, const std::string& check) {
  const auto& meta = m.meta;
  if (check == "nijenhuis") return m.L ? "" : "needs L";
  if (check == "unity" || check == "sigma" || check == "frame-relations") {
    return m.L && m.e ? "" : "needs L and e";
  }
  if (check == "2d-criterion") return m.L && m.dim() == 2 ? "" : "needs a 2x2 L";
  if (check == "eigen-invariant") {
    return m.L && !meta.eigenvalues.empty() ? "" : "needs L and meta.eigenvalues";
  }
  if (check == "split") return m.L && m.e && !meta.partition.empty() ? "" : "needs L, e and meta.partition";
  if (check == "pde-thm4") {
    return m.dim() == 3 && meta.k && meta.f && meta.g ? "" : "needs 3 variables and meta.k, meta.f, meta.g";
  }
  if (check == "pde-thm6") {
    return m.dim() == 3 && meta.k && meta.f && meta.h ? "" : "needs 3 variables and meta.k, meta.f, meta.h";
  }
  if (check == "fmanifold") return m.circ && m.e && m.E ? "" : "needs circ, e and E";
  return "unknown check";
}

std::vector<std::string> applicable_checks(const Model& model) {
  std::vector<std::string> out;
  for (const auto& name : check_names()) {
    if (missing_inputs(model, name).empty()) out.push_back(name);
  }
  return out;
}

Report run_check(const Model& m, const std::string& check) {
  if (const std::string why = missing_inputs(m, check); !why.empty()) {
    throw ModelError("", "check '" + check + "' " + why);
  }
  const Sign sign = m.meta.sign.value_or(Sign::plus);
  const HPairing pairing = m.meta.pairing.value_or(HPairing::consistent);
  Report r;
  if (check == "nijenhuis") r = check_nijenhuis(*m.L);
  else if (check == "unity") r = check_unity(*m.L, *m.e);
  else if (check == "sigma") r = check_trace_and_sigma(*m.L, *m.e);
  else if (check == "2d-criterion") r = check_2d_criterion(*m.L);
  else if (check == "eigen-invariant") r = eigen_reports(m);
  else if (check == "split") r = check_split(*m.L, *m.e, m.meta.partition);
  else if (check == "frame-relations") r = check_frame_relations(*m.L, *m.e, m.dim() - 1);
  else if (check == "fmanifold") r = check_fmanifold_axioms({*m.circ, *m.e, *m.E});
  else if (check == "pde-thm4") {
    r = check_pde_thm4(meta_expr(m, *m.meta.f), meta_expr(m, *m.meta.g), *m.meta.k);
  } else if (check == "pde-thm6") {
    r = check_pde_thm6(meta_expr(m, *m.meta.f), meta_expr(m, *m.meta.h), *m.meta.k, sign, pairing);
  }
  if (m.mode.is_series()) r.note("series order " + std::to_string(*m.mode.series_order));
  return r;
}

std::vector<Report> run_checks(const Model& model, const std::vector<std::string>& checks) {
  for (const auto& c : checks) {
    if (const std::string why = missing_inputs(model, c); !why.empty()) {
      throw ModelError("", "check '" + c + "' " + why);
    }
  }
  std::vector<std::future<Report>> jobs;
  for (const auto& c : checks) {
    jobs.push_back(std::async(std::launch::async, [&model, c] { return run_check(model, c); }));
  }
  std::vector<Report> reports;
  for (auto& job : jobs) reports.push_back(job.get());
  sort_reports(reports);
  return reports;
}

}  // namespace nijenhuis::cli
