#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "checks.hpp"
#include "nijenhuis/errors.hpp"
#include "nijenhuis/fman.hpp"
#include "nijenhuis/forms.hpp"
#include "nijenhuis/model.hpp"
#include "selftest.hpp"

namespace nijenhuis::cli {

namespace {

struct Options {
  std::string input;
  std::vector<std::string> checks;
  std::string format = "text";
  std::optional<int> series_order;
  std::string output;

  // generate
  std::string family;
  std::optional<std::size_t> n;
  std::optional<std::string> lambda0, a0, b0, d, sign, f, g, F;
  std::optional<int> k;
  std::string variant = "canonical";

  // derive
  std::string method = "frame";
  std::vector<std::string> point;

  // selftest
  std::string fault;
  std::uint32_t seed = SelftestOptions{}.seed;
};

// Usage and input problems that map to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const Options& opt, std::ostream& out) {
  if (opt.output.empty() || opt.output == "-") {
    out << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    return;
  }
  std::ofstream file(opt.output);
  if (!file) throw UsageError("cannot write " + opt.output);
  file << text << '\n';
}

std::string render(const std::vector<Report>& reports, std::span<const std::string> names,
                   const std::string& format) {
  if (format == "json") return to_json(reports, names);
  std::string text;
  for (const auto& r : reports) text += to_text(r, names);
  return text;
}

bool all_pass(const std::vector<Report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.pass(); });
}

int verify(const Options& opt, std::ostream& out) {
  const Model model = load_model_file(opt.input, default_series_order(), opt.series_order);
  std::vector<std::string> checks = opt.checks;
  if (checks.empty()) checks = model.meta.checks;
  if (checks.empty()) checks = applicable_checks(model);
  const auto& known = check_names();
  for (const auto& c : checks) {
    if (std::find(known.begin(), known.end(), c) == known.end()) throw UsageError("unknown check '" + c + "'");
  }
  if (checks.empty()) throw UsageError("no check applies to this model");
  const auto reports = run_checks(model, checks);
  emit(render(reports, model.variables, opt.format), opt, out);
  return all_pass(reports) ? kExitPass : kExitFail;
}

Rational rational_arg(const std::optional<std::string>& s, const char* name) {
  try {
    return Rational::parse(*s);
  } catch (const Error&) {
    throw UsageError(std::string("--") + name + ": not a rational number: " + *s);
  }
}

int generate(const Options& opt, std::ostream& out) {
  FormSpec spec;
  spec.family = opt.family;
  spec.n = opt.n;
  if (opt.lambda0) spec.lambda0 = rational_arg(opt.lambda0, "lambda0");
  if (opt.a0) spec.a0 = rational_arg(opt.a0, "a0");
  if (opt.b0) spec.b0 = rational_arg(opt.b0, "b0");
  if (opt.d) spec.d = rational_arg(opt.d, "d");
  spec.k = opt.k;
  if (opt.sign) spec.sign = *opt.sign == "+" ? Sign::plus : Sign::minus;
  spec.f = opt.f;
  spec.g = opt.g;
  spec.F = opt.F;
  spec.series_order = opt.series_order;
  if (spec.family == "dim3-cor1" && !spec.series_order) spec.series_order = default_series_order();
  spec.variant = opt.variant == "canonical" ? JordanVariant::canonical : JordanVariant::first_section_print;
  emit(model_to_json(model_from_spec(spec)), opt, out);
  return kExitPass;
}

int derive(const Options& opt, std::ostream& out, std::ostream& err) {
  const Model model = load_model_file(opt.input, default_series_order(), opt.series_order);
  Model result;
  result.variables = model.variables;
  result.mode = model.mode;
  result.meta.family = model.meta.family;
  if (opt.method == "table") {
    const auto& m = model.meta;
    if (model.dim() != 3 || !m.k || !m.f || !(m.g || m.h)) {
      throw UsageError("--method table needs 3 variables and meta.k, meta.f and meta.g or meta.h");
    }
    const Sign sign = m.sign.value_or(Sign::plus);
    const HPairing pairing = m.pairing.value_or(HPairing::consistent);
    const RingElem f = parse_expression(*m.f, model.variables, model.mode);
    const RingElem h = m.h ? parse_expression(*m.h, model.variables, model.mode)
                           : thm6_h(*m.k, sign, f, parse_expression(*m.g, model.variables, model.mode), pairing);
    const Rational lambda0 = m.lambda0 ? Rational::parse(*m.lambda0) : Rational(0);
    result.circ = thm6_table(*m.k, sign, h);
    result.e = coordinate_field(3, 0);
    result.E = thm6_euler_field(lambda0, *m.k, f);
    result.L = operator_from_mult(*result.circ, *result.E);
    result.meta.k = m.k;
    result.meta.sign = sign;
    result.meta.pairing = pairing;
    result.meta.lambda0 = m.lambda0;
    result.meta.f = to_string(f, model.variables);
    result.meta.h = to_string(h, model.variables);
    result.meta.g = to_string(thm6_g(*m.k, sign, f, h, pairing), model.variables);
    result.meta.name = model.meta.name.empty() ? "structure-constants" : model.meta.name + " (table)";
  } else {
    if (!model.L || !model.e) throw UsageError("--method frame needs L and e");
    if (!opt.point.empty()) {
      if (opt.point.size() != model.dim()) throw UsageError("--point needs one coordinate per variable");
      std::vector<Rational> p;
      for (const auto& s : opt.point) p.push_back(rational_arg(s, "point"));
      const int order = opt.series_order.value_or(model.mode.series_order.value_or(default_series_order()));
      const FManifoldModel fm = frame_model_near(*model.L, *model.e, p, order);
      result.mode = RingMode::series(order);
      result.circ = fm.circ;
      result.e = fm.e;
      result.E = fm.E;
      std::string where;
      for (const auto& s : opt.point) where += (where.empty() ? "" : ",") + s;
      result.meta.name = (model.meta.name.empty() ? "frame" : model.meta.name) + " near (" + where +
                         "), shifted coordinates";
    } else {
      try {
        result.circ = multiplication_on_frame(*model.L, *model.e);
      } catch (const NotDivisible&) {
        err << "error: the product on the frame is not polynomial; expand it with --point\n";
        return kExitFail;
      }
      result.L = model.L;
      result.e = model.e;
      result.E = apply_operator(*model.L, *model.e);
      result.meta.name = model.meta.name.empty() ? "frame" : model.meta.name + " (frame)";
    }
  }
  emit(model_to_json(result), opt, out);
  return kExitPass;
}

int selftest(const Options& opt, std::ostream& out) {
  SelftestOptions so;
  so.inject_jordan_sign = opt.fault == "jordan-sign";
  so.seed = opt.seed;
  so.series_order = opt.series_order.value_or(default_series_order());
  const auto reports = run_selftest(so);
  emit(render(reports, {}, opt.format), opt, out);
  return all_pass(reports) ? kExitPass : kExitFail;
}

}  // namespace

int default_series_order() {
  const char* env = std::getenv(kSeriesOrderEnv);
  if (!env || !*env) return kDefaultSeriesOrder;
  std::size_t used = 0;
  int value = -1;
  try {
    value = std::stoi(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(env).size() || value < 0 || value > 1000) {
    throw std::invalid_argument(std::string(kSeriesOrderEnv) + " must be an integer in 0..1000");
  }
  return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verifier for Nijenhuis operators with unity and F-manifold structures", "nijenhuis"};
  app.require_subcommand(1);
  Options opt;

  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  };
  const auto add_order = [&](CLI::App* sub) {
    sub->add_option("--series-order", opt.series_order,
                    "Truncation order for series models (overrides the model and " +
                        std::string(kSeriesOrderEnv) + ")")
        ->check(CLI::Range(0, 1000));
  };

  auto* verify_cmd = app.add_subcommand("verify", "Run checks on a model file");
  verify_cmd->add_option("file", opt.input, "Model file (JSON)")->required();
  verify_cmd->add_option("--checks", opt.checks, "Comma-separated check names")->delimiter(',');
  add_format(verify_cmd);
  add_order(verify_cmd);
  verify_cmd->add_option("-o,--output", opt.output, "Write the report here instead of stdout");

  auto* gen_cmd = app.add_subcommand("generate", "Emit a normal form as a model file");
  gen_cmd->add_option("--family", opt.family, "Form family")->required()->check(CLI::IsMember(form_families()));
  gen_cmd->add_option("--n", opt.n, "Dimension (number of 2x2 blocks for complex families)")->check(CLI::Range(1, 20));
  gen_cmd->add_option("--lambda0", opt.lambda0, "Rational shift of the eigenvalue");
  gen_cmd->add_option("--a0", opt.a0, "Real part of the complex shift");
  gen_cmd->add_option("--b0", opt.b0, "Imaginary part of the complex shift (nonzero)");
  gen_cmd->add_option("--d", opt.d, "Parameter of the 2D case 2 form");
  gen_cmd->add_option("--k", opt.k, "Exponent k")->check(CLI::Range(1, 64));
  gen_cmd->add_option("--sign", opt.sign, "Sign in front of the power term")->check(CLI::IsMember({"+", "-"}));
  gen_cmd->add_option("--f", opt.f, "Function f (over x,y or x1,x2,x3)");
  gen_cmd->add_option("--g", opt.g, "Function g over x1,x2,x3");
  gen_cmd->add_option("--F", opt.F, "Polynomial F(t) for dim3-cor1");
  gen_cmd->add_option("--variant", opt.variant, "Sign variant of the Jordan family")
      ->check(CLI::IsMember({"canonical", "first-section-print"}));
  add_order(gen_cmd);
  gen_cmd->add_option("-o,--output", opt.output, "Output path");

  auto* derive_cmd = app.add_subcommand("derive", "Derive data from a model");
  auto* sc_cmd = derive_cmd->add_subcommand("structure-constants", "Structure constants of the product");
  derive_cmd->require_subcommand(1);
  sc_cmd->add_option("file", opt.input, "Model file (JSON)")->required();
  sc_cmd->add_option("--method", opt.method,
                     "frame: X_i o X_j = X_{i+j} from L and e; table: closed form from meta k, f, g/h")
      ->check(CLI::IsMember({"frame", "table"}));
  sc_cmd->add_option("--point", opt.point, "Expand around this point (comma-separated rationals)")->delimiter(',');
  add_order(sc_cmd);
  sc_cmd->add_option("-o,--output", opt.output, "Output path");

  auto* self_cmd = app.add_subcommand("selftest", "Run the built-in regression and property suites");
  self_cmd->add_option("--inject-fault", opt.fault, "Deliberately break a shipped form")
      ->check(CLI::IsMember({"jordan-sign"}));
  self_cmd->add_option("--seed", opt.seed, "Seed of the randomized suites");
  add_format(self_cmd);
  add_order(self_cmd);
  self_cmd->add_option("-o,--output", opt.output, "Write the report here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) return verify(opt, out);
    if (gen_cmd->parsed()) return generate(opt, out);
    if (sc_cmd->parsed()) return derive(opt, out, err);
    if (self_cmd->parsed()) return selftest(opt, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace nijenhuis::cli
