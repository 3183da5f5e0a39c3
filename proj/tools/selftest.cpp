#include "selftest.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <random>
#include <string>

#include "nijenhuis/errors.hpp"
#include "nijenhuis/expression.hpp"
#include "nijenhuis/fman.hpp"
#include "nijenhuis/forms.hpp"
#include "nijenhuis/verify.hpp"

namespace nijenhuis::cli {

namespace {

// Collects failed cases of one group; a case failure is a residual labelled by the case.
class Group {
 public:
  explicit Group(std::string name) : report_{std::move(name), {}, {}} {}

  void absorb(const std::string& label, const Report& r) {
    ++cases_;
    for (const auto& res : r.residuals) {
      report_.residuals.push_back({label + ":" + r.check + ":" + res.component, res.index, res.value});
    }
  }
  void expect(const std::string& label, bool ok) {
    ++cases_;
    if (!ok) report_.add(label, {}, RingElem::constant(0, 1));
  }
  void error(const std::string& label, const std::exception& err) {
    ++cases_;
    report_.add(label + ": " + err.what(), {}, RingElem::constant(0, 1));
  }
  Report finish() {
    report_.note(std::to_string(cases_) + " cases");
    return std::move(report_);
  }

 private:
  Report report_;
  int cases_ = 0;
};

struct NamedForm {
  std::string label;
  Form form;
  std::optional<std::pair<RingElem, RingElem>> thm4_data;  // (f, g)
  int k = 0;
};

RingElem x3var(std::size_t i) { return RingElem::variable(3, i); }

std::vector<NamedForm> regression_forms(const SelftestOptions& opt) {
  std::vector<NamedForm> out;
  const JordanVariant jv = opt.inject_jordan_sign ? JordanVariant::first_section_print
                                                  : JordanVariant::canonical;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const Rational& l0 : {Rational(0), Rational(1, 2)}) {
      const std::string tag = "(n=" + std::to_string(n) + ",lambda0=" + l0.to_string() + ")";
      out.push_back({"jordan" + tag, jordan_unity_form(n, l0, jv), {}, 0});
      out.push_back({"toeplitz" + tag, toeplitz_form(n, l0), {}, 0});
    }
    out.push_back({"companion(n=" + std::to_string(n) + ")", companion_dnd_form(n), {}, 0});
  }
  for (std::size_t s = 1; s <= 2; ++s) {
    const std::string tag = "(s=" + std::to_string(s) + ")";
    out.push_back({"complex-block" + tag, complex_block_form(s, Rational(1, 3), Rational(2)), {}, 0});
    out.push_back({"complex-toeplitz" + tag, complex_toeplitz_form(s, Rational(0), Rational(1)), {}, 0});
  }
  out.push_back({"dim2-case1", dim2_form(1, {Rational(1), {}, {}, {}, {}}), {}, 0});
  for (const Rational& d : {Rational(-1), Rational(0), Rational(3, 2)}) {
    out.push_back({"dim2-case2(d=" + d.to_string() + ")", dim2_form(2, {Rational(0), d, {}, {}, {}}), {}, 0});
  }
  const std::vector<std::string> xy = {"x", "y"};
  for (int k = 1; k <= 3; ++k) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      const std::string tag = "(k=" + std::to_string(k) + (s == Sign::plus ? ",+)" : ",-)");
      out.push_back({"dim2-case3" + tag, dim2_form(3, {Rational(0), {}, k, s, {}}), {}, 0});
    }
  }
  for (const char* f : {"0", "y", "1 + y^2"}) {
    out.push_back({std::string("dim2-case4(f=") + f + ")",
                   dim2_form(4, {Rational(0), {}, {}, {}, parse_expression(f, xy)}), {}, 0});
  }
  const RingElem x2 = x3var(1), x3 = x3var(2);
  const std::vector<std::string> t = {"t"};
  for (int k = 1; k <= 3; ++k) {
    const std::string tag = "(k=" + std::to_string(k) + ")";
    const RingElem zero(3);
    const RingElem g0 = x2.pow(static_cast<unsigned>(k - 1));
    const std::vector<std::pair<RingElem, RingElem>> data = {
        {zero, g0}, {x2 * x2 + Rational(1), Rational(2) * g0}, {Rational(1 - k, k) * x3, RingElem::constant(3, 1)}};
    for (std::size_t i = 0; i < data.size(); ++i) {
      Form f = dim3_thm4_form(k, Rational(0), Sign::plus, data[i].first, data[i].second);
      out.push_back({"dim3-thm4" + tag + "#" + std::to_string(i + 1), std::move(f), data[i], k});
    }
    for (const char* F : {"1", "t", "1 + t"}) {
      Form f = dim3_cor1_form(k, Rational(0), Sign::minus, parse_expression(F, t), opt.series_order);
      auto fg = std::make_pair(f.L(2, 0), f.L(2, 1));
      out.push_back({"dim3-cor1" + tag + "(F=" + F + ")", std::move(f), fg, k});
    }
  }
  return out;
}

Report form_matrix(const SelftestOptions& opt) {
  Group g("selftest:forms");
  for (const auto& nf : regression_forms(opt)) {
    const Form& f = nf.form;
    try {
      g.absorb(nf.label, check_nijenhuis(f.L));
      g.absorb(nf.label, check_unity(f.L, f.e));
      g.absorb(nf.label, check_trace_and_sigma(f.L, f.e));
      for (const auto& lambda : f.eigenvalues) g.absorb(nf.label, check_eigen_invariant(f.L, lambda));
      if (f.L.dim() <= 4) g.absorb(nf.label, check_frame_relations(f.L, f.e, f.L.dim() - 1));
      if (nf.thm4_data) {
        g.absorb(nf.label, check_pde_thm4(nf.thm4_data->first, nf.thm4_data->second, nf.k));
        g.expect(nf.label + ":discriminant", cubic_discriminant(char_coefficients(f.L)).is_zero());
      }
    } catch (const std::exception& err) {
      g.error(nf.label, err);
    }
  }
  return g.finish();
}

Report sign_variant() {
  Group g("selftest:jordan-sign");
  const Form canonical = jordan_unity_form(4, Rational(0));
  const Form printed = jordan_unity_form(4, Rational(0), JordanVariant::first_section_print);
  g.expect("canonical variant passes", check_nijenhuis(canonical.L).pass());
  g.expect("first-section variant fails", !check_nijenhuis(printed.L).pass());
  return g.finish();
}

Report fmanifold_family() {
  Group g("selftest:fmanifold");
  for (int k = 2; k <= 3; ++k) {
    for (int a = 0; a <= 2; ++a) {
      for (int c = 0; c <= 2; ++c) {
        for (Sign s : {Sign::plus, Sign::minus}) {
          const std::string label = "thm6(k=" + std::to_string(k) + ",a=" + std::to_string(a) +
                                    ",c=" + std::to_string(c) + (s == Sign::plus ? ",+)" : ",-)");
          try {
            const RingElem f = RingElem::constant(3, a);
            const RingElem h = Rational(c) * x3var(1).pow(static_cast<unsigned>(k - 2));
            g.absorb(label, check_pde_thm6(f, h, k, s));
            const Multiplication circ = thm6_table(k, s, h);
            const VectorField E = thm6_euler_field(Rational(0), k, f);
            g.absorb(label, check_fmanifold_axioms({circ, coordinate_field(3, 0), E}));
            const OperatorField L = operator_from_mult(circ, E);
            const Form expected = dim3_thm4_form(k, Rational(0), s, f, thm6_g(k, s, f, h));
            g.expect(label + ":round-trip", L == expected.L);
            g.absorb(label, check_nijenhuis(L));
          } catch (const std::exception& err) {
            g.error(label, err);
          }
        }
      }
    }
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::string label = "toeplitz-frame(n=" + std::to_string(n) + ")";
    try {
      const Form f = toeplitz_form(n, Rational(1));
      const Multiplication circ = multiplication_on_frame(f.L, f.e);
      const VectorField E = apply_operator(f.L, f.e);
      g.absorb(label, check_fmanifold_axioms({circ, f.e, E}));
      g.expect(label + ":operator", operator_from_mult(circ, E) == f.L);
    } catch (const std::exception& err) {
      g.error(label, err);
    }
  }
  return g.finish();
}

// Random polynomials with small coefficients, bounded degree and term count.
class Generator {
 public:
  explicit Generator(std::uint32_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational coefficient() {
    int num = uniform(-5, 5);
    if (num == 0) num = 1;
    return Rational(num, uniform(1, 3));
  }

  RingElem poly(std::size_t n, int max_terms, int max_degree) {
    TermMap terms;
    const int count = uniform(0, max_terms);
    for (int i = 0; i < count; ++i) {
      Exponent e(n, 0);
      int budget = uniform(0, max_degree);
      for (std::size_t v = 0; v < n && budget > 0; ++v) {
        const int d = uniform(0, budget);
        e[v] = static_cast<std::uint32_t>(d);
        budget -= d;
      }
      terms[e] += coefficient();
    }
    return RingElem::from_terms(n, terms);
  }

  OperatorField matrix(std::size_t n, int max_terms, int max_degree, int zero_percent) {
    OperatorField L(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (uniform(1, 100) > zero_percent) L(i, j) = poly(n, max_terms, max_degree);
      }
    }
    return L;
  }

 private:
  std::mt19937 rng_;
};

Report ring_suite(Generator& gen) {
  Group g("selftest:ring");
  const std::vector<std::string> names = {"x1", "x2", "x3"};
  for (int i = 0; i < 200; ++i) {
    const RingElem a = gen.poly(3, 5, 4), b = gen.poly(3, 5, 4), c = gen.poly(3, 5, 4);
    const std::string label = "case " + std::to_string(i);
    g.expect(label + ":commutative", a * b == b * a);
    g.expect(label + ":associative", (a * b) * c == a * (b * c));
    g.expect(label + ":distributive", a * (b + c) == a * b + a * c);
    g.expect(label + ":additive inverse", (a - a).is_zero());
    g.expect(label + ":leibniz", partial_derivative(a * b, 0) ==
                                     partial_derivative(a, 0) * b + a * partial_derivative(b, 0));
    g.expect(label + ":print-parse", parse_expression(to_string(a, names), names) == a);
  }
  const RingElem x = RingElem::variable(1, 0, 10);
  g.expect("exp(x) exp(-x) = 1", series_exp(x) * series_exp(-x) == RingElem::constant(1, 1, 10));
  return g.finish();
}

Report char_suite(Generator& gen) {
  Group g("selftest:char-coefficients");
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 4));
    const OperatorField L = gen.matrix(n, 2, 2, 30);
    const auto sigma = char_coefficients(L);
    // sigma_k = (-1)^k times the sum of principal k x k minors.
    for (std::size_t k = 1; k <= n; ++k) {
      RingElem sum(n);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
        std::vector<std::size_t> idx;
        for (std::size_t b = 0; b < n; ++b) {
          if (mask & (1u << b)) idx.push_back(b);
        }
        std::vector<std::vector<RingElem>> minor(k, std::vector<RingElem>(k));
        for (std::size_t r = 0; r < k; ++r) {
          for (std::size_t s = 0; s < k; ++s) minor[r][s] = L(idx[r], idx[s]);
        }
        sum += determinant(minor);
      }
      if (k % 2 == 1) sum = -sum;
      g.expect("case " + std::to_string(i) + ":sigma" + std::to_string(k), sigma[k - 1] == sum);
    }
  }
  return g.finish();
}

Report criterion_suite(Generator& gen) {
  Group g("selftest:2d-criterion");
  int agree_nijenhuis = 0;
  for (int i = 0; i < 60; ++i) {
    OperatorField L = gen.matrix(2, 2, 2, 40);
    if (i % 3 == 0) {
      // Diagonal with separated variables is always Nijenhuis.
      L = OperatorField(2);
      L(0, 0) = embed_variables(gen.poly(1, 3, 3), 2, std::vector<std::size_t>{0});
      L(1, 1) = embed_variables(gen.poly(1, 3, 3), 2, std::vector<std::size_t>{1});
    }
    const bool n = check_nijenhuis(L).pass();
    agree_nijenhuis += n ? 1 : 0;
    g.expect("case " + std::to_string(i), n == check_2d_criterion(L).pass());
  }
  g.expect("both verdicts occur", agree_nijenhuis > 0 && agree_nijenhuis < 60);
  return g.finish();
}

Report thm4_suite(Generator& gen) {
  Group g("selftest:thm4-biconditional");
  const RingElem x2 = x3var(1), x3 = x3var(2);
  const auto in_x2 = [&](int terms) {
    const RingElem p = gen.poly(1, terms, 3);
    return compose(p, std::vector<RingElem>{x2});
  };
  int satisfied = 0;
  for (int i = 0; i < 24; ++i) {
    const int k = gen.uniform(1, 3);
    const RingElem pk = x2.pow(static_cast<unsigned>(k - 1));
    RingElem f(3), gg(3);
    switch (i % 3) {
      case 0: f = in_x2(3); gg = Rational(gen.uniform(1, 4)) * pk; break;
      case 1: f = Rational(1 - k, k) * x3 + in_x2(3); gg = RingElem::constant(3, 1); break;
      default:
        f = in_x2(2) + embed_variables(gen.poly(2, 2, 2), 3, std::vector<std::size_t>{1, 2});
        gg = RingElem(3);
        break;
    }
    if (i >= 12) gg += x3 * x2 + Rational(gen.uniform(1, 3)) * x3 * x3;
    const bool pde = check_pde_thm4(f, gg, k).pass();
    satisfied += pde ? 1 : 0;
    const Form form = dim3_thm4_form(k, Rational(0), i % 2 ? Sign::plus : Sign::minus, f, gg);
    g.expect("case " + std::to_string(i), pde == check_nijenhuis(form.L).pass());
    g.expect("case " + std::to_string(i) + ":expected verdict", pde == (i < 12));
  }
  return g.finish();
}

}  // namespace

std::vector<Report> run_selftest(const SelftestOptions& options) {
  Generator gen(options.seed);
  std::vector<Report> out;
  out.push_back(form_matrix(options));
  out.push_back(sign_variant());
  out.push_back(fmanifold_family());
  out.push_back(ring_suite(gen));
  out.push_back(char_suite(gen));
  out.push_back(criterion_suite(gen));
  out.push_back(thm4_suite(gen));
  sort_reports(out);
  return out;
}

}  // namespace nijenhuis::cli
