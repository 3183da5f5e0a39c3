#include "nijenhuis/forms.hpp"

#include <algorithm>
#include <set>

#include "nijenhuis/errors.hpp"

namespace nijenhuis {

namespace {

std::vector<std::string> indexed_names(const std::string& stem, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

RingElem var(std::size_t n, std::size_t i) { return RingElem::variable(n, i); }
RingElem cst(std::size_t n, const Rational& c) { return RingElem::constant(n, c); }

// 2x2 block with rows [[a, -b], [b, a]] at block position (P, Q).
void put_block(OperatorField& L, std::size_t P, std::size_t Q, const RingElem& a,
               const RingElem& b) {
  L(2 * P, 2 * Q) += a;
  L(2 * P, 2 * Q + 1) -= b;
  L(2 * P + 1, 2 * Q) += b;
  L(2 * P + 1, 2 * Q + 1) += a;
}

std::vector<std::string> complex_names(std::size_t s) {
  std::vector<std::string> names;
  for (std::size_t p = 1; p <= s; ++p) {
    names.push_back("x" + std::to_string(p));
    names.push_back("y" + std::to_string(p));
  }
  return names;
}

Form complex_base(std::size_t s, const Rational& a0, const Rational& b0, OperatorField& L) {
  if (s == 0) throw DomainError("s must be positive");
  if (b0.is_zero()) throw DomainError("b0 must be nonzero for a complex eigenvalue");
  const std::size_t n = 2 * s;
  L = OperatorField(n);
  for (std::size_t P = 0; P < s; ++P) put_block(L, P, P, var(n, 0) + a0, var(n, 1) + b0);
  Form form;
  form.e = coordinate_field(n, 0);
  form.variables = complex_names(s);
  return form;
}

RingMode mode_of(const OperatorField& L) {
  std::optional<int> order;
  for (std::size_t i = 0; i < L.dim(); ++i) {
    for (std::size_t j = 0; j < L.dim(); ++j) {
      if (auto o = L(i, j).order()) order = order ? std::min(*order, *o) : *o;
    }
  }
  return order ? RingMode::series(*order) : RingMode::poly();
}

}  // namespace

Form jordan_unity_form(std::size_t n, const Rational& lambda0, JordanVariant variant) {
  if (n == 0) throw DomainError("n must be positive");
  Form form;
  form.L = OperatorField(n);
  for (std::size_t i = 0; i < n; ++i) {
    form.L(i, i) = var(n, 0) + lambda0;
    if (i + 1 < n) form.L(i + 1, i) = cst(n, 1);
  }
  for (std::size_t p = 3; p <= n; ++p) {
    Rational coefficient(-static_cast<long>(p - 2));
    if (variant == JordanVariant::first_section_print && p == n) coefficient = -coefficient;
    form.L(p - 1, 0) = coefficient * var(n, p - 1);
  }
  form.e = coordinate_field(n, 0);
  form.variables = indexed_names("u", n);
  form.eigenvalues = {var(n, 0) + lambda0};
  return form;
}

Form toeplitz_form(std::size_t n, const Rational& lambda0) {
  if (n == 0) throw DomainError("n must be positive");
  Form form;
  form.L = OperatorField(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const std::size_t m = i - j;
      RingElem entry = var(n, m);
      if (m == 0) entry = entry + lambda0;
      if (m == 1) entry = entry + Rational(1);
      form.L(i, j) = std::move(entry);
    }
  }
  form.e = coordinate_field(n, 0);
  form.variables = indexed_names("u", n);
  form.eigenvalues = {var(n, 0) + lambda0};
  return form;
}

Form complex_block_form(std::size_t s, const Rational& a0, const Rational& b0) {
  OperatorField L;
  Form form = complex_base(s, a0, b0, L);
  const std::size_t n = 2 * s;
  for (std::size_t P = 1; P < s; ++P) put_block(L, P, P - 1, cst(n, 1), RingElem(n));
  for (std::size_t p = 3; p <= s; ++p) {
    const Rational c(-static_cast<long>(p - 2));
    put_block(L, p - 1, 0, c * var(n, 2 * (p - 1)), c * var(n, 2 * (p - 1) + 1));
  }
  form.L = std::move(L);
  return form;
}

Form complex_toeplitz_form(std::size_t s, const Rational& a0, const Rational& b0) {
  OperatorField L;
  Form form = complex_base(s, a0, b0, L);
  const std::size_t n = 2 * s;
  for (std::size_t P = 1; P < s; ++P) {
    for (std::size_t Q = 0; Q < P; ++Q) {
      const std::size_t m = P - Q;  // block C^{m+1}
      RingElem a = var(n, 2 * m);
      if (m == 1) a = a + Rational(1);
      put_block(L, P, Q, a, var(n, 2 * m + 1));
    }
  }
  form.L = std::move(L);
  return form;
}

Form companion_dnd_form(std::size_t n) {
  if (n == 0) throw DomainError("n must be positive");
  Form form;
  form.L = OperatorField(n);
  form.e = VectorField(n);
  for (std::size_t i = 0; i < n; ++i) {
    form.L(i, 0) = var(n, i);
    if (i + 1 < n) form.L(i, i + 1) = cst(n, 1);
  }
  form.e[0] = cst(n, static_cast<long>(n));
  for (std::size_t i = 1; i < n; ++i) form.e[i] = Rational(-static_cast<long>(n - i)) * var(n, i - 1);
  form.variables = indexed_names("u", n);
  return form;
}

Form dim2_form(int which, const Dim2Params& params) {
  const bool want_d = which == 2;
  const bool want_k = which == 3;
  const bool want_f = which == 4;
  if (which < 1 || which > 4) throw DomainError("2D case must be 1..4");
  if (params.d.has_value() != want_d) throw DomainError("parameter d applies to case 2 only");
  if (params.k.has_value() != want_k || params.sign.has_value() != want_k) {
    throw DomainError("parameters k and sign apply to case 3 only");
  }
  if (params.f.has_value() != want_f) throw DomainError("parameter f applies to case 4 only");

  const std::size_t n = 2;
  const RingElem x = var(n, 0);
  const RingElem y = var(n, 1);
  Form form;
  form.L = OperatorField(n);
  form.L(0, 0) = x + params.lambda0;
  form.L(1, 1) = x + params.lambda0;
  switch (which) {
    case 2:
      form.L(0, 1) = cst(n, Rational(-1, 2));
      form.L(1, 0) = Rational(2) * (y + *params.d);
      break;
    case 3: {
      const int k = *params.k;
      if (k < 1) throw DomainError("k must be a positive integer");
      form.L(0, 1) = Rational(-sign_value(*params.sign) * k, 2) * y.pow(static_cast<unsigned>(k - 1));
      form.L(1, 0) = Rational(2, k) * y;
      break;
    }
    case 4:
      if (params.f->num_vars() != n) throw DimensionError("f must be a function of (x, y)");
      if (params.f->depends_on(0)) throw DomainError("f must not depend on x for e = d/dx");
      form.L(1, 0) = *params.f;
      break;
    default:
      break;
  }
  form.e = coordinate_field(n, 0);
  form.variables = {"x", "y"};
  form.mode = mode_of(form.L);
  if (which == 1) form.eigenvalues = {x + params.lambda0};
  return form;
}

Form dim3_thm4_form(int k, const Rational& lambda0, Sign sign, const RingElem& f,
                    const RingElem& g) {
  if (k < 1) throw DomainError("k must be a positive integer");
  const std::size_t n = 3;
  const RingElem x1 = var(n, 0);
  const RingElem x2 = var(n, 1);
  const RingElem lambda = x1 + lambda0;
  const RingElem mu = Rational(sign_value(sign)) * x2.pow(static_cast<unsigned>(k)) + lambda;
  Form form;
  form.L = OperatorField(n);
  form.L(0, 0) = lambda;
  form.L(1, 0) = Rational(1, k) * x2;
  form.L(1, 1) = mu;
  form.L(2, 0) = lift_to_dim3(f);
  form.L(2, 1) = lift_to_dim3(g);
  form.L(2, 2) = mu;
  form.e = coordinate_field(n, 0);
  form.variables = {"x1", "x2", "x3"};
  form.mode = mode_of(form.L);
  form.eigenvalues = {lambda, mu};
  return form;
}

RingElem cor1_parameter(int k, const RingElem& F, int order) {
  if (k < 1) throw DomainError("k must be a positive integer");
  if (F.num_vars() != 1 || F.is_series()) throw DomainError("F must be a polynomial in one variable");
  const std::size_t n = 3;
  const RingElem x2 = RingElem::variable(n, 1, order);
  const RingElem x3 = RingElem::variable(n, 2, order);
  const RingElem argument = x2 * series_exp(Rational(-1, k) * x3);
  const RingElem images[] = {argument};
  return compose(F, images) * series_exp(Rational(k - 1, k) * x3);
}

Form dim3_cor1_form(int k, const Rational& lambda0, Sign sign, const RingElem& F, int order) {
  Form form = dim3_thm4_form(k, lambda0, sign, RingElem::constant(3, 1), cor1_parameter(k, F, order));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) form.L(i, j) = form.L(i, j).truncated(order);
    form.e[i] = form.e[i].truncated(order);
  }
  form.mode = RingMode::series(order);
  return form;
}

Form dim3_cor2_form(int k, const Rational& lambda0, Sign sign) {
  if (k < 1) throw DomainError("k must be a positive integer");
  return dim3_thm4_form(k, lambda0, sign, Rational(1 - k, k) * var(3, 2), RingElem::constant(3, 1));
}

const std::vector<std::string>& form_families() {
  static const std::vector<std::string> families = {
      "jordan",     "toeplitz",   "complex-block", "complex-toeplitz", "companion",
      "dim2-case1", "dim2-case2", "dim2-case3",    "dim2-case4",       "dim3-thm4",
      "dim3-cor1",  "dim3-cor2"};
  return families;
}

Form build_form(const FormSpec& spec) {
  const auto& families = form_families();
  if (std::find(families.begin(), families.end(), spec.family) == families.end()) {
    throw DomainError("unknown family '" + spec.family + "'");
  }
  const std::string& fam = spec.family;
  std::set<std::string> allowed;
  if (fam == "jordan" || fam == "toeplitz") allowed = {"n", "lambda0"};
  else if (fam == "complex-block" || fam == "complex-toeplitz") allowed = {"n", "a0", "b0"};
  else if (fam == "companion") allowed = {"n"};
  else if (fam == "dim2-case1") allowed = {"lambda0"};
  else if (fam == "dim2-case2") allowed = {"lambda0", "d"};
  else if (fam == "dim2-case3") allowed = {"lambda0", "k", "sign"};
  else if (fam == "dim2-case4") allowed = {"lambda0", "f", "series_order"};
  else if (fam == "dim3-thm4") allowed = {"lambda0", "k", "sign", "f", "g", "series_order"};
  else if (fam == "dim3-cor1") allowed = {"lambda0", "k", "sign", "F", "series_order"};
  else if (fam == "dim3-cor2") allowed = {"lambda0", "k", "sign"};

  const std::pair<const char*, bool> present[] = {
      {"n", spec.n.has_value()},         {"lambda0", spec.lambda0.has_value()},
      {"a0", spec.a0.has_value()},       {"b0", spec.b0.has_value()},
      {"d", spec.d.has_value()},         {"k", spec.k.has_value()},
      {"sign", spec.sign.has_value()},   {"f", spec.f.has_value()},
      {"g", spec.g.has_value()},         {"F", spec.F.has_value()},
      {"series_order", spec.series_order.has_value()}};
  for (const auto& [name, set] : present) {
    if (set && !allowed.count(name)) {
      throw DomainError(std::string("parameter '") + name + "' does not apply to family " + fam);
    }
  }
  if (spec.variant != JordanVariant::canonical && fam != "jordan") {
    throw DomainError("the sign variant applies to the jordan family only");
  }
  const auto require = [&](bool has, const char* name) {
    if (!has) throw DomainError(std::string("family ") + fam + " needs parameter '" + name + "'");
  };
  const Rational lambda0 = spec.lambda0.value_or(Rational(0));
  const RingMode mode = spec.series_order ? RingMode::series(*spec.series_order) : RingMode::poly();

  if (fam == "jordan" || fam == "toeplitz" || fam == "companion" || fam == "complex-block" ||
      fam == "complex-toeplitz") {
    require(spec.n.has_value(), "n");
  }
  if (fam == "jordan") return jordan_unity_form(*spec.n, lambda0, spec.variant);
  if (fam == "toeplitz") return toeplitz_form(*spec.n, lambda0);
  if (fam == "companion") return companion_dnd_form(*spec.n);
  if (fam == "complex-block" || fam == "complex-toeplitz") {
    require(spec.b0.has_value(), "b0");
    const Rational a0 = spec.a0.value_or(Rational(0));
    return fam == "complex-block" ? complex_block_form(*spec.n, a0, *spec.b0)
                                  : complex_toeplitz_form(*spec.n, a0, *spec.b0);
  }
  if (fam.rfind("dim2-case", 0) == 0) {
    const int which = fam.back() - '0';
    Dim2Params params;
    params.lambda0 = lambda0;
    params.d = spec.d;
    params.k = spec.k;
    if (which == 2) require(spec.d.has_value(), "d");
    if (which == 3) {
      require(spec.k.has_value(), "k");
      params.sign = spec.sign.value_or(Sign::plus);
    }
    if (which == 4) {
      require(spec.f.has_value(), "f");
      const std::vector<std::string> names = {"x", "y"};
      params.f = parse_expression(*spec.f, names, mode);
    }
    return dim2_form(which, params);
  }
  require(spec.k.has_value(), "k");
  const Sign sign = spec.sign.value_or(Sign::plus);
  if (fam == "dim3-cor2") return dim3_cor2_form(*spec.k, lambda0, sign);
  if (fam == "dim3-cor1") {
    require(spec.F.has_value(), "F");
    const std::vector<std::string> t = {"t"};
    const RingElem F = parse_expression(*spec.F, t);
    return dim3_cor1_form(*spec.k, lambda0, sign, F,
                          spec.series_order.value_or(kDefaultSeriesOrder));
  }
  require(spec.f.has_value(), "f");
  require(spec.g.has_value(), "g");
  const std::vector<std::string> names = {"x1", "x2", "x3"};
  return dim3_thm4_form(*spec.k, lambda0, sign, parse_expression(*spec.f, names, mode),
                        parse_expression(*spec.g, names, mode));
}

}  // namespace nijenhuis
