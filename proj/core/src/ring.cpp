#include "nijenhuis/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nijenhuis/errors.hpp"

namespace nijenhuis {

namespace {

std::optional<int> min_order(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

void require_same_vars(const RingElem& a, const RingElem& b) {
  if (a.num_vars() != b.num_vars()) {
    throw DimensionError("variable count mismatch: " + std::to_string(a.num_vars()) + " vs " +
                         std::to_string(b.num_vars()));
  }
}

bool divides(const Exponent& small, const Exponent& big) {
  for (std::size_t i = 0; i < small.size(); ++i) {
    if (small[i] > big[i]) return false;
  }
  return true;
}

}  // namespace

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0U); }

RingElem::RingElem(std::size_t num_vars, std::optional<int> order)
    : num_vars_(num_vars), order_(order) {
  if (order_ && *order_ < 0) throw DomainError("negative truncation order");
}

RingElem RingElem::constant(std::size_t num_vars, const Rational& value,
                            std::optional<int> order) {
  RingElem r(num_vars, order);
  r.add_term(Exponent(num_vars, 0), value);
  return r;
}

RingElem RingElem::variable(std::size_t num_vars, std::size_t index, std::optional<int> order) {
  if (index >= num_vars) {
    throw DimensionError("variable index " + std::to_string(index) + " out of range");
  }
  Exponent e(num_vars, 0);
  e[index] = 1;
  RingElem r(num_vars, order);
  r.add_term(e, 1);
  return r;
}

RingElem RingElem::monomial(const Exponent& exponent, const Rational& coefficient,
                            std::optional<int> order) {
  RingElem r(exponent.size(), order);
  r.add_term(exponent, coefficient);
  return r;
}

RingElem RingElem::from_terms(std::size_t num_vars, const TermMap& terms,
                              std::optional<int> order) {
  RingElem r(num_vars, order);
  for (const auto& [e, c] : terms) {
    if (e.size() != num_vars) throw DimensionError("exponent length differs from variable count");
    r.add_term(e, c);
  }
  return r;
}

bool RingElem::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Rational RingElem::constant_term() const { return coefficient(Exponent(num_vars_, 0)); }

Rational RingElem::coefficient(const Exponent& exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational{} : it->second;
}

int RingElem::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(nijenhuis::total_degree(e)));
  return d;
}

bool RingElem::depends_on(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const auto& t) { return t.first[var] != 0; });
}

RingElem RingElem::truncated(int order) const {
  RingElem r = *this;
  r.order_ = min_order(order_, order);
  if (*r.order_ < 0) throw DomainError("negative truncation order");
  r.drop_above_order();
  return r;
}

RingElem RingElem::as_polynomial() const {
  RingElem r = *this;
  r.order_.reset();
  return r;
}

RingElem RingElem::pow(unsigned exponent) const {
  RingElem result = constant(num_vars_, 1, order_);
  RingElem base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

RingElem RingElem::operator-() const {
  RingElem r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

RingElem& RingElem::operator+=(const RingElem& other) {
  require_same_vars(*this, other);
  order_ = min_order(order_, other.order_);
  drop_above_order();
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& other) {
  require_same_vars(*this, other);
  order_ = min_order(order_, other.order_);
  drop_above_order();
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

RingElem& RingElem::operator*=(const RingElem& other) {
  *this = *this * other;
  return *this;
}

RingElem& RingElem::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  require_same_vars(a, b);
  RingElem r(a.num_vars_, min_order(a.order_, b.order_));
  Exponent e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      unsigned degree = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        degree += e[i];
      }
      if (r.order_ && static_cast<int>(degree) > *r.order_) continue;
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

RingElem operator+(const RingElem& a, const Rational& c) {
  return a + RingElem::constant(a.num_vars(), c);
}

RingElem operator-(const RingElem& a, const Rational& c) {
  return a - RingElem::constant(a.num_vars(), c);
}

void RingElem::add_term(const Exponent& exponent, const Rational& coefficient) {
  if (coefficient.is_zero()) return;
  if (exponent.size() != num_vars_) {
    throw DimensionError("exponent length differs from variable count");
  }
  if (order_ && static_cast<int>(nijenhuis::total_degree(exponent)) > *order_) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void RingElem::drop_above_order() {
  if (!order_) return;
  std::erase_if(terms_, [this](const auto& t) {
    return static_cast<int>(nijenhuis::total_degree(t.first)) > *order_;
  });
}

RingElem poly_arith(const RingElem& a, const RingElem& b, ArithOp op) {
  require_same_vars(a, b);
  if (a.is_series() && b.is_series() && a.order() != b.order()) {
    throw OrderMismatch("truncation order mismatch: " + std::to_string(*a.order()) + " vs " +
                        std::to_string(*b.order()));
  }
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
  }
  return a;
}

RingElem partial_derivative(const RingElem& p, std::size_t var) {
  if (var >= p.num_vars()) {
    throw DimensionError("derivative variable " + std::to_string(var) + " out of range");
  }
  std::optional<int> order = p.order();
  if (order) {
    if (*order == 0) throw DomainError("derivative of an order-0 series carries no information");
    *order -= 1;
  }
  TermMap out;
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.emplace(std::move(d), c * Rational(e[var]));
  }
  return RingElem::from_terms(p.num_vars(), out, order);
}

RingElem compose(const RingElem& p, std::span<const RingElem> images) {
  if (images.size() != p.num_vars()) {
    throw DimensionError("composition needs one image per variable");
  }
  const std::size_t target_vars = images.empty() ? 0 : images.front().num_vars();
  std::optional<int> order = p.order();
  for (const auto& img : images) {
    if (img.num_vars() != target_vars) {
      throw DimensionError("composition images live in different rings");
    }
    order = min_order(order, img.order());
  }
  if (p.is_series()) {
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (p.depends_on(i) && !images[i].constant_term().is_zero()) {
        throw DomainError("substituting a nonzero constant term into a truncated series");
      }
    }
  }

  std::vector<unsigned> max_power(p.num_vars(), 0);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) max_power[i] = std::max(max_power[i], e[i]);
  }
  std::vector<std::vector<RingElem>> powers(p.num_vars());
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    RingElem base = order ? images[i].truncated(*order) : images[i];
    powers[i].push_back(RingElem::constant(target_vars, 1, order));
    for (unsigned k = 1; k <= max_power[i]; ++k) powers[i].push_back(powers[i].back() * base);
  }

  RingElem result(target_vars, order);
  for (const auto& [e, c] : p.terms()) {
    RingElem term = RingElem::constant(target_vars, c, order);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term *= powers[i][e[i]];
    }
    result += term;
  }
  return result;
}

RingElem substitute(const RingElem& p, const std::map<std::size_t, RingElem>& assignments) {
  std::vector<RingElem> images;
  images.reserve(p.num_vars());
  for (const auto& [var, img] : assignments) {
    if (var >= p.num_vars()) {
      throw DimensionError("substitution variable " + std::to_string(var) + " out of range");
    }
    if (img.num_vars() != p.num_vars()) {
      throw DimensionError("substitution image lives in a ring with " +
                           std::to_string(img.num_vars()) + " variables, expected " +
                           std::to_string(p.num_vars()));
    }
  }
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    const auto it = assignments.find(i);
    images.push_back(it != assignments.end() ? it->second
                                             : RingElem::variable(p.num_vars(), i));
  }
  return compose(p, images);
}

RingElem series_exp(const RingElem& p) {
  if (!p.is_series()) throw DomainError("series_exp needs a truncated series");
  if (!p.constant_term().is_zero()) {
    throw DomainError("series_exp argument has a nonzero constant term");
  }
  const int order = *p.order();
  RingElem result = RingElem::constant(p.num_vars(), 1, order);
  RingElem term = result;
  for (int m = 1; m <= order; ++m) {
    term = term * p * Rational(1, m);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

RingElem series_inverse(const RingElem& p) {
  if (!p.is_series()) throw DomainError("series_inverse needs a truncated series");
  const Rational c = p.constant_term();
  if (c.is_zero()) throw DomainError("series_inverse argument has a zero constant term");
  const int order = *p.order();
  const Rational inv_c = Rational(1) / c;
  // 1/(c + q) = (1/c) sum (-q/c)^m, and q has no constant term.
  const RingElem step = (p - RingElem::constant(p.num_vars(), c, order)) * (-inv_c);
  RingElem result = RingElem::constant(p.num_vars(), 1, order);
  RingElem term = result;
  for (int m = 1; m <= order; ++m) {
    term = term * step;
    if (term.is_zero()) break;
    result += term;
  }
  return result * inv_c;
}

Rational evaluate(const RingElem& p, std::span<const Rational> point) {
  if (point.size() != p.num_vars()) {
    throw DimensionError("evaluation point has " + std::to_string(point.size()) +
                         " coordinates, expected " + std::to_string(p.num_vars()));
  }
  Rational value;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
      if (e[i] != 0) term *= point[i].pow(e[i]);
    }
    value += term;
  }
  return value;
}

RingElem divide_exact(const RingElem& numerator, const RingElem& divisor) {
  require_same_vars(numerator, divisor);
  if (divisor.is_zero()) throw DomainError("division by the zero element");
  if (divisor.is_constant()) {
    if (divisor.is_series() && !numerator.is_series()) {
      return numerator.truncated(*divisor.order()) * (Rational(1) / divisor.constant_term());
    }
    return numerator * (Rational(1) / divisor.constant_term());
  }

  if (numerator.is_series() || divisor.is_series()) {
    if (divisor.is_series() || divisor.term_count() != 1) {
      throw DomainError("series division only by an exact monomial");
    }
    const auto& [de, dc] = *divisor.terms().begin();
    const int shift = static_cast<int>(total_degree(de));
    const int order = *numerator.order() - shift;
    if (order < 0) throw DomainError("division exhausts the truncation order");
    TermMap out;
    for (const auto& [e, c] : numerator.terms()) {
      if (!divides(de, e)) {
        throw NotDivisible("series term not divisible by the monomial divisor");
      }
      Exponent q = e;
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= de[i];
      out.emplace(std::move(q), c / dc);
    }
    return RingElem::from_terms(numerator.num_vars(), out, order);
  }

  // Multivariate division with respect to lex order; exact divisibility means every
  // leading term of the running remainder is a multiple of the divisor's leading term.
  const auto& [lead_e, lead_c] = *divisor.terms().rbegin();
  RingElem remainder = numerator;
  RingElem quotient(numerator.num_vars());
  while (!remainder.is_zero()) {
    const auto& [re, rc] = *remainder.terms().rbegin();
    if (!divides(lead_e, re)) throw NotDivisible("polynomial is not divisible by the divisor");
    Exponent qe = re;
    for (std::size_t i = 0; i < qe.size(); ++i) qe[i] -= lead_e[i];
    const RingElem step = RingElem::monomial(qe, rc / lead_c);
    quotient += step;
    remainder -= step * divisor;
  }
  return quotient;
}

RingElem restrict_variables(const RingElem& p, std::span<const std::size_t> keep) {
  std::vector<bool> kept(p.num_vars(), false);
  for (std::size_t v : keep) {
    if (v >= p.num_vars()) throw DimensionError("kept variable out of range");
    kept[v] = true;
  }
  for (std::size_t v = 0; v < p.num_vars(); ++v) {
    if (!kept[v] && p.depends_on(v)) {
      throw DomainError("element depends on variable " + std::to_string(v + 1) +
                        " which is being dropped");
    }
  }
  TermMap out;
  for (const auto& [e, c] : p.terms()) {
    Exponent r(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) r[i] = e[keep[i]];
    out.emplace(std::move(r), c);
  }
  return RingElem::from_terms(keep.size(), out, p.order());
}

RingElem embed_variables(const RingElem& p, std::size_t num_vars,
                         std::span<const std::size_t> positions) {
  if (positions.size() != p.num_vars()) {
    throw DimensionError("embedding needs one position per variable");
  }
  TermMap out;
  for (const auto& [e, c] : p.terms()) {
    Exponent r(num_vars, 0);
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (positions[i] >= num_vars) throw DimensionError("embedding position out of range");
      r[positions[i]] += e[i];
    }
    out.emplace(std::move(r), c);
  }
  return RingElem::from_terms(num_vars, out, p.order());
}

std::string to_string(const RingElem& p, std::span<const std::string> names) {
  std::vector<std::string> fallback;
  if (names.empty()) {
    fallback = default_names(p.num_vars());
    names = fallback;
  }
  if (names.size() != p.num_vars()) throw DimensionError("name list length mismatch");
  if (p.is_zero()) return "0";

  std::ostringstream out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c.sign() < 0;
    const Rational magnitude = negative ? -c : c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      factors.push_back(e[i] == 1 ? names[i] : names[i] + "^" + std::to_string(e[i]));
    }
    if (factors.empty() || !magnitude.is_one()) {
      out << magnitude.to_string();
      if (!factors.empty()) out << '*';
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) out << '*';
      out << factors[i];
    }
  }
  return out.str();
}

std::vector<std::string> default_names(std::size_t num_vars, const std::string& stem) {
  std::vector<std::string> names;
  names.reserve(num_vars);
  for (std::size_t i = 0; i < num_vars; ++i) names.push_back(stem + std::to_string(i + 1));
  return names;
}

}  // namespace nijenhuis
