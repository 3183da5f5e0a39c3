#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nijenhuis/rational.hpp"

namespace nijenhuis {

/// Exponent vector of a monomial; its length is the number of ring variables.
using Exponent = std::vector<std::uint32_t>;

/// Sparse term storage, ordered lexicographically by exponent (x1 > x2 > ... > xn).
using TermMap = std::map<Exponent, Rational>;

unsigned total_degree(const Exponent& e);

/// Element of Q[x1..xn] or of the total-degree-truncated series ring Q[[x1..xn]]/(deg > N).
///
/// A polynomial is exact. A series carries a truncation order N: only terms of total degree
/// <= N are meaningful and stored. The arithmetic operators track precision: the result of
/// combining a series of order N with a series of order M has order min(N, M), and a
/// polynomial mixes with a series as an exact value. `poly_arith` is the strict variant that
/// rejects differing orders.
///
/// Values are immutable through the public interface (all operators return new values).
class RingElem {
 public:
  /// Zero element with `num_vars` variables; a series when `order` is set.
  explicit RingElem(std::size_t num_vars = 0, std::optional<int> order = std::nullopt);

  static RingElem constant(std::size_t num_vars, const Rational& value,
                           std::optional<int> order = std::nullopt);
  static RingElem variable(std::size_t num_vars, std::size_t index,
                           std::optional<int> order = std::nullopt);
  static RingElem monomial(const Exponent& exponent, const Rational& coefficient,
                           std::optional<int> order = std::nullopt);
  static RingElem from_terms(std::size_t num_vars, const TermMap& terms,
                             std::optional<int> order = std::nullopt);

  std::size_t num_vars() const { return num_vars_; }
  std::optional<int> order() const { return order_; }
  bool is_series() const { return order_.has_value(); }

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponent& exponent) const;
  /// Highest total degree among stored terms, -1 for zero.
  int total_degree() const;
  bool depends_on(std::size_t var) const;

  /// Series of order `order` holding the terms of degree <= order. Never raises the order
  /// of an existing series.
  RingElem truncated(int order) const;
  /// Same terms, exact polynomial (drops the truncation marker).
  RingElem as_polynomial() const;

  RingElem pow(unsigned exponent) const;

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& other);
  RingElem& operator-=(const RingElem& other);
  RingElem& operator*=(const RingElem& other);
  RingElem& operator*=(const Rational& scalar);

  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  friend RingElem operator*(RingElem a, const Rational& s) { return a *= s; }
  friend RingElem operator*(const Rational& s, RingElem a) { return a *= s; }
  friend RingElem operator+(const RingElem& a, const Rational& c);
  friend RingElem operator-(const RingElem& a, const Rational& c);

  /// Equal variable count, truncation order and terms.
  friend bool operator==(const RingElem& a, const RingElem& b) = default;

 private:
  void add_term(const Exponent& exponent, const Rational& coefficient);
  void drop_above_order();

  std::size_t num_vars_ = 0;
  std::optional<int> order_;
  TermMap terms_;
};

enum class ArithOp { add, sub, mul };

/// Strict binary arithmetic: operands must share the variable count and, when both are
/// series, the truncation order. Throws DimensionError / OrderMismatch.
RingElem poly_arith(const RingElem& a, const RingElem& b, ArithOp op);

/// Formal partial derivative. A series of order N yields a series of order N - 1;
/// differentiating an order-0 series throws DomainError.
RingElem partial_derivative(const RingElem& p, std::size_t var);

/// Replaces each variable of `p` by its image. `images.size()` must equal p.num_vars() and
/// all images must share one variable count (the result ring).
RingElem compose(const RingElem& p, std::span<const RingElem> images);

/// Replaces the listed variables; the others stay, so every image must live in p's ring.
RingElem substitute(const RingElem& p, const std::map<std::size_t, RingElem>& assignments);

/// exp(p) = sum_{m=0}^{N} p^m / m! for a series p with zero constant term.
RingElem series_exp(const RingElem& p);

/// 1/p for a series p with nonzero constant term, to p's order.
RingElem series_inverse(const RingElem& p);

/// Exact value at a rational point (stored terms only for a series).
Rational evaluate(const RingElem& p, std::span<const Rational> point);

/// Quotient q with q * divisor == numerator, or NotDivisible. For a series numerator the
/// divisor must be an exact monomial and the quotient loses deg(divisor) orders.
RingElem divide_exact(const RingElem& numerator, const RingElem& divisor);

/// Moves `p` into a ring of `keep.size()` variables, new variable i being old variable
/// keep[i]. Throws DomainError if p depends on a variable that is not kept.
RingElem restrict_variables(const RingElem& p, std::span<const std::size_t> keep);

/// Moves `p` into a ring of `num_vars` variables, old variable i becoming positions[i].
RingElem embed_variables(const RingElem& p, std::size_t num_vars,
                         std::span<const std::size_t> positions);

/// Canonical printer, readable back by the expression parser. An empty `names` span uses
/// x1..xn. Series print their stored terms only.
std::string to_string(const RingElem& p, std::span<const std::string> names = {});

std::vector<std::string> default_names(std::size_t num_vars, const std::string& stem = "x");

}  // namespace nijenhuis
