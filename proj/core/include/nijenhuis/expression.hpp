#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nijenhuis/rational.hpp"
#include "nijenhuis/ring.hpp"

namespace nijenhuis {

/// Target ring of an expression: exact polynomials, or series truncated at total degree N.
struct RingMode {
  std::optional<int> series_order;

  static RingMode poly() { return {}; }
  static RingMode series(int order) { return {order}; }
  bool is_series() const { return series_order.has_value(); }
  friend bool operator==(const RingMode&, const RingMode&) = default;
};

inline constexpr int kDefaultSeriesOrder = 8;

/// Expression tree produced by the recursive-descent parser.
///
/// Grammar (lowest to highest precedence):
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' integer)?
///   primary := integer | identifier | 'exp' '(' sum ')' | '(' sum ')'
/// The right operand of '/' must be constant; '^' takes a literal non-negative integer.
struct ExprNode {
  enum class Kind { literal, variable, add, sub, mul, div, neg, pow, exp_call };

  Kind kind = Kind::literal;
  Rational value;            // literal
  std::size_t variable = 0;  // variable index
  unsigned exponent = 0;     // pow
  std::size_t position = 0;  // offset in the source text
  std::vector<ExprNode> children;
};

ExprNode parse_ast(std::string_view source, std::span<const std::string> variables);

/// Lowers a tree into the ring. Throws ParseError for exp() in polynomial mode, exp() of an
/// argument with nonzero constant term, or division by a non-constant.
RingElem lower(const ExprNode& node, std::size_t num_vars, const RingMode& mode);

RingElem parse_expression(std::string_view source, std::span<const std::string> variables,
                          const RingMode& mode = RingMode::poly());

}  // namespace nijenhuis
