#include "nijenhuis/expression.hpp"

#include <cctype>
#include <limits>

#include "nijenhuis/errors.hpp"

namespace nijenhuis {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view source, std::span<const std::string> variables)
      : src_(source), vars_(variables) {}

  ExprNode parse() {
    ExprNode root = sum();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return root;
  }

 private:
  ExprNode sum() {
    ExprNode left = product();
    for (;;) {
      skip_space();
      if (!at('+') && !at('-')) return left;
      const std::size_t where = pos_;
      const bool plus = src_[pos_++] == '+';
      left = binary(plus ? ExprNode::Kind::add : ExprNode::Kind::sub, std::move(left), product(),
                    where);
    }
  }

  ExprNode product() {
    ExprNode left = unary();
    for (;;) {
      skip_space();
      if (!at('*') && !at('/')) return left;
      const std::size_t where = pos_;
      const bool times = src_[pos_++] == '*';
      if (times && at('*')) fail("'**' is not an operator, use '^'");
      left = binary(times ? ExprNode::Kind::mul : ExprNode::Kind::div, std::move(left), unary(),
                    where);
    }
  }

  ExprNode unary() {
    skip_space();
    if (at('-') || at('+')) {
      const std::size_t where = pos_;
      const bool minus = src_[pos_++] == '-';
      ExprNode operand = unary();
      if (!minus) return operand;
      ExprNode node;
      node.kind = ExprNode::Kind::neg;
      node.position = where;
      node.children.push_back(std::move(operand));
      return node;
    }
    return power();
  }

  ExprNode power() {
    ExprNode base = primary();
    skip_space();
    if (!at('^')) return base;
    const std::size_t where = pos_++;
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == '-') fail("negative exponents are not supported");
    if (pos_ >= src_.size() || !is_digit(src_[pos_])) fail("exponent must be an integer literal");
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    const std::string digits(src_.substr(start, pos_ - start));
    if (digits.size() > 6) fail("exponent too large", start);
    ExprNode node;
    node.kind = ExprNode::Kind::pow;
    node.position = where;
    node.exponent = static_cast<unsigned>(std::stoul(digits));
    node.children.push_back(std::move(base));
    skip_space();
    if (at('^')) fail("chained '^' is ambiguous, add parentheses");
    return node;
  }

  ExprNode primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (is_digit(c)) {
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
        fail("floating-point literals are not supported");
      }
      ExprNode node;
      node.kind = ExprNode::Kind::literal;
      node.position = start;
      node.value = Rational::parse(src_.substr(start, pos_ - start));
      return node;
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      const std::string name(src_.substr(start, pos_ - start));
      skip_space();
      if (name == "exp") {
        if (!at('(')) fail("'exp' must be called with parentheses", start);
        ++pos_;
        ExprNode arg = sum();
        expect(')');
        ExprNode node;
        node.kind = ExprNode::Kind::exp_call;
        node.position = start;
        node.children.push_back(std::move(arg));
        return node;
      }
      if (at('(')) fail("unknown function '" + name + "'", start);
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) {
          ExprNode node;
          node.kind = ExprNode::Kind::variable;
          node.variable = i;
          node.position = start;
          return node;
        }
      }
      fail("unknown identifier '" + name + "'", start);
    }
    if (c == '(') {
      ++pos_;
      ExprNode inner = sum();
      expect(')');
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  static ExprNode binary(ExprNode::Kind kind, ExprNode left, ExprNode right, std::size_t where) {
    ExprNode node;
    node.kind = kind;
    node.position = where;
    node.children.push_back(std::move(left));
    node.children.push_back(std::move(right));
    return node;
  }

  void expect(char c) {
    skip_space();
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool at(char c) const { return pos_ < src_.size() && src_[pos_] == c; }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] static void fail(const std::string& what, std::size_t where) {
    throw ParseError(what, where);
  }

  std::string_view src_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprNode parse_ast(std::string_view source, std::span<const std::string> variables) {
  return Parser(source, variables).parse();
}

RingElem lower(const ExprNode& node, std::size_t num_vars, const RingMode& mode) {
  const auto sub = [&](std::size_t i) { return lower(node.children.at(i), num_vars, mode); };
  switch (node.kind) {
    case ExprNode::Kind::literal:
      return RingElem::constant(num_vars, node.value, mode.series_order);
    case ExprNode::Kind::variable:
      return RingElem::variable(num_vars, node.variable, mode.series_order);
    case ExprNode::Kind::add:
      return sub(0) + sub(1);
    case ExprNode::Kind::sub:
      return sub(0) - sub(1);
    case ExprNode::Kind::mul:
      return sub(0) * sub(1);
    case ExprNode::Kind::div: {
      const RingElem divisor = sub(1);
      if (!divisor.is_constant()) {
        throw ParseError("division by a non-constant expression", node.position);
      }
      if (divisor.is_zero()) throw ParseError("division by zero", node.position);
      return sub(0) * (Rational(1) / divisor.constant_term());
    }
    case ExprNode::Kind::neg:
      return -sub(0);
    case ExprNode::Kind::pow:
      return sub(0).pow(node.exponent);
    case ExprNode::Kind::exp_call: {
      if (!mode.is_series()) {
        throw ParseError("exp() is only available in series mode", node.position);
      }
      const RingElem arg = sub(0);
      if (!arg.constant_term().is_zero()) {
        throw ParseError("exp() argument has a nonzero constant term", node.position);
      }
      return series_exp(arg);
    }
  }
  throw ParseError("corrupt expression tree", node.position);
}

RingElem parse_expression(std::string_view source, std::span<const std::string> variables,
                          const RingMode& mode) {
  return lower(parse_ast(source, variables), variables.size(), mode);
}

}  // namespace nijenhuis
