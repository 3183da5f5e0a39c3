#include <doctest.h>

#include <map>
#include <vector>

#include "nijenhuis/errors.hpp"
#include "nijenhuis/expression.hpp"
#include "nijenhuis/rational.hpp"
#include "nijenhuis/ring.hpp"
#include "support/oracles.hpp"

using namespace nijenhuis;

namespace {

RingElem P(const char* src, std::vector<std::string> names = {"x", "y"},
           RingMode mode = RingMode::poly()) {
  return parse_expression(src, names, mode);
}

RingElem S(const char* src, int order, std::vector<std::string> names = {"x", "y"}) {
  return parse_expression(src, names, RingMode::series(order));
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 5).to_string() == "0");
    CHECK(Rational(-4, 6).numerator() == "-2");
    CHECK(Rational(-4, 6).denominator() == "3");
    CHECK(Rational::parse("-12/8") == Rational(-3, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
    CHECK_THROWS_AS(Rational::parse("1.5"), DomainError);
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
  }

  TEST_CASE("big integers stay exact") {
    Rational r(1);
    for (int i = 0; i < 40; ++i) r *= Rational(1000003);
    Rational back = r;
    for (int i = 0; i < 40; ++i) back /= Rational(1000003);
    CHECK(back == Rational(1));
    CHECK(factorial(25).to_string() == "15511210043330985984000000");
  }
}

TEST_SUITE("ring") {
  TEST_CASE("poly_arith examples") {
    CHECK(poly_arith(P("x + y"), P("x - y"), ArithOp::mul) == P("x^2 - y^2"));
    const RingElem p = P("3*x^2*y - 1/2");
    CHECK(poly_arith(RingElem(2), p, ArithOp::add) == p);
    CHECK(poly_arith(S("1 + x", 2), S("1 - x + x^2", 2), ArithOp::mul) == RingElem::constant(2, 1, 2));
  }

  TEST_CASE("poly_arith errors") {
    CHECK_THROWS_AS(poly_arith(RingElem::variable(2, 0), RingElem::variable(3, 0), ArithOp::add), DimensionError);
    CHECK_THROWS_AS(poly_arith(S("x", 2), S("x", 3), ArithOp::mul), OrderMismatch);
  }

  TEST_CASE("operators track the lower order") {
    const RingElem a = S("x + x^3", 3);
    const RingElem b = S("y", 2);
    const RingElem c = a * b;
    REQUIRE(c.order().has_value());
    CHECK(*c.order() == 2);
    CHECK(c == S("x*y", 2));
    CHECK(*(a + P("x^5")).order() == 3);
    CHECK((a + P("x^5")) == a);
  }

  TEST_CASE("series invariants") {
    const RingElem s = S("1 + x + x^2 + x^3 + x^4", 2);
    CHECK(s.total_degree() == 2);
    const RingElem p = P("x^2 + x*y - 3");
    CHECK(p.truncated(4).as_polynomial() == p);
    CHECK(p.truncated(1) == S("-3", 1));
  }

  TEST_CASE("partial derivative") {
    CHECK(partial_derivative(P("x^2*y"), 0) == P("2*x*y"));
    CHECK(partial_derivative(P("x^2"), 1).is_zero());
    CHECK_THROWS_AS(partial_derivative(P("x"), 2), DimensionError);
    const RingElem d = partial_derivative(S("x^3 + y", 3), 0);
    CHECK(*d.order() == 2);
    CHECK(d == S("3*x^2", 2));
    CHECK_THROWS(partial_derivative(S("1", 0), 0));
  }

  TEST_CASE("substitute and compose") {
    CHECK(substitute(P("x^2"), {{0, P("y + 1")}}) == P("y^2 + 2*y + 1"));
    const RingElem p = P("x^3*y - 2*y^2 + 5");
    CHECK(substitute(p, {{0, P("x")}, {1, P("y")}}) == p);
    // f = y, h = 2y: fbar(x, h) = h_y f holds for fbar = y.
    const RingElem f = P("y"), h = P("2*y"), fbar = P("y");
    const std::vector<RingElem> images = {P("x"), h};
    CHECK(compose(fbar, images) == partial_derivative(h, 1) * f);
    CHECK_THROWS_AS(substitute(P("x"), {{0, RingElem::variable(3, 0)}}), DimensionError);
  }

  TEST_CASE("series_exp") {
    CHECK(series_exp(RingElem(1, 5)) == RingElem::constant(1, 1, 5));
    const std::vector<std::string> x = {"x"};
    CHECK(series_exp(RingElem::variable(1, 0, 3)) == parse_expression("1 + x + x^2/2 + x^3/6", x, RingMode::series(3)));
    const RingElem u = RingElem::variable(1, 0, 4);
    CHECK(series_exp(u) * series_exp(-u) == RingElem::constant(1, 1, 4));
    CHECK_THROWS_AS(series_exp(RingElem::constant(1, 1, 3)), DomainError);
    CHECK_THROWS_AS(series_exp(RingElem::variable(1, 0)), DomainError);
  }

  TEST_CASE("series_inverse") {
    const RingElem p = S("2 + x - 3*x*y + y^2", 5);
    CHECK(p * series_inverse(p) == RingElem::constant(2, 1, 5));
    CHECK_THROWS_AS(series_inverse(S("x", 3)), DomainError);
    CHECK_THROWS_AS(series_inverse(P("1 + x")), DomainError);
  }

  TEST_CASE("evaluate") {
    const std::vector<Rational> pt = {Rational(2), Rational(3)};
    CHECK(evaluate(P("x^2 + y"), pt) == Rational(7));
    const std::vector<Rational> origin = {Rational(0), Rational(0)};
    CHECK(evaluate(P("5/3 + x*y - y^4"), origin) == Rational(5, 3));
    const std::vector<Rational> short_pt = {Rational(1)};
    CHECK_THROWS_AS(evaluate(P("x"), short_pt), DimensionError);
  }

  TEST_CASE("divide_exact") {
    CHECK(divide_exact(P("x^2 - y^2"), P("x - y")) == P("x + y"));
    CHECK(divide_exact(P("6*x^3*y"), P("2*x")) == P("3*x^2*y"));
    CHECK_THROWS_AS(divide_exact(P("x + 1"), P("x")), NotDivisible);
    CHECK_THROWS(divide_exact(P("x"), RingElem(2)));
  }

  TEST_CASE("restrict and embed") {
    const std::vector<std::size_t> keep = {1};
    const RingElem p = P("y^2 + 1");
    const RingElem r = restrict_variables(p, keep);
    CHECK(r.num_vars() == 1);
    CHECK(embed_variables(r, 2, keep) == p);
    CHECK_THROWS(restrict_variables(P("x*y"), keep));
  }

  TEST_CASE("printer") {
    const std::vector<std::string> names = {"x", "y"};
    CHECK(to_string(P("-x + 2*y^3 - 1/2"), names) == "-x + 2*y^3 - 1/2");
    CHECK(to_string(RingElem(2), names) == "0");
  }
}

TEST_SUITE("ring properties") {
  // Evaluation at a rational point is a ring homomorphism; it does not share code with the
  // sparse multiplication.
  TEST_CASE("evaluation homomorphism, 200 cases") {
    oracle::Gen gen(1001);
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 3));
      const RingElem a = gen.poly(n, 5, 4), b = gen.poly(n, 5, 4);
      const auto pt = gen.point(n);
      CAPTURE(i);
      CHECK(evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt));
      CHECK(evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt));
      CHECK(evaluate(a - b, pt) == evaluate(a, pt) - evaluate(b, pt));
    }
  }

  TEST_CASE("ring axioms, 200 cases") {
    oracle::Gen gen(1002);
    for (int i = 0; i < 200; ++i) {
      const RingElem a = gen.poly(3, 5, 4), b = gen.poly(3, 5, 4), c = gen.poly(3, 5, 4);
      CAPTURE(i);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      CHECK(a * RingElem::constant(3, 1) == a);
    }
  }

  TEST_CASE("series ring axioms, 200 cases") {
    oracle::Gen gen(1003);
    for (int i = 0; i < 200; ++i) {
      const int N = gen.uniform(0, 5);
      const RingElem a = gen.poly(2, 6, 7, N), b = gen.poly(2, 6, 7, N), c = gen.poly(2, 6, 7, N);
      CAPTURE(i);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a.total_degree() <= N);
      // Truncating the exact product agrees with the truncated product.
      CHECK((a.as_polynomial() * b.as_polynomial()).truncated(N) == a * b);
    }
  }

  TEST_CASE("derivatives commute and obey Leibniz, 200 cases") {
    oracle::Gen gen(1004);
    for (int i = 0; i < 200; ++i) {
      const RingElem p = gen.poly(3, 6, 5), q = gen.poly(3, 6, 5);
      CAPTURE(i);
      CHECK(partial_derivative(partial_derivative(p, 0), 1) == partial_derivative(partial_derivative(p, 1), 0));
      CHECK(partial_derivative(p * q, 2) == partial_derivative(p, 2) * q + p * partial_derivative(q, 2));
    }
  }

  TEST_CASE("substitution is a homomorphism, 200 cases") {
    oracle::Gen gen(1005);
    for (int i = 0; i < 200; ++i) {
      const RingElem p = gen.poly(2, 4, 3), q = gen.poly(2, 4, 3);
      const std::map<std::size_t, RingElem> sub = {{0, gen.poly(2, 3, 2)}, {1, gen.poly(2, 3, 2)}};
      CAPTURE(i);
      CHECK(substitute(p * q, sub) == substitute(p, sub) * substitute(q, sub));
      CHECK(substitute(p + q, sub) == substitute(p, sub) + substitute(q, sub));
    }
  }

  TEST_CASE("exp is a homomorphism from + to *, 200 cases") {
    oracle::Gen gen(1006);
    for (int i = 0; i < 200; ++i) {
      const int N = gen.uniform(1, 6);
      RingElem a = gen.poly(2, 4, 3, N), b = gen.poly(2, 4, 3, N);
      a = a - RingElem::constant(2, a.constant_term(), N);
      b = b - RingElem::constant(2, b.constant_term(), N);
      CAPTURE(i);
      CHECK(series_exp(a + b) == series_exp(a) * series_exp(b));
    }
    const RingElem x = RingElem::variable(1, 0, 10);
    CHECK(series_exp(x) * series_exp(-x) == RingElem::constant(1, 1, 10));
  }

  TEST_CASE("embedding a polynomial into series and back, 200 cases") {
    oracle::Gen gen(1007);
    for (int i = 0; i < 200; ++i) {
      const RingElem p = gen.poly(3, 6, 4);
      CHECK(p.truncated(4).as_polynomial() == p);
    }
  }
}
