#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nijenhuis/expression.hpp"
#include "nijenhuis/rational.hpp"
#include "nijenhuis/ring.hpp"
#include "nijenhuis/tensor.hpp"
#include "nijenhuis/verify.hpp"

namespace nijenhuis {

/// An operator with its unity in named coordinates, plus known eigenfunctions (may be empty).
struct Form {
  OperatorField L;
  VectorField e;
  std::vector<std::string> variables;
  RingMode mode;
  std::vector<RingElem> eigenvalues;
};

/// `canonical` puts -(n-2)u^n in the last row; `first_section_print` uses +(n-2)u^n instead.
enum class JordanVariant { canonical, first_section_print };

/// Coordinates u1..un. Diagonal u1 + lambda0, subdiagonal 1, first column entries
/// -(p-2)u^p in rows p >= 3; e = d/du1.
Form jordan_unity_form(std::size_t n, const Rational& lambda0,
                       JordanVariant variant = JordanVariant::canonical);

/// Lower triangular Toeplitz matrix with first column (u1 + lambda0, u2 + 1, u3, ..., un).
Form toeplitz_form(std::size_t n, const Rational& lambda0);

/// Coordinates x1, y1, ..., xs, ys; 2x2 blocks C^p = [[x^p, -y^p], [y^p, x^p]] and
/// Lambda0 = [[a0, -b0], [b0, a0]]. Throws DomainError when b0 = 0.
Form complex_block_form(std::size_t s, const Rational& a0, const Rational& b0);
Form complex_toeplitz_form(std::size_t s, const Rational& a0, const Rational& b0);

/// Companion matrix with first column (u1, ..., un) and unit superdiagonal;
/// e = (n, -(n-1)u1, ..., -u^{n-1}).
Form companion_dnd_form(std::size_t n);

/// Parameters of the four two-dimensional forms; each case takes exactly its own.
struct Dim2Params {
  Rational lambda0;
  std::optional<Rational> d;       // case 2
  std::optional<int> k;            // case 3
  std::optional<Sign> sign;        // case 3
  std::optional<RingElem> f;       // case 4, a function of y over (x, y)
};

/// Coordinates (x, y), e = d/dx. Case 3 with Sign::plus has l12 = -(k/2) y^(k-1).
/// Case 4 needs f independent of x (otherwise d/dx is not a unity). Throws DomainError on
/// missing or extra parameters.
Form dim2_form(int which, const Dim2Params& params);

/// Coordinates (x1, x2, x3), e = d/dx1; f, g are functions of (x2, x3) (see lift_to_dim3).
Form dim3_thm4_form(int k, const Rational& lambda0, Sign sign, const RingElem& f,
                    const RingElem& g);

/// g = F(x2 exp(-x3/k)) exp((k-1) x3/k) as a series of the given order; F is a polynomial in
/// one variable.
RingElem cor1_parameter(int k, const RingElem& F, int order);
/// Three-dimensional semi-normal form with f = 1 and g = cor1_parameter(k, F, order).
Form dim3_cor1_form(int k, const Rational& lambda0, Sign sign, const RingElem& F, int order);
/// Three-dimensional semi-normal form with f = (1-k)/k x3 and g = 1.
Form dim3_cor2_form(int k, const Rational& lambda0, Sign sign);

/// Family name plus the parameters it uses; unused fields must stay empty.
struct FormSpec {
  std::string family;
  std::optional<std::size_t> n;  // jordan, toeplitz, companion; s for the complex families
  std::optional<Rational> lambda0;
  std::optional<Rational> a0;
  std::optional<Rational> b0;
  std::optional<Rational> d;
  std::optional<int> k;
  std::optional<Sign> sign;
  std::optional<std::string> f;  // expressions over the family's coordinates
  std::optional<std::string> g;
  std::optional<std::string> F;  // univariate, variable name "t"
  std::optional<int> series_order;
  JordanVariant variant = JordanVariant::canonical;
};

/// Known families: jordan, toeplitz, complex-block, complex-toeplitz, companion,
/// dim2-case1..dim2-case4, dim3-thm4, dim3-cor1, dim3-cor2.
const std::vector<std::string>& form_families();

/// Validates the spec against its family and builds the form. An omitted sign means plus. Throws DomainError on a
/// parameter mismatch, ParseError on a bad expression.
Form build_form(const FormSpec& spec);

}  // namespace nijenhuis
