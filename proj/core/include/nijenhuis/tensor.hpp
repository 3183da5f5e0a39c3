#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nijenhuis/rational.hpp"
#include "nijenhuis/ring.hpp"

namespace nijenhuis {

/// Operator field L in coordinates: entry (i, j) is L^i_j (row = upper index).
/// Entries live in the ring of the n model coordinates.
class OperatorField {
 public:
  OperatorField() = default;
  /// Zero operator of dimension n over n coordinates.
  explicit OperatorField(std::size_t n);
  static OperatorField identity(std::size_t n);
  /// Throws DimensionError unless the rows form an n x n matrix over n variables.
  static OperatorField from_rows(const std::vector<std::vector<RingElem>>& rows);

  std::size_t dim() const { return n_; }
  RingElem& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const RingElem& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  bool is_zero() const;

  OperatorField& operator+=(const OperatorField& other);
  OperatorField& operator-=(const OperatorField& other);
  friend OperatorField operator+(OperatorField a, const OperatorField& b) { return a += b; }
  friend OperatorField operator-(OperatorField a, const OperatorField& b) { return a -= b; }
  friend OperatorField operator*(const OperatorField& a, const OperatorField& b);
  friend OperatorField operator*(const Rational& s, OperatorField a);
  friend bool operator==(const OperatorField&, const OperatorField&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<RingElem> entries_;
};

/// Fixed-length array of ring elements; the tag separates vectors from covectors.
template <class Tag>
class FieldComponents {
 public:
  FieldComponents() = default;
  /// Zero field with n components over n coordinates.
  explicit FieldComponents(std::size_t n) : components_(n, RingElem(n)) {}
  explicit FieldComponents(std::vector<RingElem> components)
      : components_(std::move(components)) {}

  std::size_t dim() const { return components_.size(); }
  RingElem& operator[](std::size_t i) { return components_[i]; }
  const RingElem& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<RingElem>& components() const { return components_; }

  bool is_zero() const {
    for (const auto& c : components_) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  FieldComponents& operator+=(const FieldComponents& other) {
    for (std::size_t i = 0; i < dim(); ++i) components_[i] += other.components_[i];
    return *this;
  }
  FieldComponents& operator-=(const FieldComponents& other) {
    for (std::size_t i = 0; i < dim(); ++i) components_[i] -= other.components_[i];
    return *this;
  }
  friend FieldComponents operator+(FieldComponents a, const FieldComponents& b) { return a += b; }
  friend FieldComponents operator-(FieldComponents a, const FieldComponents& b) { return a -= b; }
  friend FieldComponents operator*(const RingElem& f, FieldComponents a) {
    for (auto& c : a.components_) c = f * c;
    return a;
  }
  friend FieldComponents operator*(const Rational& s, FieldComponents a) {
    for (auto& c : a.components_) c *= s;
    return a;
  }
  friend bool operator==(const FieldComponents&, const FieldComponents&) = default;

 private:
  std::vector<RingElem> components_;
};

struct VectorTag {};
struct CovectorTag {};
using VectorField = FieldComponents<VectorTag>;
using CovectorField = FieldComponents<CovectorTag>;

/// Coordinate vector field d/dx^index in n dimensions.
VectorField coordinate_field(std::size_t n, std::size_t index);

/// Torsion N^i_{jk}, stored densely; antisymmetry in (j, k) is asserted on construction.
class Torsion12 {
 public:
  explicit Torsion12(std::size_t n, std::vector<RingElem> entries);

  std::size_t dim() const { return n_; }
  const RingElem& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return entries_[(i * n_ + j) * n_ + k];
  }
  bool is_zero() const;

 private:
  std::size_t n_;
  std::vector<RingElem> entries_;
};

/// N^i_{jk} = L^a_j d_a L^i_k - L^a_k d_a L^i_j - L^i_a (d_j L^a_k - d_k L^a_j).
Torsion12 nijenhuis_torsion(const OperatorField& L);

/// (L_X L)^i_j = X^a d_a L^i_j - (d_a X^i) L^a_j + L^i_a d_j X^a.
OperatorField lie_derivative(const VectorField& X, const OperatorField& L);

/// [X, Y]^i = X^a d_a Y^i - Y^a d_a X^i.
VectorField commutator(const VectorField& X, const VectorField& Y);

/// X(f) = X^a d_a f.
RingElem directional_derivative(const VectorField& X, const RingElem& f);

RingElem trace(const OperatorField& L);

/// Coefficients sigma_1..sigma_n of det(t Id - L) = t^n + sigma_1 t^{n-1} + ... + sigma_n,
/// by the Faddeev-LeVerrier trace recursion.
std::vector<RingElem> char_coefficients(const OperatorField& L);

/// (L* alpha)_j = L^i_j alpha_i.
CovectorField dual_apply(const OperatorField& L, const CovectorField& alpha);

VectorField apply_operator(const OperatorField& L, const VectorField& X);
OperatorField operator_power(const OperatorField& L, unsigned m);
CovectorField differential(const RingElem& f);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Rank by fraction-free (Bareiss) elimination after clearing denominators row by row.
std::size_t exact_rank(const RationalMatrix& m);
Rational exact_determinant(const RationalMatrix& m);

/// Determinant of a square matrix of ring elements by cofactor expansion over column subsets
/// (no division, so it also works for truncated series).
RingElem determinant(const std::vector<std::vector<RingElem>>& m);
/// adj(M) with adj(M) * M = det(M) Id.
std::vector<std::vector<RingElem>> adjugate(const std::vector<std::vector<RingElem>>& m);

RationalMatrix evaluate_matrix(const OperatorField& L, std::span<const Rational> point);

/// Id, L, ..., L^{n-1} are linearly independent at the point.
bool gl_regular_at(const OperatorField& L, std::span<const Rational> point);
/// xi, L xi, ..., L^{n-1} xi are linearly independent at the point.
bool cyclic_at(const VectorField& xi, const OperatorField& L, std::span<const Rational> point);

}  // namespace nijenhuis
