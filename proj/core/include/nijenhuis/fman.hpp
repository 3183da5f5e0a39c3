#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nijenhuis/report.hpp"
#include "nijenhuis/ring.hpp"
#include "nijenhuis/tensor.hpp"
#include "nijenhuis/verify.hpp"

namespace nijenhuis {

/// Structure constants c^i_{jk} of a commutative product, d_j o d_k = c^i_{jk} d_i.
/// Every write sets both (j, k) and (k, j), so symmetry holds by construction.
class Multiplication {
 public:
  Multiplication() = default;
  /// Zero product in dimension n over n coordinates.
  explicit Multiplication(std::size_t n);

  std::size_t dim() const { return n_; }
  const RingElem& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * n_ + j) * n_ + k];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, const RingElem& value);

  /// X o Y.
  VectorField apply(const VectorField& X, const VectorField& Y) const;

  friend bool operator==(const Multiplication&, const Multiplication&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<RingElem> c_;
};

struct FManifoldModel {
  Multiplication circ;
  VectorField e;
  VectorField E;
};

/// X_0 = e, X_1 = L e, ..., X_m = L^m e.
std::vector<VectorField> frame_fields(const OperatorField& L, const VectorField& e, std::size_t m);

/// L_{X_i}(L^j) - j L^{i+j-1} (component "lie", index [i, j, a, b]) and
/// [X_i, X_j] - (j - i) X_{i+j-1} (component "bracket", index [i, j, a]) for 0 <= i, j <= m.
/// Frame indices i, j are printed as they are; a, b are 1-based coordinates.
Report check_frame_relations(const OperatorField& L, const VectorField& e, std::size_t m);

/// Product with X_i o X_j = X_{i+j} written in coordinates. With P the frame matrix,
/// c^i_{jk} = sum_a adj(P)^a_j (L^a)^i_k / det P, divided exactly.
/// Throws DegenerateError if det P is the zero element, NotDivisible if a quotient is not
/// in the ring.
Multiplication multiplication_on_frame(const OperatorField& L, const VectorField& e);

/// Product expanded around `point`: coordinates are shifted so the point becomes the origin,
/// and 1/det P is expanded as a series of the given order. Works for frames whose determinant
/// is not a unit in the polynomial ring but is nonzero at the point. Returns the product with
/// the shifted unity e and Euler field E = L e. Throws DegenerateError if det P vanishes there.
FManifoldModel frame_model_near(const OperatorField& L, const VectorField& e,
                                std::span<const Rational> point, int order);

/// How the sign in h relates to the sign of (x2)^k.
/// `consistent`: h = (k/x2)(g - s k f (x2)^(k-1)), the pairing for which E o reproduces the
/// semi-normal operator. `printed`: h = (k/x2)(k f (x2)^(k-1) - s g). The two agree for
/// Sign::minus.
enum class HPairing { consistent, printed };

/// h from (f, g); throws NotDivisible when x2 does not divide the numerator.
RingElem thm6_h(int k, Sign sign, const RingElem& f, const RingElem& g,
                HPairing pairing = HPairing::consistent);
/// g from (f, h), the inverse of thm6_h.
RingElem thm6_g(int k, Sign sign, const RingElem& f, const RingElem& h,
                HPairing pairing = HPairing::consistent);

/// Unity row c^i_{1j} = delta^i_j, c^2_22 = c^3_23 = s k (x2)^(k-1), c^3_22 = h, all others 0.
Multiplication thm6_table(int k, Sign sign, const RingElem& h);
Multiplication structure_constants_3d(int k, Sign sign, const RingElem& f, const RingElem& g,
                                      HPairing pairing = HPairing::consistent);
/// E = (x1 + lambda0) d1 + (x2/k) d2 + f d3.
VectorField thm6_euler_field(const Rational& lambda0, int k, const RingElem& f);

/// Order of the bracket in the second term of the Hertling-Manin expression:
/// `proof` uses [xi o eta, zeta] o theta (the tensorial form), `printed` uses
/// [zeta, xi o eta] o theta.
enum class HMOrdering { proof, printed };

/// The nine-term Hertling-Manin expression; vanishes for every quadruple on an F-manifold.
VectorField hertling_manin_expression(const Multiplication& circ, const VectorField& xi,
                                      const VectorField& eta, const VectorField& zeta,
                                      const VectorField& theta,
                                      HMOrdering ordering = HMOrdering::proof);

/// Commutativity, associativity, unity, Hertling-Manin (all coordinate quadruples) and Euler
/// (i <= j) sub-reports, in that order.
std::vector<Report> fmanifold_subreports(const FManifoldModel& model,
                                         HMOrdering ordering = HMOrdering::proof);
Report check_fmanifold_axioms(const FManifoldModel& model,
                              HMOrdering ordering = HMOrdering::proof);

/// (x2/k) h_2 + f h_3 + c k (x2)^(k-1) f_2 - h f_3 - (k-2)/k h with c = s for the consistent
/// pairing and c = -1 for the printed one; component "pde".
Report check_pde_thm6(const RingElem& f, const RingElem& h, int k, Sign sign,
                      HPairing pairing = HPairing::consistent);

/// hbar(x2, r) - c k (x2)^(k-1) r_2 - h r_3 (component "h"), fbar(x2, r) - (x2/k) r_2 - f r_3
/// (component "f"), with c = -s (consistent) or c = 1 (printed).
/// Throws DegenerateError when r_3 vanishes at the origin.
Report check_thm6_equivalence(const RingElem& f, const RingElem& h, const RingElem& fbar,
                              const RingElem& hbar, const RingElem& r, int k, Sign sign,
                              HPairing pairing = HPairing::consistent);

/// L^i_j = E^a c^i_{aj}.
OperatorField operator_from_mult(const Multiplication& circ, const VectorField& E);

}  // namespace nijenhuis
