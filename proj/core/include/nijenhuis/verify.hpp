#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nijenhuis/report.hpp"
#include "nijenhuis/ring.hpp"
#include "nijenhuis/tensor.hpp"

namespace nijenhuis {

/// The two-valued sign in front of (x2)^k and y^(k-1) in the dimension two and three forms.
enum class Sign { plus, minus };

inline int sign_value(Sign s) { return s == Sign::plus ? 1 : -1; }

/// Residual N^i_{jk} for j < k; component "N".
Report check_nijenhuis(const OperatorField& L);

/// Residual L_e L - Id; component "unity".
Report check_unity(const OperatorField& L, const VectorField& e);

/// e(tr L) - n (component "trace") and e(sigma_k) + (n - k + 1) sigma_{k-1} for k = 1..n with
/// sigma_0 = 1 (component "sigma", index [k]).
Report check_trace_and_sigma(const OperatorField& L, const VectorField& e);

/// (L - lambda Id)^* d lambda; component "eigen".
Report check_eigen_invariant(const OperatorField& L, const RingElem& lambda);

/// L^* d(det L) - det L d(tr L) (component "criterion") and its shift companion
/// L^* d(tr L) + d(det L) - tr L d(tr L) (component "shift"), which keeps the test invariant
/// under L -> L + c Id and decides the degenerate case det L = 0. Throws DimensionError
/// unless n = 2.
Report check_2d_criterion(const OperatorField& L);

/// Block decomposition along consecutive coordinate groups of the given sizes:
/// "offdiag" (L entries outside the diagonal blocks), "block" (a block entry depending on a
/// foreign variable), "e" (e component depending on a foreign variable), then per block the
/// restricted Nijenhuis and unity residuals ("N#b", "unity#b", b 1-based).
/// Throws DimensionError for sizes that do not partition n.
Report check_split(const OperatorField& L, const VectorField& e,
                   std::span<const std::size_t> sizes);

/// Lifts a function of (x2, x3) into the three-variable ring (x1, x2, x3). Accepts elements of
/// a two-variable ring, or of the three-variable ring that do not depend on x1.
RingElem lift_to_dim3(const RingElem& p);

/// (x2/k) g_2 + f g_3 - g f_3 - (k-1)/k g; component "pde".
Report check_pde_thm4(const RingElem& f, const RingElem& g, int k);

/// fbar(x, h(x, y)) - h_y f for functions of (x, y); component "equiv".
/// Throws DegenerateError when h_y vanishes at the origin; h(0, 0) != 0 is noted.
Report check_equiv_2d(const RingElem& f, const RingElem& fbar, const RingElem& h);

/// gbar(x2, h) - g h_3 (component "g") and fbar(x2, h) - (x2/k) h_2 - f h_3 (component "f").
/// Throws DegenerateError when h_3 vanishes at the origin.
Report check_transform_3d(const RingElem& f, const RingElem& g, const RingElem& fbar,
                          const RingElem& gbar, const RingElem& h, int k);

/// Discriminant -4p^3 - 27q^2 of the depressed form t^3 + p t + q of
/// t^3 + s1 t^2 + s2 t + s3. Equal to the discriminant of the original cubic.
RingElem cubic_discriminant(std::span<const RingElem> sigma);

}  // namespace nijenhuis
