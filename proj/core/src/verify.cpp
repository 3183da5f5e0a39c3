#include "nijenhuis/verify.hpp"

#include <numeric>

#include "nijenhuis/errors.hpp"

namespace nijenhuis {

namespace {

int label(std::size_t i) { return static_cast<int>(i) + 1; }

}  // namespace

Report check_nijenhuis(const OperatorField& L) {
  Report report{"nijenhuis", {}, {}};
  const Torsion12 N = nijenhuis_torsion(L);
  const std::size_t n = L.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) report.add("N", {label(i), label(j), label(k)}, N(i, j, k));
    }
  }
  return report;
}

Report check_unity(const OperatorField& L, const VectorField& e) {
  Report report{"unity", {}, {}};
  const OperatorField residual = lie_derivative(e, L) - OperatorField::identity(L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i) {
    for (std::size_t j = 0; j < L.dim(); ++j) report.add("unity", {label(i), label(j)}, residual(i, j));
  }
  return report;
}

Report check_trace_and_sigma(const OperatorField& L, const VectorField& e) {
  Report report{"sigma", {}, {}};
  const std::size_t n = L.dim();
  const long dim = static_cast<long>(n);
  report.add("trace", {}, directional_derivative(e, trace(L)) - Rational(dim));
  const std::vector<RingElem> sigma = char_coefficients(L);
  RingElem previous = RingElem::constant(n, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const RingElem& current = sigma[k - 1];
    report.add("sigma", {label(k - 1)},
               directional_derivative(e, current) + Rational(dim - static_cast<long>(k) + 1) * previous);
    previous = current;
  }
  return report;
}

Report check_eigen_invariant(const OperatorField& L, const RingElem& lambda) {
  Report report{"eigen-invariant", {}, {}};
  OperatorField shifted = L;
  for (std::size_t i = 0; i < L.dim(); ++i) shifted(i, i) -= lambda;
  const CovectorField residual = dual_apply(shifted, differential(lambda));
  for (std::size_t j = 0; j < L.dim(); ++j) report.add("eigen", {label(j)}, residual[j]);
  return report;
}

Report check_2d_criterion(const OperatorField& L) {
  if (L.dim() != 2) throw DimensionError("the 2D criterion needs n = 2, got " + std::to_string(L.dim()));
  Report report{"2d-criterion", {}, {}};
  const RingElem det = L(0, 0) * L(1, 1) - L(0, 1) * L(1, 0);
  const CovectorField lhs = dual_apply(L, differential(det));
  const CovectorField rhs = det * differential(trace(L));
  const CovectorField residual = lhs - rhs;
  for (std::size_t j = 0; j < 2; ++j) report.add("criterion", {label(j)}, residual[j]);
  // The same equality for L + c Id differs by c times this covector. Without it an operator
  // with det L = 0 passes vacuously.
  const RingElem tr = trace(L);
  const CovectorField dtr = differential(tr);
  const CovectorField shifted = dual_apply(L, dtr) + differential(det) - tr * dtr;
  for (std::size_t j = 0; j < 2; ++j) report.add("shift", {label(j)}, shifted[j]);
  if (det.is_zero()) report.note("det L vanishes identically");
  return report;
}

Report check_split(const OperatorField& L, const VectorField& e,
                   std::span<const std::size_t> sizes) {
  const std::size_t n = L.dim();
  if (e.dim() != n) throw DimensionError("unity has the wrong dimension");
  if (sizes.size() < 2 || std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) != n) {
    throw DimensionError("block sizes must be at least two positive numbers summing to n");
  }
  std::vector<std::size_t> block_of(n);
  std::vector<std::vector<std::size_t>> members(sizes.size());
  std::size_t offset = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (sizes[b] == 0) throw DimensionError("empty block in partition");
    for (std::size_t i = 0; i < sizes[b]; ++i) {
      block_of[offset + i] = b;
      members[b].push_back(offset + i);
    }
    offset += sizes[b];
  }

  Report report{"split", {}, {}};
  std::vector<bool> clean(sizes.size(), true);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (block_of[i] != block_of[j]) {
        if (!L(i, j).is_zero()) clean[block_of[i]] = false;
        report.add("offdiag", {label(i), label(j)}, L(i, j));
        continue;
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (block_of[v] == block_of[i] || !L(i, j).depends_on(v)) continue;
        clean[block_of[i]] = false;
        report.add("block", {label(i), label(j), label(v)}, partial_derivative(L(i, j), v));
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (block_of[v] == block_of[i] || !e[i].depends_on(v)) continue;
      clean[block_of[i]] = false;
      report.add("e", {label(i), label(v)}, partial_derivative(e[i], v));
    }
  }

  for (std::size_t b = 0; b < sizes.size(); ++b) {
    const std::string tag = "#" + std::to_string(b + 1);
    if (!clean[b]) {
      report.note("block " + std::to_string(b + 1) + ": restricted checks skipped");
      continue;
    }
    const auto& keep = members[b];
    const std::size_t m = keep.size();
    std::vector<std::vector<RingElem>> rows(m, std::vector<RingElem>(m));
    VectorField eb(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) rows[i][j] = restrict_variables(L(keep[i], keep[j]), keep);
      eb[i] = restrict_variables(e[keep[i]], keep);
    }
    const OperatorField Lb = OperatorField::from_rows(rows);
    for (const Report& part : {check_nijenhuis(Lb), check_unity(Lb, eb)}) {
      for (const auto& r : part.residuals) {
        std::vector<int> index;
        for (int idx : r.index) index.push_back(label(keep[static_cast<std::size_t>(idx - 1)]));
        report.add(r.component + tag, std::move(index), embed_variables(r.value, n, keep));
      }
    }
  }
  return report;
}

RingElem lift_to_dim3(const RingElem& p) {
  if (p.num_vars() == 3) {
    if (p.depends_on(0)) throw DomainError("function of (x2, x3) depends on x1");
    return p;
  }
  if (p.num_vars() == 2) {
    const std::size_t positions[] = {1, 2};
    return embed_variables(p, 3, positions);
  }
  throw DimensionError("expected a function of (x2, x3)");
}

Report check_pde_thm4(const RingElem& f_in, const RingElem& g_in, int k) {
  if (k < 1) throw DomainError("k must be a positive integer");
  const RingElem f = lift_to_dim3(f_in);
  const RingElem g = lift_to_dim3(g_in);
  const RingElem x2 = RingElem::variable(3, 1);
  const Rational inv_k(1, k);
  const RingElem residual = inv_k * x2 * partial_derivative(g, 1) + f * partial_derivative(g, 2) -
                            g * partial_derivative(f, 2) - Rational(k - 1, k) * g;
  Report report{"pde-thm4", {}, {}};
  report.add("pde", {}, residual);
  return report;
}

Report check_equiv_2d(const RingElem& f, const RingElem& fbar, const RingElem& h) {
  for (const RingElem* p : {&f, &fbar, &h}) {
    if (p->num_vars() != 2) throw DimensionError("2D equivalence needs functions of (x, y)");
  }
  const RingElem hy = partial_derivative(h, 1);
  if (hy.constant_term().is_zero()) throw DegenerateError("dh/dy vanishes at the origin");
  Report report{"equiv-2d", {}, {}};
  if (!h.constant_term().is_zero()) report.note("h(0,0) != 0");
  const RingElem images[] = {RingElem::variable(2, 0, h.order()), h};
  report.add("equiv", {}, compose(fbar, images) - hy * f);
  return report;
}

Report check_transform_3d(const RingElem& f_in, const RingElem& g_in, const RingElem& fbar_in,
                          const RingElem& gbar_in, const RingElem& h_in, int k) {
  if (k < 1) throw DomainError("k must be a positive integer");
  const RingElem f = lift_to_dim3(f_in);
  const RingElem g = lift_to_dim3(g_in);
  const RingElem fbar = lift_to_dim3(fbar_in);
  const RingElem gbar = lift_to_dim3(gbar_in);
  const RingElem h = lift_to_dim3(h_in);
  const RingElem h2 = partial_derivative(h, 1);
  const RingElem h3 = partial_derivative(h, 2);
  if (h3.constant_term().is_zero()) throw DegenerateError("dh/dx3 vanishes at the origin");
  Report report{"transform-3d", {}, {}};
  if (!h.constant_term().is_zero()) report.note("h(0,0) != 0");
  const RingElem images[] = {RingElem::variable(3, 0, h.order()), RingElem::variable(3, 1, h.order()),
                             h};
  const RingElem x2 = RingElem::variable(3, 1);
  report.add("g", {}, compose(gbar, images) - g * h3);
  report.add("f", {}, compose(fbar, images) - Rational(1, k) * x2 * h2 - f * h3);
  return report;
}

RingElem cubic_discriminant(std::span<const RingElem> sigma) {
  if (sigma.size() != 3) throw DimensionError("cubic discriminant needs three coefficients");
  const RingElem& s1 = sigma[0];
  const RingElem& s2 = sigma[1];
  const RingElem& s3 = sigma[2];
  const RingElem p = s2 - Rational(1, 3) * s1 * s1;
  const RingElem q = Rational(2, 27) * s1.pow(3) - Rational(1, 3) * s1 * s2 + s3;
  return Rational(-4) * p.pow(3) - Rational(27) * q * q;
}

}  // namespace nijenhuis
