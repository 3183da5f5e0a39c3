#include "nijenhuis/fman.hpp"

#include "nijenhuis/errors.hpp"

namespace nijenhuis {

namespace {

int label(std::size_t i) { return static_cast<int>(i) + 1; }

void require_dims(const FManifoldModel& model) {
  const std::size_t n = model.circ.dim();
  if (model.e.dim() != n || model.E.dim() != n) {
    throw DimensionError("product, unity and Euler field dimensions disagree");
  }
}

RingElem x2_power(int exponent) {
  return RingElem::variable(3, 1).pow(static_cast<unsigned>(exponent));
}

}  // namespace

Multiplication::Multiplication(std::size_t n) : n_(n), c_(n * n * n, RingElem(n)) {}

void Multiplication::set(std::size_t i, std::size_t j, std::size_t k, const RingElem& value) {
  if (value.num_vars() != n_) throw DimensionError("structure constant lives in the wrong ring");
  c_[(i * n_ + j) * n_ + k] = value;
  c_[(i * n_ + k) * n_ + j] = value;
}

VectorField Multiplication::apply(const VectorField& X, const VectorField& Y) const {
  if (X.dim() != n_ || Y.dim() != n_) throw DimensionError("product of fields of wrong dimension");
  VectorField r(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    if (X[a].is_zero()) continue;
    for (std::size_t b = 0; b < n_; ++b) {
      if (Y[b].is_zero()) continue;
      const RingElem xy = X[a] * Y[b];
      for (std::size_t i = 0; i < n_; ++i) {
        const RingElem& c = (*this)(i, a, b);
        if (!c.is_zero()) r[i] += c * xy;
      }
    }
  }
  return r;
}

std::vector<VectorField> frame_fields(const OperatorField& L, const VectorField& e, std::size_t m) {
  if (e.dim() != L.dim()) throw DimensionError("unity has the wrong dimension");
  std::vector<VectorField> X{e};
  for (std::size_t i = 1; i <= m; ++i) X.push_back(apply_operator(L, X.back()));
  return X;
}

Report check_frame_relations(const OperatorField& L, const VectorField& e, std::size_t m) {
  const std::size_t n = L.dim();
  const std::size_t top = m == 0 ? 0 : 2 * m - 1;
  const std::vector<VectorField> X = frame_fields(L, e, top);
  std::vector<OperatorField> powers{OperatorField::identity(n)};
  for (std::size_t p = 1; p <= top; ++p) powers.push_back(powers.back() * L);

  Report report{"frame-relations", {}, {}};
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      OperatorField lie = lie_derivative(X[i], powers[j]);
      if (j > 0) lie -= Rational(static_cast<long>(j)) * powers[i + j - 1];
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          report.add("lie", {static_cast<int>(i), static_cast<int>(j), label(a), label(b)}, lie(a, b));
        }
      }
      VectorField bracket = commutator(X[i], X[j]);
      if (i + j > 0) {
        bracket -= Rational(static_cast<long>(j) - static_cast<long>(i)) * X[i + j - 1];
      }
      for (std::size_t a = 0; a < n; ++a) {
        report.add("bracket", {static_cast<int>(i), static_cast<int>(j), label(a)}, bracket[a]);
      }
    }
  }
  return report;
}

Multiplication multiplication_on_frame(const OperatorField& L, const VectorField& e) {
  const std::size_t n = L.dim();
  const std::vector<VectorField> X = frame_fields(L, e, n - 1);
  std::vector<std::vector<RingElem>> P(n, std::vector<RingElem>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < n; ++a) P[i][a] = X[a][i];
  }
  const RingElem det = determinant(P);
  if (det.is_zero()) throw DegenerateError("frame e, Le, ..., L^(n-1)e is degenerate");
  const auto adj = adjugate(P);
  std::vector<OperatorField> powers{OperatorField::identity(n)};
  for (std::size_t p = 1; p < n; ++p) powers.push_back(powers.back() * L);

  Multiplication circ(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        RingElem numerator(n);
        for (std::size_t a = 0; a < n; ++a) {
          if (!adj[a][j].is_zero() && !powers[a](i, k).is_zero()) numerator += adj[a][j] * powers[a](i, k);
        }
        circ.set(i, j, k, divide_exact(numerator, det));
      }
    }
  }
  return circ;
}

FManifoldModel frame_model_near(const OperatorField& L, const VectorField& e,
                                std::span<const Rational> point, int order) {
  const std::size_t n = L.dim();
  if (point.size() != n || e.dim() != n) throw DimensionError("point or unity has the wrong dimension");
  std::vector<RingElem> shift;
  for (std::size_t i = 0; i < n; ++i) shift.push_back(RingElem::variable(n, i) + point[i]);
  // Inputs that are already truncated can only be re-expanded at their own origin.
  OperatorField Ls(n);
  VectorField es(n);
  for (std::size_t i = 0; i < n; ++i) {
    es[i] = compose(e[i], shift).truncated(order);
    for (std::size_t j = 0; j < n; ++j) Ls(i, j) = compose(L(i, j), shift).truncated(order);
  }
  const std::vector<VectorField> X = frame_fields(Ls, es, n - 1);
  std::vector<std::vector<RingElem>> P(n, std::vector<RingElem>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < n; ++a) P[i][a] = X[a][i];
  }
  const RingElem det = determinant(P);
  if (det.constant_term().is_zero()) throw DegenerateError("frame is degenerate at the point");
  const RingElem inv = series_inverse(det);
  const auto adj = adjugate(P);
  std::vector<OperatorField> powers{OperatorField::identity(n)};
  for (std::size_t p = 1; p < n; ++p) powers.push_back(powers.back() * Ls);
  Multiplication circ(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        RingElem numerator(n, order);
        for (std::size_t a = 0; a < n; ++a) numerator += adj[a][j] * powers[a](i, k);
        circ.set(i, j, k, numerator * inv);
      }
    }
  }
  return {circ, es, X.size() > 1 ? X[1] : apply_operator(Ls, es)};
}

RingElem thm6_h(int k, Sign sign, const RingElem& f_in, const RingElem& g_in, HPairing pairing) {
  if (k < 1) throw DomainError("k must be a positive integer");
  const RingElem f = lift_to_dim3(f_in);
  const RingElem g = lift_to_dim3(g_in);
  const Rational s(sign_value(sign));
  const RingElem kfx = Rational(k) * f * x2_power(k - 1);
  const RingElem inner = pairing == HPairing::consistent ? g - s * kfx : kfx - s * g;
  return divide_exact(Rational(k) * inner, RingElem::variable(3, 1));
}

RingElem thm6_g(int k, Sign sign, const RingElem& f_in, const RingElem& h_in, HPairing pairing) {
  if (k < 1) throw DomainError("k must be a positive integer");
  const RingElem f = lift_to_dim3(f_in);
  const RingElem h = lift_to_dim3(h_in);
  const Rational s(sign_value(sign));
  const RingElem hx = Rational(1, k) * RingElem::variable(3, 1) * h;
  const RingElem kfx = Rational(k) * f * x2_power(k - 1);
  // consistent: g = (x2/k) h + s k f x2^(k-1); printed: g = s (k f x2^(k-1) - (x2/k) h).
  return pairing == HPairing::consistent ? hx + s * kfx : s * (kfx - hx);
}

Multiplication thm6_table(int k, Sign sign, const RingElem& h_in) {
  if (k < 1) throw DomainError("k must be a positive integer");
  const RingElem h = lift_to_dim3(h_in);
  const RingElem skx = Rational(sign_value(sign) * k) * x2_power(k - 1);
  Multiplication circ(3);
  for (std::size_t i = 0; i < 3; ++i) circ.set(i, 0, i, RingElem::constant(3, 1));
  circ.set(1, 1, 1, skx);
  circ.set(2, 1, 1, h);
  circ.set(2, 1, 2, skx);
  return circ;
}

Multiplication structure_constants_3d(int k, Sign sign, const RingElem& f, const RingElem& g,
                                      HPairing pairing) {
  return thm6_table(k, sign, thm6_h(k, sign, f, g, pairing));
}

VectorField thm6_euler_field(const Rational& lambda0, int k, const RingElem& f) {
  if (k < 1) throw DomainError("k must be a positive integer");
  VectorField E(3);
  E[0] = RingElem::variable(3, 0) + lambda0;
  E[1] = Rational(1, k) * RingElem::variable(3, 1);
  E[2] = lift_to_dim3(f);
  return E;
}

VectorField hertling_manin_expression(const Multiplication& c, const VectorField& xi,
                                      const VectorField& eta, const VectorField& zeta,
                                      const VectorField& theta, HMOrdering ordering) {
  const auto o = [&](const VectorField& a, const VectorField& b) { return c.apply(a, b); };
  const VectorField xe = o(xi, eta);
  const VectorField zt = o(zeta, theta);
  VectorField r = commutator(xe, zt);
  if (ordering == HMOrdering::proof) r -= o(commutator(xe, zeta), theta);
  else r -= o(commutator(zeta, xe), theta);
  r -= o(zeta, commutator(xe, theta));
  r -= o(xi, commutator(eta, zt));
  r += o(o(xi, commutator(eta, zeta)), theta);
  r += o(o(xi, zeta), commutator(eta, theta));
  r -= o(eta, commutator(xi, zt));
  r += o(o(eta, commutator(xi, zeta)), theta);
  r += o(o(eta, zeta), commutator(xi, theta));
  return r;
}

std::vector<Report> fmanifold_subreports(const FManifoldModel& model, HMOrdering ordering) {
  require_dims(model);
  const Multiplication& c = model.circ;
  const std::size_t n = c.dim();

  Report comm{"commutativity", {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        comm.add("commutativity", {label(i), label(j), label(k)}, c(i, j, k) - c(i, k, j));
      }
    }
  }

  Report assoc{"associativity", {}, {}};
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          RingElem v(n);
          for (std::size_t a = 0; a < n; ++a) {
            v += c(a, i, j) * c(l, a, k);
            v -= c(a, j, k) * c(l, i, a);
          }
          assoc.add("associativity", {label(l), label(i), label(j), label(k)}, v);
        }
      }
    }
  }

  Report unity{"unity", {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RingElem v(n);
      for (std::size_t a = 0; a < n; ++a) v += model.e[a] * c(i, a, j);
      if (i == j) v = v - Rational(1);
      unity.add("unity", {label(i), label(j)}, v);
    }
  }

  std::vector<VectorField> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(coordinate_field(n, i));

  Report hm{"hertling-manin", {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const VectorField r = hertling_manin_expression(c, d[i], d[j], d[k], d[l], ordering);
          for (std::size_t a = 0; a < n; ++a) {
            hm.add("hertling-manin", {label(a), label(i), label(j), label(k), label(l)}, r[a]);
          }
        }
      }
    }
  }

  Report euler{"euler", {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const VectorField prod = c.apply(d[i], d[j]);
      VectorField r = commutator(model.E, prod);
      r -= c.apply(commutator(model.E, d[i]), d[j]);
      r -= c.apply(d[i], commutator(model.E, d[j]));
      r -= prod;
      for (std::size_t a = 0; a < n; ++a) euler.add("euler", {label(a), label(i), label(j)}, r[a]);
    }
  }
  return {comm, assoc, unity, hm, euler};
}

Report check_fmanifold_axioms(const FManifoldModel& model, HMOrdering ordering) {
  return merge_reports("fmanifold", fmanifold_subreports(model, ordering));
}

Report check_pde_thm6(const RingElem& f_in, const RingElem& h_in, int k, Sign sign,
                      HPairing pairing) {
  if (k < 1) throw DomainError("k must be a positive integer");
  const RingElem f = lift_to_dim3(f_in);
  const RingElem h = lift_to_dim3(h_in);
  const RingElem x2 = RingElem::variable(3, 1);
  const int c = pairing == HPairing::consistent ? sign_value(sign) : -1;
  const RingElem residual = Rational(1, k) * x2 * partial_derivative(h, 1) +
                            f * partial_derivative(h, 2) +
                            Rational(c * k) * x2_power(k - 1) * partial_derivative(f, 1) -
                            h * partial_derivative(f, 2) - Rational(k - 2, k) * h;
  Report report{"pde-thm6", {}, {}};
  report.add("pde", {}, residual);
  return report;
}

Report check_thm6_equivalence(const RingElem& f_in, const RingElem& h_in, const RingElem& fbar_in,
                              const RingElem& hbar_in, const RingElem& r_in, int k, Sign sign,
                              HPairing pairing) {
  if (k < 1) throw DomainError("k must be a positive integer");
  const RingElem f = lift_to_dim3(f_in);
  const RingElem h = lift_to_dim3(h_in);
  const RingElem fbar = lift_to_dim3(fbar_in);
  const RingElem hbar = lift_to_dim3(hbar_in);
  const RingElem r = lift_to_dim3(r_in);
  const RingElem r2 = partial_derivative(r, 1);
  const RingElem r3 = partial_derivative(r, 2);
  if (r3.constant_term().is_zero()) throw DegenerateError("dr/dx3 vanishes at the origin");
  const int c = pairing == HPairing::consistent ? -sign_value(sign) : 1;
  const RingElem x2 = RingElem::variable(3, 1);
  const RingElem images[] = {RingElem::variable(3, 0, r.order()), RingElem::variable(3, 1, r.order()),
                             r};
  Report report{"thm6-equivalence", {}, {}};
  if (!r.constant_term().is_zero()) report.note("r(0,0) != 0");
  report.add("h", {}, compose(hbar, images) - Rational(c * k) * x2_power(k - 1) * r2 - h * r3);
  report.add("f", {}, compose(fbar, images) - Rational(1, k) * x2 * r2 - f * r3);
  return report;
}

OperatorField operator_from_mult(const Multiplication& circ, const VectorField& E) {
  const std::size_t n = circ.dim();
  if (E.dim() != n) throw DimensionError("Euler field has the wrong dimension");
  OperatorField L(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RingElem v(n);
      for (std::size_t a = 0; a < n; ++a) {
        if (!E[a].is_zero() && !circ(i, a, j).is_zero()) v += E[a] * circ(i, a, j);
      }
      L(i, j) = std::move(v);
    }
  }
  return L;
}

}  // namespace nijenhuis
