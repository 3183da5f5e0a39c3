#include "nijenhuis/tensor.hpp"

#include <stdexcept>
#include <unordered_map>

#include "nijenhuis/errors.hpp"

namespace nijenhuis {

namespace {

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

// Table d[a][i*n + j] = d_a L^i_j.
std::vector<std::vector<RingElem>> derivative_table(const OperatorField& L) {
  const std::size_t n = L.dim();
  std::vector<std::vector<RingElem>> d(n, std::vector<RingElem>(n * n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[a][i * n + j] = partial_derivative(L(i, j), a);
    }
  }
  return d;
}

std::vector<mpz_class> clear_denominators(const std::vector<Rational>& row) {
  mpz_class scale = 1;
  for (const auto& q : row) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.raw().get_den_mpz_t());
  std::vector<mpz_class> out;
  out.reserve(row.size());
  for (const auto& q : row) out.emplace_back(q.raw().get_num() * (scale / q.raw().get_den()));
  return out;
}

}  // namespace

OperatorField::OperatorField(std::size_t n) : n_(n), entries_(n * n, RingElem(n)) {}

OperatorField OperatorField::identity(std::size_t n) {
  OperatorField id(n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = RingElem::constant(n, 1);
  return id;
}

OperatorField OperatorField::from_rows(const std::vector<std::vector<RingElem>>& rows) {
  const std::size_t n = rows.size();
  OperatorField L(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw DimensionError("operator matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j].num_vars() != n) {
        throw DimensionError("operator entries must live in the ring of the n coordinates");
      }
      L(i, j) = rows[i][j];
    }
  }
  return L;
}

bool OperatorField::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

OperatorField& OperatorField::operator+=(const OperatorField& other) {
  require_dim(n_, other.n_, "operator sum");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

OperatorField& OperatorField::operator-=(const OperatorField& other) {
  require_dim(n_, other.n_, "operator difference");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

OperatorField operator*(const OperatorField& a, const OperatorField& b) {
  require_dim(a.n_, b.n_, "operator product");
  const std::size_t n = a.n_;
  OperatorField r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RingElem s(n);
      for (std::size_t k = 0; k < n; ++k) {
        if (!a(i, k).is_zero() && !b(k, j).is_zero()) s += a(i, k) * b(k, j);
      }
      r(i, j) = std::move(s);
    }
  }
  return r;
}

OperatorField operator*(const Rational& s, OperatorField a) {
  for (auto& e : a.entries_) e *= s;
  return a;
}

VectorField coordinate_field(std::size_t n, std::size_t index) {
  VectorField v(n);
  v[index] = RingElem::constant(n, 1);
  return v;
}

Torsion12::Torsion12(std::size_t n, std::vector<RingElem> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n * n * n) throw DimensionError("torsion needs n^3 entries");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        if (!((*this)(i, j, k) + (*this)(i, k, j)).is_zero()) {
          throw std::logic_error("torsion is not antisymmetric in its lower indices");
        }
      }
    }
  }
}

bool Torsion12::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

Torsion12 nijenhuis_torsion(const OperatorField& L) {
  const std::size_t n = L.dim();
  const auto d = derivative_table(L);
  std::vector<RingElem> entries(n * n * n, RingElem(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        RingElem v(n);
        for (std::size_t a = 0; a < n; ++a) {
          v += L(a, j) * d[a][i * n + k];
          v -= L(a, k) * d[a][i * n + j];
          v -= L(i, a) * (d[j][a * n + k] - d[k][a * n + j]);
        }
        entries[(i * n + k) * n + j] = -v;
        entries[(i * n + j) * n + k] = std::move(v);
      }
    }
  }
  return Torsion12(n, std::move(entries));
}

OperatorField lie_derivative(const VectorField& X, const OperatorField& L) {
  const std::size_t n = L.dim();
  require_dim(X.dim(), n, "Lie derivative");
  const auto d = derivative_table(L);
  // dX[a][i] = d_a X^i
  std::vector<std::vector<RingElem>> dX(n, std::vector<RingElem>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) dX[a][i] = partial_derivative(X[i], a);
  }
  OperatorField r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RingElem v(n);
      for (std::size_t a = 0; a < n; ++a) {
        v += X[a] * d[a][i * n + j];
        v -= dX[a][i] * L(a, j);
        v += L(i, a) * dX[j][a];
      }
      r(i, j) = std::move(v);
    }
  }
  return r;
}

VectorField commutator(const VectorField& X, const VectorField& Y) {
  const std::size_t n = X.dim();
  require_dim(Y.dim(), n, "commutator");
  VectorField r(n);
  for (std::size_t i = 0; i < n; ++i) {
    RingElem v(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (!X[a].is_zero()) v += X[a] * partial_derivative(Y[i], a);
      if (!Y[a].is_zero()) v -= Y[a] * partial_derivative(X[i], a);
    }
    r[i] = std::move(v);
  }
  return r;
}

RingElem directional_derivative(const VectorField& X, const RingElem& f) {
  require_dim(X.dim(), f.num_vars(), "directional derivative");
  RingElem v(f.num_vars());
  for (std::size_t a = 0; a < X.dim(); ++a) v += X[a] * partial_derivative(f, a);
  return v;
}

RingElem trace(const OperatorField& L) {
  RingElem t(L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i) t += L(i, i);
  return t;
}

std::vector<RingElem> char_coefficients(const OperatorField& L) {
  // M_1 = Id, sigma_k = -tr(L M_k) / k, M_{k+1} = L M_k + sigma_k Id.
  const std::size_t n = L.dim();
  std::vector<RingElem> sigma;
  sigma.reserve(n);
  OperatorField M = OperatorField::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const OperatorField LM = L * M;
    sigma.push_back(trace(LM) * Rational(-1, static_cast<long>(k)));
    if (k < n) {
      M = LM;
      for (std::size_t i = 0; i < n; ++i) M(i, i) += sigma.back();
    }
  }
  return sigma;
}

CovectorField dual_apply(const OperatorField& L, const CovectorField& alpha) {
  const std::size_t n = L.dim();
  require_dim(alpha.dim(), n, "dual operator");
  CovectorField r(n);
  for (std::size_t j = 0; j < n; ++j) {
    RingElem v(n);
    for (std::size_t i = 0; i < n; ++i) v += L(i, j) * alpha[i];
    r[j] = std::move(v);
  }
  return r;
}

VectorField apply_operator(const OperatorField& L, const VectorField& X) {
  const std::size_t n = L.dim();
  require_dim(X.dim(), n, "operator application");
  VectorField r(n);
  for (std::size_t i = 0; i < n; ++i) {
    RingElem v(n);
    for (std::size_t j = 0; j < n; ++j) v += L(i, j) * X[j];
    r[i] = std::move(v);
  }
  return r;
}

OperatorField operator_power(const OperatorField& L, unsigned m) {
  OperatorField r = OperatorField::identity(L.dim());
  for (unsigned i = 0; i < m; ++i) r = r * L;
  return r;
}

CovectorField differential(const RingElem& f) {
  const std::size_t n = f.num_vars();
  CovectorField df(n);
  for (std::size_t a = 0; a < n; ++a) df[a] = partial_derivative(f, a);
  return df;
}

std::size_t exact_rank(const RationalMatrix& m) {
  std::vector<std::vector<mpz_class>> a;
  a.reserve(m.size());
  for (const auto& row : m) a.push_back(clear_denominators(row));
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t p = r;
    while (p < rows && a[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class v = a[r][col] * a[i][j] - a[i][col] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++r;
  }
  return r;
}

Rational exact_determinant(const RationalMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> a;
  mpz_class scale = 1;
  for (const auto& row : m) {
    if (row.size() != n) throw DimensionError("determinant of a non-square matrix");
    mpz_class s = 1;
    for (const auto& q : row) mpz_lcm(s.get_mpz_t(), s.get_mpz_t(), q.raw().get_den_mpz_t());
    scale *= s;
    a.push_back(clear_denominators(row));
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return Rational(mpq_class(sign * a[n - 1][n - 1], scale));
}

RingElem determinant(const std::vector<std::vector<RingElem>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw DimensionError("determinant of an empty matrix has no ring");
  if (n > 20) throw DimensionError("determinant supports at most 20 rows");
  for (const auto& row : m) {
    if (row.size() != n) throw DimensionError("determinant of a non-square matrix");
  }
  const std::size_t vars = m[0][0].num_vars();
  // minor[S] = det of rows (n - |S|)..n-1 restricted to the column set S.
  std::unordered_map<unsigned long, RingElem> minor;
  minor.emplace(0UL, RingElem::constant(vars, 1));
  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t row = n - size;
    for (unsigned long set = 0; set < (1UL << n); ++set) {
      if (static_cast<std::size_t>(__builtin_popcountl(set)) != size) continue;
      RingElem acc(vars);
      int position = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(set & (1UL << c))) continue;
        const RingElem& entry = m[row][c];
        if (!entry.is_zero()) {
          const RingElem& rest = minor.at(set & ~(1UL << c));
          if (!rest.is_zero()) {
            if (position % 2 == 0) acc += entry * rest;
            else acc -= entry * rest;
          }
        }
        ++position;
      }
      minor.emplace(set, std::move(acc));
    }
  }
  return minor.at((1UL << n) - 1);
}

std::vector<std::vector<RingElem>> adjugate(const std::vector<std::vector<RingElem>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw DimensionError("adjugate of an empty matrix");
  const std::size_t vars = m[0][0].num_vars();
  std::vector<std::vector<RingElem>> adj(n, std::vector<RingElem>(n, RingElem(vars)));
  if (n == 1) {
    adj[0][0] = RingElem::constant(vars, 1);
    return adj;
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<std::vector<RingElem>> sub;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == r) continue;
        std::vector<RingElem> row;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != c) row.push_back(m[i][j]);
        }
        sub.push_back(std::move(row));
      }
      RingElem cof = determinant(sub);
      adj[c][r] = (r + c) % 2 == 0 ? std::move(cof) : -cof;
    }
  }
  return adj;
}

RationalMatrix evaluate_matrix(const OperatorField& L, std::span<const Rational> point) {
  const std::size_t n = L.dim();
  RationalMatrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = evaluate(L(i, j), point);
  }
  return m;
}

bool gl_regular_at(const OperatorField& L, std::span<const Rational> point) {
  const std::size_t n = L.dim();
  require_dim(point.size(), n, "evaluation point");
  const RationalMatrix value = evaluate_matrix(L, point);
  RationalMatrix power(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) power[i][i] = 1;
  // Column p of `stacked` is the flattened p-th power.
  RationalMatrix stacked(n * n, std::vector<Rational>(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) stacked[i * n + j][p] = power[i][j];
    }
    RationalMatrix next(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) next[i][j] += value[i][k] * power[k][j];
      }
    }
    power = std::move(next);
  }
  return exact_rank(stacked) == n;
}

bool cyclic_at(const VectorField& xi, const OperatorField& L, std::span<const Rational> point) {
  const std::size_t n = L.dim();
  require_dim(xi.dim(), n, "cyclic vector");
  require_dim(point.size(), n, "evaluation point");
  const RationalMatrix value = evaluate_matrix(L, point);
  std::vector<Rational> column(n);
  for (std::size_t i = 0; i < n; ++i) column[i] = evaluate(xi[i], point);
  RationalMatrix krylov(n, std::vector<Rational>(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t i = 0; i < n; ++i) krylov[i][p] = column[i];
    std::vector<Rational> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) next[i] += value[i][k] * column[k];
    }
    column = std::move(next);
  }
  return !exact_determinant(krylov).is_zero();
}

}  // namespace nijenhuis
