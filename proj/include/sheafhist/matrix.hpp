// matrix.hpp: dense complex matrices over a scalar field R (double or Rat).
// Everything here avoids square roots so the exact field stays closed: joins
// and meets of projectors go through Gaussian elimination and Gram matrices.
#pragma once

#include <string>
#include <vector>

#include "sheafhist/num.hpp"

namespace sheafhist {

template <class R>
using Ket = std::vector<Cx<R>>;

template <class R>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<Cx<R>> a;  // row-major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Cx<R>& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Cx<R>& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix zero(int r, int c) { return Matrix(r, c); }
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Cx<R>::from(1.0);
    return m;
  }
};

inline std::string shape_str(int r, int c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

template <class R>
Matrix<R> operator+(const Matrix<R>& x, const Matrix<R>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw Error(ErrorKind::Dimension,
                "matrix sum: " + shape_str(x.rows, x.cols) + " vs " + shape_str(y.rows, y.cols));
  Matrix<R> z(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) z.a[i] = x.a[i] + y.a[i];
  return z;
}

template <class R>
Matrix<R> operator-(const Matrix<R>& x, const Matrix<R>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw Error(ErrorKind::Dimension,
                "matrix difference: " + shape_str(x.rows, x.cols) + " vs " + shape_str(y.rows, y.cols));
  Matrix<R> z(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) z.a[i] = x.a[i] - y.a[i];
  return z;
}

template <class R>
Matrix<R> operator*(const Cx<R>& s, const Matrix<R>& x) {
  Matrix<R> z(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) z.a[i] = s * x.a[i];
  return z;
}

template <class R>
Matrix<R> matmul(const Matrix<R>& x, const Matrix<R>& y) {
  if (x.cols != y.rows)
    throw Error(ErrorKind::Dimension,
                "matrix product: " + shape_str(x.rows, x.cols) + " times " + shape_str(y.rows, y.cols));
  Matrix<R> z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Cx<R>& xik = x.at(i, k);
      if (cx_zero(xik)) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

template <class R>
Matrix<R> operator*(const Matrix<R>& x, const Matrix<R>& y) {
  return matmul(x, y);
}

template <class R>
Matrix<R> adjoint(const Matrix<R>& x) {
  Matrix<R> z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(j, i) = conj(x.at(i, j));
  return z;
}

template <class R>
Cx<R> trace(const Matrix<R>& x) {
  Cx<R> t;
  for (int i = 0; i < x.rows && i < x.cols; ++i) t += x.at(i, i);
  return t;
}

template <class R>
R sup_norm(const Matrix<R>& x) {
  R m{};
  for (const auto& e : x.a) {
    R v = abs1(e);
    if (m < v) m = v;
  }
  return m;
}

template <class R>
bool mat_zero(const Matrix<R>& x) {
  for (const auto& e : x.a)
    if (!cx_zero(e)) return false;
  return true;
}

template <class R>
bool mat_eq(const Matrix<R>& x, const Matrix<R>& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (size_t i = 0; i < x.a.size(); ++i)
    if (!cx_eq(x.a[i], y.a[i])) return false;
  return true;
}

template <class R>
int mat_canon_cmp(const Matrix<R>& x, const Matrix<R>& y) {
  if (x.rows != y.rows) return x.rows < y.rows ? -1 : 1;
  if (x.cols != y.cols) return x.cols < y.cols ? -1 : 1;
  for (size_t i = 0; i < x.a.size(); ++i) {
    int c = cx_canon_cmp(x.a[i], y.a[i]);
    if (c != 0) return c;
  }
  return 0;
}

// Kronecker product in row-major block convention:
// (A otimes B)[(i*p+k),(j*q+l)] = A(i,j) * B(k,l) for B of shape p x q.
template <class R>
Matrix<R> kron(const Matrix<R>& x, const Matrix<R>& y) {
  long long rr = 1LL * x.rows * y.rows, cc = 1LL * x.cols * y.cols;
  if (rr > dimension_limit() || cc > dimension_limit())
    throw Error(ErrorKind::Dimension,
                "kron result " + shape_str(static_cast<int>(rr), static_cast<int>(cc)) +
                    " exceeds the dimension bound " + std::to_string(dimension_limit()));
  Matrix<R> z(static_cast<int>(rr), static_cast<int>(cc));
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      const Cx<R>& xij = x.at(i, j);
      if (cx_zero(xij) && !exact_field<R>) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l)
          z.at(i * y.rows + k, j * y.cols + l) = xij * y.at(k, l);
    }
  return z;
}

template <class R>
Ket<R> kron_vec(const Ket<R>& x, const Ket<R>& y) {
  if (1LL * x.size() * y.size() > dimension_limit())
    throw Error(ErrorKind::Dimension, "kron of kets exceeds the dimension bound");
  Ket<R> z(x.size() * y.size());
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t k = 0; k < y.size(); ++k) z[i * y.size() + k] = x[i] * y[k];
  return z;
}

template <class R>
bool is_self_adjoint(const Matrix<R>& x) {
  return x.rows == x.cols && mat_zero(x - adjoint(x));
}

template <class R>
bool is_projector(const Matrix<R>& x) {
  return x.rows == x.cols && is_self_adjoint(x) && mat_zero(x * x - x);
}

template <class R>
void require_projector(const Matrix<R>& x, const std::string& name) {
  if (!is_projector(x)) throw Error(ErrorKind::Invariant, "'" + name + "' is not a projector");
}

template <class R>
bool is_unitary(const Matrix<R>& x) {
  return x.rows == x.cols && mat_zero(adjoint(x) * x - Matrix<R>::identity(x.rows));
}

// Projector order: p <= q iff q p = p.
template <class R>
bool proj_leq(const Matrix<R>& p, const Matrix<R>& q) {
  return mat_zero(q * p - p);
}

template <class R>
R norm2(const Ket<R>& v) {
  R s{};
  for (const auto& e : v) s += abs2(e);
  return s;
}

template <class R>
Cx<R> dot(const Ket<R>& bra, const Ket<R>& ket) {
  if (bra.size() != ket.size()) throw Error(ErrorKind::Dimension, "inner product of unequal kets");
  Cx<R> s;
  for (size_t i = 0; i < bra.size(); ++i) s += conj(bra[i]) * ket[i];
  return s;
}

template <class R>
Ket<R> apply(const Matrix<R>& m, const Ket<R>& v) {
  if (m.cols != static_cast<int>(v.size()))
    throw Error(ErrorKind::Dimension, "matrix-ket product: " + shape_str(m.rows, m.cols) +
                                          " times ket of length " + std::to_string(v.size()));
  Ket<R> w(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) w[i] += m.at(i, j) * v[j];
  return w;
}

template <class R>
bool is_unit_ket(const Ket<R>& v) {
  return near_zero(norm2(v) - real_from_double<R>(1.0));
}

template <class R>
Matrix<R> projector_from_ket(const Ket<R>& v) {
  if (!is_unit_ket(v)) throw Error(ErrorKind::Invariant, "ket is not unit norm");
  int n = static_cast<int>(v.size());
  Matrix<R> p(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.at(i, j) = v[i] * conj(v[j]);
  return p;
}

template <class R>
Ket<R> evolve(const Matrix<R>& u, const Ket<R>& v) {
  if (!is_unitary(u)) throw Error(ErrorKind::Invariant, "evolution matrix is not unitary");
  Ket<R> w = apply(u, v);
  R n2 = norm2(w);
  if constexpr (exact_field<R>) {
    if (n2 != 1) throw Error(ErrorKind::Invariant, "evolved ket is not exactly unit norm");
  } else {
    if (std::fabs(real_to_double(n2) - 1.0) > 1e-6)
      throw Error(ErrorKind::Invariant, "evolved ket drifted far from unit norm");
    double s = 1.0 / std::sqrt(real_to_double(n2));
    for (auto& e : w) e = Cx<R>::from(s) * e;
  }
  return w;
}

template <class R>
Cx<R> expectation(const Ket<R>& psi, const Matrix<R>& m) {
  return dot(psi, apply(m, psi));
}

// --- Gaussian elimination utilities -----------------------------------------
// Row reduction to reduced echelon form; pivots chosen by largest abs1.
// Returns pivot column indices. Rows are modified in place.
template <class R>
std::vector<int> row_reduce(std::vector<std::vector<Cx<R>>>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  int nr = static_cast<int>(rows.size());
  int nc = static_cast<int>(rows[0].size());
  int r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    int best = -1;
    for (int i = r; i < nr; ++i)
      if (!cx_zero(rows[i][c]) && (best < 0 || abs1(rows[best][c]) < abs1(rows[i][c]))) best = i;
    if (best < 0) continue;
    std::swap(rows[r], rows[best]);
    Cx<R> inv = Cx<R>::from(1.0) / rows[r][c];
    for (int j = c; j < nc; ++j) rows[r][j] = inv * rows[r][j];
    for (int i = 0; i < nr; ++i) {
      if (i == r || cx_zero(rows[i][c])) continue;
      Cx<R> f = rows[i][c];
      for (int j = c; j < nc; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis of the column space, as kets.
template <class R>
std::vector<Ket<R>> column_space_basis(const Matrix<R>& m) {
  std::vector<std::vector<Cx<R>>> rows(m.cols, std::vector<Cx<R>>(m.rows));
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < m.rows; ++i) rows[j][i] = m.at(i, j);
  size_t rank = row_reduce(rows).size();
  rows.resize(rank);
  return rows;
}

template <class R>
int rank(const Matrix<R>& m) {
  return static_cast<int>(column_space_basis(m).size());
}

// Basis of { v : M v = 0 }.
template <class R>
std::vector<Ket<R>> nullspace(const Matrix<R>& m) {
  std::vector<std::vector<Cx<R>>> rows(m.rows, std::vector<Cx<R>>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) rows[i][j] = m.at(i, j);
  std::vector<int> pivots = row_reduce(rows);
  std::vector<char> is_pivot(m.cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<Ket<R>> basis;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    Ket<R> v(m.cols);
    v[f] = Cx<R>::from(1.0);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class R>
Matrix<R> inverse(const Matrix<R>& m) {
  if (m.rows != m.cols) throw Error(ErrorKind::Dimension, "inverse of non-square matrix");
  int n = m.rows;
  std::vector<std::vector<Cx<R>>> rows(n, std::vector<Cx<R>>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[i][j] = m.at(i, j);
    rows[i][n + i] = Cx<R>::from(1.0);
  }
  std::vector<int> pivots = row_reduce(rows);
  int lead = 0;
  for (int c : pivots)
    if (c < n) ++lead;
  if (lead != n) throw Error(ErrorKind::Invariant, "matrix is singular");
  Matrix<R> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = rows[i][n + j];
  return inv;
}

// Orthogonal projector onto span(basis) via P = B (B* B)^-1 B*.
template <class R>
Matrix<R> span_projector(const std::vector<Ket<R>>& basis, int dim) {
  if (basis.empty()) return Matrix<R>::zero(dim, dim);
  int k = static_cast<int>(basis.size());
  Matrix<R> b(dim, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < dim; ++i) b.at(i, j) = basis[j][i];
  Matrix<R> bh = adjoint(b);
  Matrix<R> p = b * inverse(bh * b) * bh;
  return p;
}

// Join of projectors: projector onto range(p) + range(q).
template <class R>
Matrix<R> proj_join(const Matrix<R>& p, const Matrix<R>& q) {
  if (p.rows != q.rows || p.cols != q.cols)
    throw Error(ErrorKind::Dimension, "join of projectors with different shapes");
  Matrix<R> side(p.rows, p.cols + q.cols);
  for (int i = 0; i < p.rows; ++i) {
    for (int j = 0; j < p.cols; ++j) side.at(i, j) = p.at(i, j);
    for (int j = 0; j < q.cols; ++j) side.at(i, p.cols + j) = q.at(i, j);
  }
  return span_projector(column_space_basis(side), p.rows);
}

// Meet of projectors: projector onto range(p) intersect range(q), computed as
// the kernel of (1-p) + (1-q), which is positive semidefinite.
template <class R>
Matrix<R> proj_meet(const Matrix<R>& p, const Matrix<R>& q) {
  if (p.rows != q.rows || p.cols != q.cols)
    throw Error(ErrorKind::Dimension, "meet of projectors with different shapes");
  Matrix<R> i = Matrix<R>::identity(p.rows);
  return span_projector(nullspace((i - p) + (i - q)), p.rows);
}

// Characteristic polynomial coefficients c_1..c_n of det(xI - M) =
// x^n - c_1 x^(n-1) + c_2 x^(n-2) - ... via the Faddeev-LeVerrier recursion.
template <class R>
std::vector<Cx<R>> char_poly_coeffs(const Matrix<R>& m) {
  if (m.rows != m.cols) throw Error(ErrorKind::Dimension, "characteristic polynomial of non-square matrix");
  int n = m.rows;
  std::vector<Cx<R>> c(n);
  Matrix<R> mk = m;
  for (int k = 1; k <= n; ++k) {
    Cx<R> t = trace(mk);
    Cx<R> ck = {t.re / real_from_double<R>(static_cast<double>(k)),
                t.im / real_from_double<R>(static_cast<double>(k))};
    if (k % 2 == 0) ck = {-ck.re, -ck.im};
    c[k - 1] = ck;
    if (k < n) {
      Cx<R> dk = (k % 2 == 1) ? Cx<R>{-ck.re, -ck.im} : ck;
      mk = m * (mk + dk * Matrix<R>::identity(n));
    }
  }
  return c;
}

// Positive semidefiniteness of a self-adjoint matrix: all sums of principal
// minors are nonnegative. Tolerance is scaled by the minor count and norm.
template <class R>
bool is_psd(const Matrix<R>& m) {
  if (!is_self_adjoint(m)) return false;
  int n = m.rows;
  std::vector<Cx<R>> c = char_poly_coeffs(m);
  double nrm = std::max(1.0, real_to_double(sup_norm(m)));
  double binom = 1.0, scale = 1.0;
  for (int k = 1; k <= n; ++k) {
    binom *= static_cast<double>(n - k + 1) / k;
    scale *= nrm;
    double slack = exact_field<R> ? 0.0 : tolerance() * binom * scale * n;
    if (real_to_double(real_abs(c[k - 1].im)) > slack + tolerance()) return false;
    if (real_to_double(c[k - 1].re) < -(slack + tolerance())) return false;
  }
  return true;
}

template <class R>
bool is_density(const Matrix<R>& m) {
  return m.rows == m.cols && is_self_adjoint(m) &&
         cx_eq(trace(m), Cx<R>::from(1.0)) && is_psd(m);
}

// --- small builders used by tests and fixtures -------------------------------

template <class R>
Matrix<R> mat_from(const std::vector<std::vector<Cx<R>>>& rows) {
  Matrix<R> m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols)
      throw Error(ErrorKind::Dimension, "ragged matrix literal");
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

template <class R>
Matrix<R> mat_real(const std::vector<std::vector<double>>& rows) {
  Matrix<R> m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = Cx<R>::from(rows[i][j]);
  return m;
}

template <class R>
Matrix<R> diag_real(const std::vector<double>& d) {
  Matrix<R> m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows; ++i) m.at(i, i) = Cx<R>::from(d[i]);
  return m;
}

}  // namespace sheafhist
