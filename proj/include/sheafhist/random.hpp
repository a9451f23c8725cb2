// random.hpp: seeded generators for states, unitaries, projectors and
// subobjects.  Over the rational field the generators compose Pythagorean
// rotations and fourth-root phases so every output is exactly unitary.
#pragma once

#include <random>

#include "sheafhist/matrix.hpp"
#include "sheafhist/presheaf.hpp"

namespace sheafhist {

using Rng = std::mt19937_64;

inline Ket<double> random_ket(int dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Ket<double> v(dim);
  double n2 = 0.0;
  do {
    for (auto& c : v) {
      c = Cx<double>{g(rng), g(rng)};
      n2 += abs2(c);
    }
  } while (n2 < 1e-12);
  double inv = 1.0 / std::sqrt(n2);
  for (auto& c : v) c = Cx<double>{c.re * inv, c.im * inv};
  return v;
}

namespace detail {

inline Matrix<double> gaussian_matrix(int dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix<double> a(dim, dim);
  for (auto& c : a.a) c = Cx<double>{g(rng), g(rng)};
  return a;
}

// Modified Gram-Schmidt on the columns.
inline Matrix<double> orthonormalize(Matrix<double> a) {
  int n = a.rows;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      Cx<double> ip{0.0, 0.0};
      for (int i = 0; i < n; ++i) ip = ip + conj(a.at(i, k)) * a.at(i, j);
      for (int i = 0; i < n; ++i) a.at(i, j) = a.at(i, j) - ip * a.at(i, k);
    }
    double n2 = 0.0;
    for (int i = 0; i < n; ++i) n2 += abs2(a.at(i, j));
    double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < n; ++i) a.at(i, j) = Cx<double>{a.at(i, j).re * inv, a.at(i, j).im * inv};
  }
  return a;
}

template <class R>
Cx<R> rational_phase(Rng& rng) {
  switch (rng() % 6) {
    case 0: return Cx<R>::from(1.0);
    case 1: return Cx<R>::from(-1.0);
    case 2: return Cx<R>::from(0.0, 1.0);
    case 3: return Cx<R>::from(0.0, -1.0);
    case 4: return Cx<R>{R(3) / R(5), R(4) / R(5)};
    default: return Cx<R>{R(3) / R(5), R(-4) / R(5)};
  }
}

}  // namespace detail

template <class R>
Matrix<R> random_unitary(int dim, Rng& rng) {
  if constexpr (!exact_field<R>) {
    return detail::orthonormalize(detail::gaussian_matrix(dim, rng));
  } else {
    static const int triples[4][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {20, 21, 29}};
    Matrix<R> u = Matrix<R>::identity(dim);
    for (int d = 0; d < dim; ++d) u.at(d, d) = detail::rational_phase<R>(rng);
    int rounds = 2 * dim + 1;
    for (int r = 0; r < rounds && dim > 1; ++r) {
      int i = static_cast<int>(rng() % dim);
      int j = static_cast<int>(rng() % dim);
      if (i == j) continue;
      const int* t = triples[rng() % 4];
      Cx<R> c = Cx<R>(real_from_double<R>(t[0]) / real_from_double<R>(t[2]), R(0));
      Cx<R> s = Cx<R>(real_from_double<R>(t[1]) / real_from_double<R>(t[2]), R(0));
      Cx<R> ph = detail::rational_phase<R>(rng);
      Matrix<R> g = Matrix<R>::identity(dim);
      g.at(i, i) = c;
      g.at(j, j) = c;
      g.at(i, j) = Cx<R>::from(0.0) - ph * s;
      g.at(j, i) = conj(ph) * s;
      u = u * g;
    }
    return u;
  }
}

template <class R>
Matrix<R> random_projector_rank(int dim, int rank, Rng& rng) {
  Matrix<R> u = random_unitary<R>(dim, rng);
  Matrix<R> p = Matrix<R>::zero(dim, dim);
  for (int k = 0; k < rank; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) p.at(i, j) = p.at(i, j) + u.at(i, k) * conj(u.at(j, k));
  return p;
}

template <class R>
Matrix<R> random_projector(int dim, Rng& rng) {
  return random_projector_rank<R>(dim, static_cast<int>(rng() % (dim + 1)), rng);
}

// A family of projectors diagonal in one random frame, hence commuting.
template <class R>
std::vector<Matrix<R>> random_commuting_projectors(int dim, int count, Rng& rng) {
  Matrix<R> u = random_unitary<R>(dim, rng);
  std::vector<Matrix<R>> out;
  for (int c = 0; c < count; ++c) {
    std::uint64_t mask = rng() % (1ull << dim);
    Matrix<R> p = Matrix<R>::zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
      if (!((mask >> k) & 1)) continue;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) p.at(i, j) = p.at(i, j) + u.at(i, k) * conj(u.at(j, k));
    }
    out.push_back(std::move(p));
  }
  return out;
}

template <class R>
Ket<R> random_field_ket(int dim, Rng& rng) {
  if constexpr (!exact_field<R>) {
    return random_ket(dim, rng);
  } else {
    Matrix<R> u = random_unitary<R>(dim, rng);
    Ket<R> v(dim);
    for (int i = 0; i < dim; ++i) v[i] = u.at(i, 0);
    return v;
  }
}

template <class R>
Matrix<R> random_density(int dim, Rng& rng) {
  if constexpr (!exact_field<R>) {
    Matrix<double> a = detail::gaussian_matrix(dim, rng);
    Matrix<double> g = a * adjoint(a);
    Cx<double> t = trace(g);
    return Cx<double>{1.0 / t.re, 0.0} * g;
  } else {
    Matrix<R> u = random_unitary<R>(dim, rng);
    std::vector<R> w(dim);
    R total(0);
    for (int i = 0; i < dim; ++i) {
      w[i] = real_from_double<R>(static_cast<double>(1 + rng() % 7));
      total += w[i];
    }
    Matrix<R> rho = Matrix<R>::zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
      Cx<R> wk(w[k] / total, R(0));
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          rho.at(i, j) = rho.at(i, j) + wk * u.at(i, k) * conj(u.at(j, k));
    }
    return rho;
  }
}

inline Subobject random_subobject(const FinitePresheaf& ps, Rng& rng) {
  std::vector<std::vector<char>> sel(ps.poset.n);
  for (int v = 0; v < ps.poset.n; ++v) {
    sel[v].assign(ps.stage_size[v], 0);
    for (int p = 0; p < ps.stage_size[v]; ++p) sel[v][p] = rng() % 2;
  }
  return close_selection(ps, std::move(sel));
}

}  // namespace sheafhist
