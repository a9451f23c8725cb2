// hpo.hpp: homogeneous history projectors on the tensor space, their
// negation as a disjoint join, tensor contexts on the product space, and the
// pullback of tensor-space daseinization to product stages.
#pragma once

#include "sheafhist/dasein.hpp"
#include "sheafhist/product.hpp"

namespace sheafhist {

template <class R>
Matrix<R> hpo_projector(const std::vector<Matrix<R>>& slots) {
  if (slots.empty()) throw Error(ErrorKind::Invariant, "history projector needs at least one slot");
  for (size_t i = 0; i < slots.size(); ++i)
    require_projector(slots[i], "slot " + std::to_string(i));
  Matrix<R> t = slots[0];
  for (size_t i = 1; i < slots.size(); ++i) t = kron(t, slots[i]);
  return t;
}

// Negation of a two-slot homogeneous history as three pairwise-disjoint
// homogeneous terms summing to 1 - a (x) b.
template <class R>
std::vector<Matrix<R>> hpo_negation(const std::vector<Matrix<R>>& slots) {
  if (slots.size() != 2)
    throw Error(ErrorKind::Dimension, "history negation is defined for exactly two slots, got " +
                                          std::to_string(slots.size()));
  const Matrix<R>& a = slots[0];
  const Matrix<R>& b = slots[1];
  require_projector(a, "slot 0");
  require_projector(b, "slot 1");
  Matrix<R> na = Matrix<R>::identity(a.rows) - a;
  Matrix<R> nb = Matrix<R>::identity(b.rows) - b;
  return {kron(na, b), kron(a, nb), kron(na, nb)};
}

// The tensor context of two contexts: minimals are all Kronecker products of
// the component minimals.
template <class R>
Context<R> tensor_context(const Context<R>& a, const Context<R>& b) {
  Context<R> t;
  t.dim = a.dim * b.dim;
  if (t.dim > dimension_limit())
    throw Error(ErrorKind::Dimension, "tensor context exceeds the dimension bound");
  for (const Matrix<R>& q : a.minimals)
    for (const Matrix<R>& r : b.minimals) t.minimals.push_back(kron(q, r));
  std::sort(t.minimals.begin(), t.minimals.end(),
            [](const Matrix<R>& x, const Matrix<R>& y) { return mat_canon_cmp(x, y) < 0; });
  validate_context(t);
  return t;
}

// Index in the tensor context of the product of the given component minimals;
// the pairing is a bijection between point pairs and tensor points.
template <class R>
int tensor_point(const Context<R>& a, int i, const Context<R>& b, int j, const Context<R>& ab) {
  Matrix<R> q = kron(a.minimals[i], b.minimals[j]);
  for (int k = 0; k < ab.points(); ++k)
    if (mat_eq(ab.minimals[k], q)) return k;
  throw Error(ErrorKind::Invariant, "tensor context is missing a product minimal");
}

template <class R>
std::pair<int, int> tensor_point_split(const Context<R>& a, const Context<R>& b,
                                       const Context<R>& ab, int k) {
  for (int i = 0; i < a.points(); ++i)
    for (int j = 0; j < b.points(); ++j)
      if (mat_eq(ab.minimals[k], kron(a.minimals[i], b.minimals[j]))) return {i, j};
  throw Error(ErrorKind::Invariant, "tensor point does not split");
}

// Daseinization of a tensor-space projector restricted to product stages:
// at <v1,v2> the selection of pairs whose product minimal overlaps p.
template <class R>
Subobject dasein_on_product(const Matrix<R>& p, const SpectralSpace<R>& s1,
                            const SpectralSpace<R>& s2, const ProductSpace& x) {
  if (x.left != &s1.presheaf || x.right != &s2.presheaf)
    throw Error(ErrorKind::Invariant, "product space does not match the component spaces");
  require_projector(p, "history proposition");
  std::vector<std::vector<char>> sel(x.presheaf.poset.n);
  for (int e = 0; e < x.presheaf.poset.n; ++e) {
    auto [v1, v2] = x.split(e);
    const Context<R>& c1 = s1.contexts.contexts[v1];
    const Context<R>& c2 = s2.contexts.contexts[v2];
    sel[e].assign(x.presheaf.stage_size[e], 0);
    for (int a = 0; a < c1.points(); ++a)
      for (int b = 0; b < c2.points(); ++b)
        sel[e][a * c2.points() + b] = !mat_zero(kron(c1.minimals[a], c2.minimals[b]) * p);
  }
  return make_subobject(x.presheaf, std::move(sel));
}

// The entangled-proposition study on two qubits: the projector onto the
// singlet line compared against the sum of the two definite-outcome
// projectors it refines, and its daseinization at a product context versus an
// entangled context containing it.
template <class R>
struct EntangledDemo {
  Matrix<R> p_up_down, p_down_up, p_singlet, pair_sum, defect;
  Matrix<R> dasein_product_ctx, dasein_entangled_ctx;
  bool differs = false;          // p_singlet != pair_sum
  bool strictly_below = false;   // p_singlet < pair_sum
  bool defect_rank_one = false;  // pair_sum - p_singlet is a rank-1 projector
  bool refinement_strict = false;  // dasein at entangled ctx < dasein at product ctx
};

template <class R>
EntangledDemo<R> entangled_demo() {
  EntangledDemo<R> d;
  d.p_up_down = diag_real<R>({0, 1, 0, 0});
  d.p_down_up = diag_real<R>({0, 0, 1, 0});
  d.p_singlet = mat_real<R>({{0, 0, 0, 0},
                             {0, 0.5, -0.5, 0},
                             {0, -0.5, 0.5, 0},
                             {0, 0, 0, 0}});
  require_projector(d.p_singlet, "singlet projector");
  d.pair_sum = d.p_up_down + d.p_down_up;
  d.defect = d.pair_sum - d.p_singlet;
  d.differs = !mat_eq(d.p_singlet, d.pair_sum);
  d.strictly_below = proj_leq(d.p_singlet, d.pair_sum) && d.differs;
  d.defect_rank_one = is_projector(d.defect) && cx_eq(trace(d.defect), Cx<R>::from(1.0));

  Context<R> z = context_from_commuting<R>({diag_real<R>({1, 0})}, 2, {"Pz+"});
  Context<R> zz = tensor_context(z, z);
  Context<R> ent = context_from_commuting<R>({d.p_singlet}, 4, {"Psinglet"});
  d.dasein_product_ctx = dasein_at(d.p_singlet, zz);
  d.dasein_entangled_ctx = dasein_at(d.p_singlet, ent);
  d.refinement_strict = proj_leq(d.dasein_entangled_ctx, d.dasein_product_ctx) &&
                        !mat_eq(d.dasein_entangled_ctx, d.dasein_product_ctx);
  return d;
}

}  // namespace sheafhist
