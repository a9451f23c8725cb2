#include "sheafhist/product.hpp"

namespace sheafhist {

ProductSpace make_product(const FinitePresheaf& left, const FinitePresheaf& right) {
  ProductSpace x;
  x.left = &left;
  x.right = &right;
  x.nl = left.poset.n;
  x.nr = right.poset.n;
  int n = x.nl * x.nr;
  Poset p(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      p.rel[a][b] = left.poset.leq(a / x.nr, b / x.nr) && right.poset.leq(a % x.nr, b % x.nr);
  x.presheaf.poset = std::move(p);
  x.presheaf.stage_size.resize(n);
  x.presheaf.rmap.assign(n, std::vector<std::vector<int>>(n));
  for (int e = 0; e < n; ++e)
    x.presheaf.stage_size[e] = left.stage_size[e / x.nr] * right.stage_size[e % x.nr];
  for (int e = 0; e < n; ++e) {
    auto [v1, v2] = x.split(e);
    for (int f = 0; f < n; ++f) {
      if (!x.presheaf.poset.leq(f, e)) continue;
      auto [w1, w2] = x.split(f);
      int kr_e = right.stage_size[v2], kr_f = right.stage_size[w2];
      std::vector<int>& m = x.presheaf.rmap[e][f];
      m.resize(x.presheaf.stage_size[e]);
      for (int a = 0; a < left.stage_size[v1]; ++a)
        for (int b = 0; b < kr_e; ++b)
          m[a * kr_e + b] = left.rmap[v1][w1][a] * kr_f + right.rmap[v2][w2][b];
    }
  }
  x.presheaf.validate();
  return x;
}

Subobject pullback_left(const ProductSpace& x, const Subobject& s) {
  if (s.ps != x.left) throw Error(ErrorKind::Invariant, "pullback of a foreign subobject");
  Subobject z = empty_subobject(x.presheaf);
  for (int e = 0; e < x.presheaf.poset.n; ++e) {
    auto [v1, v2] = x.split(e);
    int kr = x.right->stage_size[v2];
    for (int a = 0; a < x.left->stage_size[v1]; ++a) {
      if (!s.sel[v1][a]) continue;
      for (int b = 0; b < kr; ++b) z.sel[e][a * kr + b] = 1;
    }
  }
  return z;
}

Subobject pullback_right(const ProductSpace& x, const Subobject& s) {
  if (s.ps != x.right) throw Error(ErrorKind::Invariant, "pullback of a foreign subobject");
  Subobject z = empty_subobject(x.presheaf);
  for (int e = 0; e < x.presheaf.poset.n; ++e) {
    auto [v1, v2] = x.split(e);
    int kr = x.right->stage_size[v2];
    for (int b = 0; b < kr; ++b) {
      if (!s.sel[v2][b]) continue;
      for (int a = 0; a < x.left->stage_size[v1]; ++a) z.sel[e][a * kr + b] = 1;
    }
  }
  return z;
}

Subobject realize(const ProductSpace& x, const TensorExpression& t) {
  Subobject z = empty_subobject(x.presheaf);
  for (const auto& [l, r] : t.terms)
    z = join_sub(z, meet_sub(pullback_left(x, l), pullback_right(x, r)));
  return z;
}

// Smallest subobject containing the given point of the given stage.
static Subobject principal_part(const FinitePresheaf& ps, int v, int p) {
  std::vector<std::vector<char>> sel(ps.poset.n);
  for (int w = 0; w < ps.poset.n; ++w) sel[w].assign(ps.stage_size[w], 0);
  sel[v][p] = 1;
  return close_selection(ps, std::move(sel));
}

TensorExpression decompose(const ProductSpace& x, const Subobject& s, std::uint64_t term_cap) {
  if (s.ps != &x.presheaf) throw Error(ErrorKind::Invariant, "decompose of a foreign subobject");
  TensorExpression t;
  for (int e = 0; e < x.presheaf.poset.n; ++e) {
    auto [v1, v2] = x.split(e);
    for (int p = 0; p < x.presheaf.stage_size[e]; ++p) {
      if (!s.sel[e][p]) continue;
      // skip points that are restrictions of selected points higher up;
      // their rectangles are subsumed by the ones emitted at the top
      bool fresh = true;
      for (int f = 0; f < x.presheaf.poset.n && fresh; ++f) {
        if (f == e || !x.presheaf.poset.leq(e, f)) continue;
        for (int q = 0; q < x.presheaf.stage_size[f]; ++q)
          if (s.sel[f][q] && x.presheaf.rmap[f][e][q] == p) {
            fresh = false;
            break;
          }
      }
      if (!fresh) continue;
      if (t.terms.size() >= term_cap)
        throw Error(ErrorKind::Capacity, "tensor decomposition exceeded its term cap");
      auto [a, b] = x.point_split(e, p);
      t.terms.emplace_back(principal_part(*x.left, v1, a), principal_part(*x.right, v2, b));
    }
  }
  return t;
}

bool tensor_eq(const ProductSpace& x, const TensorExpression& a, const TensorExpression& b) {
  return sub_eq(realize(x, a), realize(x, b));
}

ProductOmegaElement pair_global_elements(const ProductSpace& x, const OmegaGlobalElement& a,
                                         const OmegaGlobalElement& b) {
  if (static_cast<int>(a.at.size()) != x.nl || static_cast<int>(b.at.size()) != x.nr)
    throw Error(ErrorKind::Invariant, "pairing classifier elements of the wrong posets");
  ProductOmegaElement g;
  g.at.reserve(static_cast<size_t>(x.nl) * x.nr);
  for (int e = 0; e < x.nl * x.nr; ++e) {
    auto [v1, v2] = x.split(e);
    g.at.emplace_back(a.at[v1], b.at[v2]);
  }
  return g;
}

void validate_product_omega(const ProductSpace& x, const ProductOmegaElement& g) {
  if (static_cast<int>(g.at.size()) != x.nl * x.nr)
    throw Error(ErrorKind::Invariant, "product classifier element has wrong stage count");
  for (int e = 0; e < x.nl * x.nr; ++e) {
    auto [v1, v2] = x.split(e);
    const auto& [s1, s2] = g.at[e];
    if (s1.apex != v1 || !is_sieve(x.left->poset, s1) || s2.apex != v2 ||
        !is_sieve(x.right->poset, s2))
      throw Error(ErrorKind::Invariant, "product classifier stage is not a pair of sieves");
    for (int f = 0; f < x.nl * x.nr; ++f) {
      if (f == e || !x.presheaf.poset.leq(f, e)) continue;
      auto [w1, w2] = x.split(f);
      if (!sieve_eq(g.at[f].first, restrict_sieve(x.left->poset, s1, w1)) ||
          !sieve_eq(g.at[f].second, restrict_sieve(x.right->poset, s2, w2)))
        throw Error(ErrorKind::Invariant, "product classifier element is not compatible");
    }
  }
}

Sieve product_sieve_of_pair(const ProductSpace& x, const Sieve& s1, const Sieve& s2) {
  Sieve s = empty_sieve(x.presheaf.poset, x.elem(s1.apex, s2.apex));
  for (int e = 0; e < x.nl * x.nr; ++e) {
    auto [v1, v2] = x.split(e);
    s.members[e] = s1.members[v1] && s2.members[v2];
  }
  return s;
}

}  // namespace sheafhist
