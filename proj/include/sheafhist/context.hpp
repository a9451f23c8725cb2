// context.hpp: measurement contexts, i.e. finite resolutions of the identity into
// orthogonal minimal projectors, ordered by refinement into a poset, and the
// spectral presheaf that poset carries. One spectrum point per minimal.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sheafhist/matrix.hpp"
#include "sheafhist/presheaf.hpp"

namespace sheafhist {

template <class R>
struct Context {
  int dim = 0;
  std::vector<Matrix<R>> minimals;  // canonically ordered, orthogonal, summing to 1

  int points() const { return static_cast<int>(minimals.size()); }
};

template <class R>
Context<R> trivial_context(int dim) {
  Context<R> c;
  c.dim = dim;
  c.minimals.push_back(Matrix<R>::identity(dim));
  return c;
}

template <class R>
void validate_context(const Context<R>& c) {
  Matrix<R> sum = Matrix<R>::zero(c.dim, c.dim);
  for (size_t i = 0; i < c.minimals.size(); ++i) {
    if (!is_projector(c.minimals[i]) || mat_zero(c.minimals[i]))
      throw Error(ErrorKind::Invariant, "context minimal is not a nonzero projector");
    for (size_t j = i + 1; j < c.minimals.size(); ++j)
      if (!mat_zero(c.minimals[i] * c.minimals[j]))
        throw Error(ErrorKind::Invariant, "context minimals are not orthogonal");
    sum = sum + c.minimals[i];
  }
  if (!mat_eq(sum, Matrix<R>::identity(c.dim)))
    throw Error(ErrorKind::Invariant, "context minimals do not sum to the identity");
}

// The abelian algebra generated by commuting projectors, presented through its
// atoms: nonzero products over all ways of taking each generator or its
// complement. Generator names are only used in error messages.
template <class R>
Context<R> context_from_commuting(const std::vector<Matrix<R>>& gens, int dim,
                                  const std::vector<std::string>& names = {}) {
  auto name_of = [&](size_t i) {
    return i < names.size() ? names[i] : "#" + std::to_string(i);
  };
  if (gens.size() > 20)
    throw Error(ErrorKind::Capacity, "too many generators for one context");
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].rows != dim || gens[i].cols != dim)
      throw Error(ErrorKind::Dimension, "generator '" + name_of(i) + "' has the wrong shape");
    require_projector(gens[i], name_of(i));
  }
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!mat_zero(gens[i] * gens[j] - gens[j] * gens[i]))
        throw Error(ErrorKind::Commutation,
                    "generators '" + name_of(i) + "' and '" + name_of(j) + "' do not commute");

  Context<R> c;
  c.dim = dim;
  Matrix<R> id = Matrix<R>::identity(dim);
  for (size_t mask = 0; mask < (size_t{1} << gens.size()); ++mask) {
    Matrix<R> t = id;
    for (size_t i = 0; i < gens.size(); ++i)
      t = t * ((mask >> i) & 1 ? gens[i] : id - gens[i]);
    if (!mat_zero(t)) c.minimals.push_back(std::move(t));
  }
  std::sort(c.minimals.begin(), c.minimals.end(),
            [](const Matrix<R>& a, const Matrix<R>& b) { return mat_canon_cmp(a, b) < 0; });
  validate_context(c);
  return c;
}

template <class R>
bool context_eq(const Context<R>& a, const Context<R>& b) {
  if (a.dim != b.dim || a.points() != b.points()) return false;
  for (int i = 0; i < a.points(); ++i)
    if (!mat_eq(a.minimals[i], b.minimals[i])) return false;
  return true;
}

template <class R>
bool context_canon_less(const Context<R>& a, const Context<R>& b) {
  if (a.points() != b.points()) return a.points() < b.points();
  for (int i = 0; i < a.points(); ++i) {
    int c = mat_canon_cmp(a.minimals[i], b.minimals[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

// coarse <= fine iff every minimal of coarse is a sum of minimals of fine.
template <class R>
bool context_leq(const Context<R>& coarse, const Context<R>& fine) {
  if (coarse.dim != fine.dim) return false;
  for (const Matrix<R>& q : coarse.minimals) {
    Matrix<R> s = Matrix<R>::zero(coarse.dim, coarse.dim);
    for (const Matrix<R>& m : fine.minimals)
      if (proj_leq(m, q)) s = s + m;
    if (!mat_eq(s, q)) return false;
  }
  return true;
}

// Largest common coarsening. The minimals of the meet are the blocks of the
// bipartite overlap graph on the two minimal families: summing either side of
// a connected component gives the same projector, and those block sums are
// exactly the projectors lying in both algebras.
template <class R>
Context<R> context_meet(const Context<R>& a, const Context<R>& b) {
  if (a.dim != b.dim) throw Error(ErrorKind::Dimension, "meet of contexts on different spaces");
  int ka = a.points(), kb = b.points();
  std::vector<int> comp(ka + kb, -1);
  std::vector<int> stack;
  int ncomp = 0;
  for (int s = 0; s < ka + kb; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    stack.assign(1, s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (u < ka) {
        for (int j = 0; j < kb; ++j)
          if (comp[ka + j] < 0 && !mat_zero(a.minimals[u] * b.minimals[j])) {
            comp[ka + j] = ncomp;
            stack.push_back(ka + j);
          }
      } else {
        for (int i = 0; i < ka; ++i)
          if (comp[i] < 0 && !mat_zero(a.minimals[i] * b.minimals[u - ka])) {
            comp[i] = ncomp;
            stack.push_back(i);
          }
      }
    }
    ++ncomp;
  }
  Context<R> m;
  m.dim = a.dim;
  for (int c = 0; c < ncomp; ++c) {
    Matrix<R> sa = Matrix<R>::zero(a.dim, a.dim), sb = sa;
    for (int i = 0; i < ka; ++i)
      if (comp[i] == c) sa = sa + a.minimals[i];
    for (int j = 0; j < kb; ++j)
      if (comp[ka + j] == c) sb = sb + b.minimals[j];
    if (!mat_eq(sa, sb))
      throw Error(ErrorKind::Invariant, "context meet block sums disagree");
    m.minimals.push_back(std::move(sa));
  }
  std::sort(m.minimals.begin(), m.minimals.end(),
            [](const Matrix<R>& x, const Matrix<R>& y) { return mat_canon_cmp(x, y) < 0; });
  validate_context(m);
  return m;
}

// Index of the unique minimal of `to` dominating minimal i of `from`.
template <class R>
int restrict_point(const Context<R>& from, int i, const Context<R>& to) {
  int found = -1;
  for (int j = 0; j < to.points(); ++j) {
    if (!proj_leq(from.minimals[i], to.minimals[j])) continue;
    if (found >= 0)
      throw Error(ErrorKind::Invariant, "spectrum point restricts ambiguously");
    found = j;
  }
  if (found < 0)
    throw Error(ErrorKind::Invariant, "spectrum point has no restriction; contexts are unrelated");
  return found;
}

template <class R>
struct ContextPoset {
  std::vector<Context<R>> contexts;  // canonical order, trivial first
  std::vector<std::string> labels;
  Poset order;
  int trivial = -1;

  int find(const Context<R>& c) const {
    for (size_t i = 0; i < contexts.size(); ++i)
      if (context_eq(contexts[i], c)) return static_cast<int>(i);
    return -1;
  }
};

// Closure of the given contexts under pairwise meet, with the trivial context
// adjoined. Labels follow their contexts; generated elements are labelled
// V<k> by canonical position.
template <class R>
ContextPoset<R> close_poset(std::vector<Context<R>> cs, std::vector<std::string> labels = {}) {
  if (cs.empty()) throw Error(ErrorKind::Invariant, "poset closure needs at least one context");
  int dim = cs[0].dim;
  for (const auto& c : cs)
    if (c.dim != dim) throw Error(ErrorKind::Dimension, "contexts live on different spaces");
  labels.resize(cs.size());

  std::vector<Context<R>> all;
  std::vector<std::string> names;
  auto push_unique = [&](Context<R> c, std::string name) {
    for (const auto& have : all)
      if (context_eq(have, c)) return;
    all.push_back(std::move(c));
    names.push_back(std::move(name));
  };
  for (size_t i = 0; i < cs.size(); ++i) push_unique(std::move(cs[i]), std::move(labels[i]));
  push_unique(trivial_context<R>(dim), "1");

  for (size_t i = 0; i < all.size(); ++i) {
    if (all.size() > 4096) throw Error(ErrorKind::Capacity, "context poset closure is too large");
    for (size_t j = 0; j < i; ++j) push_unique(context_meet(all[i], all[j]), "");
  }

  std::vector<size_t> idx(all.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
    if (context_canon_less(all[x], all[y])) return true;
    if (context_canon_less(all[y], all[x])) return false;
    return x < y;
  });

  ContextPoset<R> p;
  for (size_t r = 0; r < idx.size(); ++r) {
    p.contexts.push_back(std::move(all[idx[r]]));
    p.labels.push_back(std::move(names[idx[r]]));
  }
  for (size_t r = 0; r < p.contexts.size(); ++r) {
    if (!p.labels[r].empty()) continue;
    std::string candidate = "V" + std::to_string(r);
    while (std::find(p.labels.begin(), p.labels.end(), candidate) != p.labels.end())
      candidate += "'";
    p.labels[r] = candidate;
  }

  int n = static_cast<int>(p.contexts.size());
  p.order = Poset(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      p.order.rel[i][j] = context_leq(p.contexts[i], p.contexts[j]);
  p.order.validate();
  for (int i = 0; i < n; ++i)
    if (p.contexts[i].points() == 1) p.trivial = i;
  if (p.trivial < 0) throw Error(ErrorKind::Invariant, "closed poset lost the trivial context");
  return p;
}

// The spectral presheaf over a closed context poset.
template <class R>
struct SpectralSpace {
  ContextPoset<R> contexts;
  FinitePresheaf presheaf;

  int points(int v) const { return contexts.contexts[v].points(); }
};

// Note: subobjects keep a pointer to `presheaf`, so the returned space must
// stay at a fixed address while they are in use.
template <class R>
SpectralSpace<R> make_spectral_space(ContextPoset<R> poset) {
  SpectralSpace<R> s;
  s.contexts = std::move(poset);
  int n = static_cast<int>(s.contexts.contexts.size());
  s.presheaf.poset = s.contexts.order;
  s.presheaf.stage_size.resize(n);
  s.presheaf.rmap.assign(n, std::vector<std::vector<int>>(n));
  for (int v = 0; v < n; ++v) s.presheaf.stage_size[v] = s.contexts.contexts[v].points();
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      if (!s.contexts.order.leq(w, v)) continue;
      auto& m = s.presheaf.rmap[v][w];
      m.resize(s.presheaf.stage_size[v]);
      for (int p = 0; p < s.presheaf.stage_size[v]; ++p)
        m[p] = restrict_point(s.contexts.contexts[v], p, s.contexts.contexts[w]);
    }
  s.presheaf.validate();
  return s;
}

}  // namespace sheafhist
