// dasein.hpp: outer daseinization of projectors, pseudo-states, and the
// sieve-valued truth of "this state makes that proposition true".
#pragma once

#include "sheafhist/context.hpp"
#include "sheafhist/sieve.hpp"

namespace sheafhist {

// Spectrum points whose minimal projector overlaps p: the component of the
// daseinized proposition at one context, as a subset of the context's spectrum.
template <class R>
std::vector<char> dasein_selection(const Matrix<R>& p, const Context<R>& v) {
  if (p.rows != v.dim || p.cols != v.dim)
    throw Error(ErrorKind::Dimension, "proposition does not act on the context's space");
  require_projector(p, "proposition");
  std::vector<char> sel(v.points());
  for (int i = 0; i < v.points(); ++i) sel[i] = !mat_zero(v.minimals[i] * p);
  return sel;
}

// Smallest projector of the context dominating p: the sum of overlapping
// minimals.
template <class R>
Matrix<R> dasein_at(const Matrix<R>& p, const Context<R>& v) {
  std::vector<char> sel = dasein_selection(p, v);
  Matrix<R> s = Matrix<R>::zero(v.dim, v.dim);
  for (int i = 0; i < v.points(); ++i)
    if (sel[i]) s = s + v.minimals[i];
  return s;
}

// The daseinized proposition as a subobject of the spectral presheaf.
template <class R>
Subobject dasein(const Matrix<R>& p, const SpectralSpace<R>& space) {
  std::vector<std::vector<char>> sel;
  sel.reserve(space.contexts.contexts.size());
  for (const Context<R>& v : space.contexts.contexts) sel.push_back(dasein_selection(p, v));
  return make_subobject(space.presheaf, std::move(sel));
}

template <class R>
Subobject pseudo_state(const Ket<R>& psi, const SpectralSpace<R>& space) {
  return dasein(projector_from_ket(psi), space);
}

// Truth value of the proposition in the state: at apex V, the sieve of those
// V' below V where the pseudo-state's component is contained in the
// daseinized proposition's component.
inline OmegaGlobalElement truth_value(const Subobject& pseudo, const Subobject& prop) {
  return truth_of_inclusion(pseudo, prop);
}

// Expectation reading of the same condition at a single context.
template <class R>
bool expectation_criterion(const Ket<R>& psi, const Matrix<R>& p, const Context<R>& v) {
  return cx_eq(expectation(psi, dasein_at(p, v)), Cx<R>::from(1.0));
}

}  // namespace sheafhist
