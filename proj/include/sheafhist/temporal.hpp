// temporal.hpp: truth values of temporally ordered propositions. The
// two-time value is computed once through componentwise sieves and once
// directly on the product presheaf; the two must agree stage by stage.
#pragma once

#include "sheafhist/dasein.hpp"
#include "sheafhist/product.hpp"

namespace sheafhist {

template <class R>
struct TwoTimeTruth {
  Ket<R> evolved;                 // state at the second time
  OmegaGlobalElement first;       // single-time truth of the first slot
  OmegaGlobalElement second;      // single-time truth of the second slot
  ProductOmegaElement pairwise;   // <sieve, sieve> per product stage
  OmegaGlobalElement on_product;  // genuine sieve on the product poset per stage
};

template <class R>
TwoTimeTruth<R> two_time_truth(const Ket<R>& psi, const Matrix<R>& u, const Matrix<R>& p1,
                               const Matrix<R>& p2, const SpectralSpace<R>& s1,
                               const SpectralSpace<R>& s2, const ProductSpace& x) {
  if (x.left != &s1.presheaf || x.right != &s2.presheaf)
    throw Error(ErrorKind::Invariant, "product space does not match the component spaces");
  TwoTimeTruth<R> out;
  out.evolved = evolve(u, psi);
  Subobject w1 = pseudo_state(psi, s1);
  Subobject w2 = pseudo_state(out.evolved, s2);
  Subobject d1 = dasein(p1, s1);
  Subobject d2 = dasein(p2, s2);
  out.first = truth_value(w1, d1);
  out.second = truth_value(w2, d2);
  out.pairwise = pair_global_elements(x, out.first, out.second);
  validate_product_omega(x, out.pairwise);

  Subobject w = meet_sub(pullback_left(x, w1), pullback_right(x, w2));
  Subobject d = meet_sub(pullback_left(x, d1), pullback_right(x, d2));
  out.on_product = truth_of_inclusion(w, d);

  for (int e = 0; e < x.nl * x.nr; ++e) {
    auto [v1, v2] = x.split(e);
    Sieve expected = product_sieve_of_pair(x, out.first.at[v1], out.second.at[v2]);
    if (!sieve_eq(out.on_product.at[e], expected))
      throw Error(ErrorKind::Invariant,
                  "two-time truth value does not factor through the component sieves");
  }
  return out;
}

template <class R>
struct HistoryTruth {
  std::vector<Ket<R>> states;                 // cumulatively evolved, one per slot
  std::vector<OmegaGlobalElement> components; // single-time truth per slot
};

// n-slot truth value, iterating the two-time construction right-nested:
// every component equals the single-time truth of its slot in the state
// evolved up to that slot.
template <class R>
HistoryTruth<R> n_time_truth(const Ket<R>& psi, const std::vector<Matrix<R>>& steps,
                             const std::vector<Matrix<R>>& props, const SpectralSpace<R>& space) {
  if (props.empty()) throw Error(ErrorKind::Invariant, "history needs at least one slot");
  if (steps.size() + 1 != props.size())
    throw Error(ErrorKind::Dimension, "history needs one evolution step between consecutive slots");
  HistoryTruth<R> out;
  out.states.push_back(psi);
  for (const Matrix<R>& u : steps) out.states.push_back(evolve(u, out.states.back()));
  for (size_t k = 0; k < props.size(); ++k)
    out.components.push_back(
        truth_value(pseudo_state(out.states[k], space), dasein(props[k], space)));
  return out;
}

}  // namespace sheafhist
