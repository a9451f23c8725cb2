// product.hpp: the product of two finite presheaves over the product poset,
// pullbacks along the two projections, and finite joins of pullback pairs.
// A subobject built as a join of "rectangles" (meet of a left and a right
// pullback) is the normal form through which tensor expressions are compared.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sheafhist/presheaf.hpp"
#include "sheafhist/sieve.hpp"

namespace sheafhist {

struct ProductSpace {
  const FinitePresheaf* left = nullptr;
  const FinitePresheaf* right = nullptr;
  FinitePresheaf presheaf;  // stage at <v1,v2> is stage(v1) x stage(v2)
  int nl = 0, nr = 0;

  int elem(int l, int r) const { return l * nr + r; }
  std::pair<int, int> split(int e) const { return {e / nr, e % nr}; }
  int point(int e, int a, int b) const { return a * right->stage_size[split(e).second] + b; }
  std::pair<int, int> point_split(int e, int p) const {
    int kr = right->stage_size[split(e).second];
    return {p / kr, p % kr};
  }
};

ProductSpace make_product(const FinitePresheaf& left, const FinitePresheaf& right);

Subobject pullback_left(const ProductSpace& x, const Subobject& s);
Subobject pullback_right(const ProductSpace& x, const Subobject& s);

// Finite formal join of elementary tensors (pairs of component subobjects).
struct TensorExpression {
  std::vector<std::pair<Subobject, Subobject>> terms;
};

// Subobject of the product presheaf denoted by the expression: the join over
// terms of pullback_left(first) meet pullback_right(second).
Subobject realize(const ProductSpace& x, const TensorExpression& t);

// A tensor expression realizing the given subobject, built by covering each
// selected point with the pair of principal subobjects it generates. Throws
// Error(Capacity) if more than `term_cap` terms would be emitted.
TensorExpression decompose(const ProductSpace& x, const Subobject& s, std::uint64_t term_cap = 10000);

// Expressions are compared through their realizations.
bool tensor_eq(const ProductSpace& x, const TensorExpression& a, const TensorExpression& b);

// Pairs of component sieves, one pair per product element <v1,v2>:
// <sieve at v1 on the left poset, sieve at v2 on the right poset>.
struct ProductOmegaElement {
  std::vector<std::pair<Sieve, Sieve>> at;
};

ProductOmegaElement pair_global_elements(const ProductSpace& x, const OmegaGlobalElement& a,
                                         const OmegaGlobalElement& b);

void validate_product_omega(const ProductSpace& x, const ProductOmegaElement& g);

// The down-set {<v1',v2'> : v1' in s1 and v2' in s2} as a sieve on the
// product poset at apex <apexl, apexr>.
Sieve product_sieve_of_pair(const ProductSpace& x, const Sieve& s1, const Sieve& s2);

}  // namespace sheafhist
