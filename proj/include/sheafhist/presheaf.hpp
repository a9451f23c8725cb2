// presheaf.hpp: finite presheaves of sets over a finite poset, with the
// Heyting algebra of their subobjects. Stages are index sets; the restriction
// along w <= v is a function from the stage at v to the stage at w.
#pragma once

#include <vector>

#include "sheafhist/poset.hpp"

namespace sheafhist {

struct FinitePresheaf {
  Poset poset;
  std::vector<int> stage_size;
  // rmap[v][w] nonempty iff w <= v; maps points of stage v to points of stage w.
  std::vector<std::vector<std::vector<int>>> rmap;

  int restrict_point(int v, int p, int w) const;

  // Identity on each stage, compatible with composition along chains.
  void validate() const;
};

// A selection of points per stage, closed under restriction.
struct Subobject {
  const FinitePresheaf* ps = nullptr;
  std::vector<std::vector<char>> sel;

  bool contains(int v, int p) const { return sel[v][p] != 0; }
};

Subobject empty_subobject(const FinitePresheaf& ps);
Subobject full_subobject(const FinitePresheaf& ps);

// Wraps a raw selection; throws Error(Invariant) if not restriction-closed.
Subobject make_subobject(const FinitePresheaf& ps, std::vector<std::vector<char>> sel);

// Downward closure of a raw selection (always yields a valid subobject).
Subobject close_selection(const FinitePresheaf& ps, std::vector<std::vector<char>> sel);

bool is_restriction_closed(const FinitePresheaf& ps, const std::vector<std::vector<char>>& sel);

bool sub_eq(const Subobject& a, const Subobject& b);

// Stagewise containment: includes(a, b) holds iff b is contained in a.
bool includes(const Subobject& a, const Subobject& b);

Subobject meet_sub(const Subobject& a, const Subobject& b);
Subobject join_sub(const Subobject& a, const Subobject& b);

// Stage-local Kripke-Joyal clause: a point x at stage v lies in (a => b)
// iff every restriction of x to a stage w <= v that lands in a also lands in b.
Subobject implies_sub(const Subobject& a, const Subobject& b);

Subobject not_sub(const Subobject& a);

}  // namespace sheafhist
