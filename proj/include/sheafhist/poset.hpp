// poset.hpp: finite posets as explicit order tables.
#pragma once

#include <vector>

#include "sheafhist/num.hpp"

namespace sheafhist {

struct Poset {
  int n = 0;
  // rel[a][b] nonzero iff a <= b
  std::vector<std::vector<char>> rel;

  explicit Poset(int size = 0) : n(size), rel(size, std::vector<char>(size, 0)) {
    for (int i = 0; i < size; ++i) rel[i][i] = 1;
  }

  bool leq(int a, int b) const { return rel[a][b] != 0; }

  std::vector<int> down(int v) const;

  // Throws Error(Invariant) unless reflexive, antisymmetric and transitive.
  void validate() const;

  // Length of the longest chain strictly below each element.
  std::vector<int> heights() const;
};

}  // namespace sheafhist
