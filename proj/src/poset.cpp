#include "sheafhist/poset.hpp"

namespace sheafhist {

std::vector<int> Poset::down(int v) const {
  std::vector<int> out;
  for (int w = 0; w < n; ++w)
    if (leq(w, v)) out.push_back(w);
  return out;
}

void Poset::validate() const {
  if (static_cast<int>(rel.size()) != n)
    throw Error(ErrorKind::Invariant, "poset relation table has wrong size");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(rel[a].size()) != n)
      throw Error(ErrorKind::Invariant, "poset relation table has wrong row size");
    if (!leq(a, a)) throw Error(ErrorKind::Invariant, "poset order is not reflexive");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a != b && leq(a, b) && leq(b, a))
        throw Error(ErrorKind::Invariant, "poset order is not antisymmetric");
      if (!leq(a, b)) continue;
      for (int c = 0; c < n; ++c)
        if (leq(b, c) && !leq(a, c))
          throw Error(ErrorKind::Invariant, "poset order is not transitive");
    }
}

std::vector<int> Poset::heights() const {
  std::vector<int> h(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && leq(b, a) && h[a] < h[b] + 1) {
          h[a] = h[b] + 1;
          changed = true;
        }
  }
  return h;
}

}  // namespace sheafhist
