#include "sheafhist/sections.hpp"

#include <algorithm>
#include <numeric>

namespace sheafhist {

namespace {

struct Search {
  const FinitePresheaf& ps;
  std::uint64_t cap;
  std::vector<int> order;       // elements, decreasing height
  std::vector<int> assignment;  // element -> point or -1
  SectionSearch out;

  explicit Search(const FinitePresheaf& p, std::uint64_t c) : ps(p), cap(c) {
    int n = ps.poset.n;
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> h = ps.poset.heights();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return h[a] > h[b]; });
    assignment.assign(n, -1);
  }

  bool consistent(int v, int p) const {
    for (int u = 0; u < ps.poset.n; ++u) {
      if (assignment[u] < 0) continue;
      if (ps.poset.leq(v, u) && ps.rmap[u][v][assignment[u]] != p) return false;
      if (ps.poset.leq(u, v) && ps.rmap[v][u][p] != assignment[u]) return false;
    }
    return true;
  }

  void dfs(size_t k) {
    if (++out.visited > cap)
      throw Error(ErrorKind::Capacity,
                  "global-section search exceeded its cap of " + std::to_string(cap) +
                      " candidates; reduce the poset or raise the cap");
    if (k == order.size()) {
      out.sections.push_back(assignment);
      return;
    }
    int v = order[k];
    for (int p = 0; p < ps.stage_size[v]; ++p) {
      if (!consistent(v, p)) continue;
      assignment[v] = p;
      dfs(k + 1);
      assignment[v] = -1;
    }
  }
};

}  // namespace

SectionSearch global_sections(const FinitePresheaf& ps, std::uint64_t cap) {
  for (int v = 0; v < ps.poset.n; ++v)
    if (ps.stage_size[v] == 0) return {};
  Search s(ps, cap);
  s.dfs(0);
  return std::move(s.out);
}

}  // namespace sheafhist
