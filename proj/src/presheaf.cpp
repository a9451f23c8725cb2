#include "sheafhist/presheaf.hpp"

namespace sheafhist {

int FinitePresheaf::restrict_point(int v, int p, int w) const {
  if (!poset.leq(w, v))
    throw Error(ErrorKind::Invariant, "restriction requested along a non-relation");
  return rmap[v][w][p];
}

void FinitePresheaf::validate() const {
  poset.validate();
  int n = poset.n;
  if (static_cast<int>(stage_size.size()) != n || static_cast<int>(rmap.size()) != n)
    throw Error(ErrorKind::Invariant, "presheaf tables have wrong size");
  for (int v = 0; v < n; ++v) {
    if (static_cast<int>(rmap[v].size()) != n)
      throw Error(ErrorKind::Invariant, "presheaf restriction table has wrong row size");
    for (int w = 0; w < n; ++w) {
      if (!poset.leq(w, v)) {
        if (!rmap[v][w].empty())
          throw Error(ErrorKind::Invariant, "restriction present along a non-relation");
        continue;
      }
      if (static_cast<int>(rmap[v][w].size()) != stage_size[v])
        throw Error(ErrorKind::Invariant, "restriction map has wrong domain size");
      for (int p = 0; p < stage_size[v]; ++p) {
        int q = rmap[v][w][p];
        if (q < 0 || q >= stage_size[w])
          throw Error(ErrorKind::Invariant, "restriction map leaves the target stage");
        if (w == v && q != p)
          throw Error(ErrorKind::Invariant, "restriction along the identity is not the identity");
      }
    }
  }
  // composition: for u <= w <= v, restricting via w agrees with going direct
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      if (!poset.leq(w, v)) continue;
      for (int u = 0; u < n; ++u) {
        if (!poset.leq(u, w)) continue;
        for (int p = 0; p < stage_size[v]; ++p)
          if (rmap[w][u][rmap[v][w][p]] != rmap[v][u][p])
            throw Error(ErrorKind::Invariant, "restriction maps do not compose");
      }
    }
}

static void check_same_presheaf(const Subobject& a, const Subobject& b) {
  if (a.ps == nullptr || a.ps != b.ps)
    throw Error(ErrorKind::Invariant, "subobjects live over different presheaves");
}

Subobject empty_subobject(const FinitePresheaf& ps) {
  Subobject s;
  s.ps = &ps;
  s.sel.resize(ps.poset.n);
  for (int v = 0; v < ps.poset.n; ++v) s.sel[v].assign(ps.stage_size[v], 0);
  return s;
}

Subobject full_subobject(const FinitePresheaf& ps) {
  Subobject s = empty_subobject(ps);
  for (int v = 0; v < ps.poset.n; ++v) s.sel[v].assign(ps.stage_size[v], 1);
  return s;
}

bool is_restriction_closed(const FinitePresheaf& ps, const std::vector<std::vector<char>>& sel) {
  for (int v = 0; v < ps.poset.n; ++v)
    for (int w = 0; w < ps.poset.n; ++w) {
      if (v == w || !ps.poset.leq(w, v)) continue;
      for (int p = 0; p < ps.stage_size[v]; ++p)
        if (sel[v][p] && !sel[w][ps.rmap[v][w][p]]) return false;
    }
  return true;
}

Subobject make_subobject(const FinitePresheaf& ps, std::vector<std::vector<char>> sel) {
  if (static_cast<int>(sel.size()) != ps.poset.n)
    throw Error(ErrorKind::Invariant, "selection has wrong stage count");
  for (int v = 0; v < ps.poset.n; ++v)
    if (static_cast<int>(sel[v].size()) != ps.stage_size[v])
      throw Error(ErrorKind::Invariant, "selection has wrong stage size");
  if (!is_restriction_closed(ps, sel))
    throw Error(ErrorKind::Invariant, "selection is not closed under restriction");
  Subobject s;
  s.ps = &ps;
  s.sel = std::move(sel);
  return s;
}

Subobject close_selection(const FinitePresheaf& ps, std::vector<std::vector<char>> sel) {
  for (int v = 0; v < ps.poset.n; ++v)
    for (int w = 0; w < ps.poset.n; ++w) {
      if (v == w || !ps.poset.leq(w, v)) continue;
      for (int p = 0; p < ps.stage_size[v]; ++p)
        if (sel[v][p]) sel[w][ps.rmap[v][w][p]] = 1;
    }
  return make_subobject(ps, std::move(sel));
}

bool sub_eq(const Subobject& a, const Subobject& b) {
  check_same_presheaf(a, b);
  return a.sel == b.sel;
}

bool includes(const Subobject& a, const Subobject& b) {
  check_same_presheaf(a, b);
  for (size_t v = 0; v < a.sel.size(); ++v)
    for (size_t p = 0; p < a.sel[v].size(); ++p)
      if (b.sel[v][p] && !a.sel[v][p]) return false;
  return true;
}

Subobject meet_sub(const Subobject& a, const Subobject& b) {
  check_same_presheaf(a, b);
  Subobject z = a;
  for (size_t v = 0; v < z.sel.size(); ++v)
    for (size_t p = 0; p < z.sel[v].size(); ++p) z.sel[v][p] = a.sel[v][p] && b.sel[v][p];
  return z;
}

Subobject join_sub(const Subobject& a, const Subobject& b) {
  check_same_presheaf(a, b);
  Subobject z = a;
  for (size_t v = 0; v < z.sel.size(); ++v)
    for (size_t p = 0; p < z.sel[v].size(); ++p) z.sel[v][p] = a.sel[v][p] || b.sel[v][p];
  return z;
}

Subobject implies_sub(const Subobject& a, const Subobject& b) {
  check_same_presheaf(a, b);
  const FinitePresheaf& ps = *a.ps;
  Subobject z = empty_subobject(ps);
  for (int v = 0; v < ps.poset.n; ++v)
    for (int p = 0; p < ps.stage_size[v]; ++p) {
      bool ok = true;
      for (int w = 0; w < ps.poset.n && ok; ++w) {
        if (!ps.poset.leq(w, v)) continue;
        int q = ps.rmap[v][w][p];
        if (a.sel[w][q] && !b.sel[w][q]) ok = false;
      }
      z.sel[v][p] = ok;
    }
  return z;
}

Subobject not_sub(const Subobject& a) {
  return implies_sub(a, empty_subobject(*a.ps));
}

}  // namespace sheafhist
