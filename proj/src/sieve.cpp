#include "sheafhist/sieve.hpp"

namespace sheafhist {

bool is_sieve(const Poset& p, const Sieve& s) {
  if (s.apex < 0 || s.apex >= p.n) return false;
  if (static_cast<int>(s.members.size()) != p.n) return false;
  for (int v = 0; v < p.n; ++v) {
    if (!s.members[v]) continue;
    if (!p.leq(v, s.apex)) return false;
    for (int w = 0; w < p.n; ++w)
      if (p.leq(w, v) && !s.members[w]) return false;
  }
  return true;
}

Sieve empty_sieve(const Poset& p, int apex) {
  Sieve s;
  s.apex = apex;
  s.members.assign(p.n, 0);
  return s;
}

Sieve principal_sieve(const Poset& p, int apex) {
  Sieve s = empty_sieve(p, apex);
  for (int v = 0; v < p.n; ++v) s.members[v] = p.leq(v, apex);
  return s;
}

bool is_principal(const Poset& p, const Sieve& s) {
  return s.members == principal_sieve(p, s.apex).members;
}

bool is_empty_sieve(const Sieve& s) {
  for (char m : s.members)
    if (m) return false;
  return true;
}

bool sieve_eq(const Sieve& a, const Sieve& b) {
  return a.apex == b.apex && a.members == b.members;
}

Sieve restrict_sieve(const Poset& p, const Sieve& s, int to) {
  Sieve r = empty_sieve(p, to);
  for (int v = 0; v < p.n; ++v) r.members[v] = s.members[v] && p.leq(v, to);
  return r;
}

void validate_omega_element(const Poset& p, const OmegaGlobalElement& g) {
  if (static_cast<int>(g.at.size()) != p.n)
    throw Error(ErrorKind::Invariant, "classifier element has wrong stage count");
  for (int v = 0; v < p.n; ++v) {
    if (g.at[v].apex != v || !is_sieve(p, g.at[v]))
      throw Error(ErrorKind::Invariant, "classifier element stage is not a sieve");
    for (int w = 0; w < p.n; ++w)
      if (w != v && p.leq(w, v) &&
          !sieve_eq(g.at[w], restrict_sieve(p, g.at[v], w)))
        throw Error(ErrorKind::Invariant, "classifier element is not restriction-compatible");
  }
}

OmegaGlobalElement truth_of_inclusion(const Subobject& w, const Subobject& s) {
  if (w.ps == nullptr || w.ps != s.ps)
    throw Error(ErrorKind::Invariant, "truth value of subobjects over different presheaves");
  const FinitePresheaf& ps = *w.ps;
  const Poset& p = ps.poset;
  std::vector<char> locus(p.n, 0);
  for (int v = 0; v < p.n; ++v) {
    bool inside = true;
    for (int q = 0; q < ps.stage_size[v] && inside; ++q)
      if (w.sel[v][q] && !s.sel[v][q]) inside = false;
    locus[v] = inside;
  }
  for (int v = 0; v < p.n; ++v)
    if (locus[v])
      for (int u = 0; u < p.n; ++u)
        if (p.leq(u, v) && !locus[u])
          throw Error(ErrorKind::Invariant, "inclusion locus is not downward closed");
  OmegaGlobalElement g;
  g.at.reserve(p.n);
  for (int v = 0; v < p.n; ++v) {
    Sieve sv = empty_sieve(p, v);
    for (int u = 0; u < p.n; ++u) sv.members[u] = locus[u] && p.leq(u, v);
    g.at.push_back(std::move(sv));
  }
  validate_omega_element(p, g);
  return g;
}

}  // namespace sheafhist
