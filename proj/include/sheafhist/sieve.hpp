// sieve.hpp: sieves on a poset element and global elements of the
// subobject classifier (compatible families of sieves).
#pragma once

#include <vector>

#include "sheafhist/poset.hpp"
#include "sheafhist/presheaf.hpp"

namespace sheafhist {

struct Sieve {
  int apex = -1;
  std::vector<char> members;  // over all poset elements; members[v] => v <= apex
};

bool is_sieve(const Poset& p, const Sieve& s);
Sieve empty_sieve(const Poset& p, int apex);
Sieve principal_sieve(const Poset& p, int apex);
bool is_principal(const Poset& p, const Sieve& s);
bool is_empty_sieve(const Sieve& s);
bool sieve_eq(const Sieve& a, const Sieve& b);

// S restricted to a new apex: S intersected with the down-set of `to`.
Sieve restrict_sieve(const Poset& p, const Sieve& s, int to);

// One sieve per element; compatible when restriction matches intersection.
struct OmegaGlobalElement {
  std::vector<Sieve> at;
};

void validate_omega_element(const Poset& p, const OmegaGlobalElement& g);

// The truth value of "w is contained in s", stage by stage: at apex v the
// sieve of those v' <= v at which every point of w lies in s. Requires the
// raw inclusion locus to be downward closed and validates the result.
OmegaGlobalElement truth_of_inclusion(const Subobject& w, const Subobject& s);

}  // namespace sheafhist
