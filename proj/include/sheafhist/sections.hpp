// sections.hpp: exhaustive search for global sections of a finite presheaf.
#pragma once

#include <cstdint>
#include <vector>

#include "sheafhist/presheaf.hpp"

namespace sheafhist {

struct SectionSearch {
  std::vector<std::vector<int>> sections;  // each maps element -> point index
  std::uint64_t visited = 0;               // partial assignments explored
};

// Depth-first search assigning stages in order of decreasing height, pruning
// by propagating already-fixed choices. Throws Error(Capacity) once more than
// `cap` partial assignments have been visited.
SectionSearch global_sections(const FinitePresheaf& ps, std::uint64_t cap = 1000000);

}  // namespace sheafhist
