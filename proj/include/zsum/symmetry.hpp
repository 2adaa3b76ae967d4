#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zsum/group.hpp"
#include "zsum/numeric.hpp"
#include "zsum/search.hpp"

namespace zsum {

// Permutation of element indices.
using IndexMap = std::vector<std::uint16_t>;

/// Symmetries the search quotients by: x -> A x + c with A from `linear` and,
/// when `translations` is set, any c. `linear` always starts with the identity.
struct SymmetryGroup {
  std::vector<IndexMap> linear;
  bool translations = false;
  std::string description;
};

// |GL(n, p)|
BigInt general_linear_order(std::uint64_t p, unsigned n);

// Full GL is enumerated up to this many matrices; beyond it the monomial
// subgroup (coordinate permutations and unit scalings) is used.
inline constexpr std::uint64_t kMaxEnumeratedLinear = 50'000;

/// Translations are used for s only (a shift by c moves every length-exp(G)
/// sum by exp(G)*c = 0); eta keeps only linear maps. Linear automorphisms are
/// used for (Z_p)^n with p^n <= 81.
SymmetryGroup build_symmetry(const FiniteAbelianGroup& g, Quantity q, bool enabled);

}  // namespace zsum
