#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsum/cache.hpp"
#include "zsum/group.hpp"
#include "zsum/search.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

// Known (Z_k)^n with Property D. `cases` lists every matching case label;
// `citation` names the first one in the order i, iii, ii, iv, v, vi.
struct RegistryEntry {
  bool known = false;
  std::string citation;
  std::vector<std::string> cases;
};

/// Registry of groups (Z_k)^n known to have Property D:
///   (i)   k = 2^a, any n          (ii)  k = 3, any n
///   (iii) n = 1, any k            (iv)  n = 2, no prime factor of k above 7
///   (v)   n = 3, k = 5^a          (vi)  n = 3, k = 3^a
/// Non-homocyclic groups are never known.
RegistryEntry known_property_d(const FiniteAbelianGroup& g);

enum class PropertyDStatus { Holds, Fails, Unknown };
const char* to_string(PropertyDStatus s);

struct PropertyDVerdict {
  PropertyDStatus status = PropertyDStatus::Unknown;
  std::uint64_t s_value = 0;  // 0 when s could not be established
  // Holds: every extremal sequence up to symmetry.
  std::vector<Sequence> extremal_sequences;
  std::optional<Sequence> counterexample;
  std::string symmetry;
  bool from_cache = false;
};

// True when every multiplicity of `s` is 0 or k - 1, i.e. s = T^(k-1).
bool is_set_power(const Sequence& s, std::uint64_t k);

/// Exhaustive Property D check on (Z_k)^n: computes s (or reads it and the
/// extremal list from `cache`) and tests every extremal sequence for the
/// shape T^(k-1). Completed searches are written back into `cache`.
/// Throws Error(Shape) for groups that are not homocyclic.
PropertyDVerdict check_property_d(const FiniteAbelianGroup& g, const SearchOptions& options = {},
                                  ResultCache* cache = nullptr);

}  // namespace zsum
