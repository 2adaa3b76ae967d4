#pragma once

#include <optional>

#include "zsum/bounds.hpp"
#include "zsum/group.hpp"
#include "zsum/search.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

// Brute-force counterparts of the optimized routines. They share only the
// group arithmetic with the rest of the library and refuse anything past
// their hard size caps with Error(OracleScale).

inline constexpr std::size_t kOracleMaxSequence = 24;
inline constexpr std::size_t kOracleMaxGroup = 9;
inline constexpr std::uint64_t kOracleMaxExtremal = 10;
inline constexpr std::uint64_t kOracleMaxMonomialSpace = 10'000'000;

// Tries every sub-multiset (as a subset of positions). For AtMost the
// shortest witness is returned.
std::optional<ZeroSumWitness> oracle_find_zero_sum(const Sequence& s, LengthSpec target);

// Smallest length at which every multiset contains the forbidden
// subsequence, by full enumeration with no symmetry reduction.
std::uint64_t oracle_exact_s(const FiniteAbelianGroup& g);
std::uint64_t oracle_exact_eta(const FiniteAbelianGroup& g);
std::uint64_t oracle_exact(const FiniteAbelianGroup& g, Quantity q);

// Nested enumeration of the box [0, per_var_cap]^n_vars.
BigInt oracle_count_monomials(const MonomialConstraint& c);

}  // namespace zsum
