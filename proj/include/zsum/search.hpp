#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsum/group.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

enum class Quantity { S, Eta };
const char* to_string(Quantity q);
Quantity parse_quantity(const std::string& text);

enum class SearchStatus { Exact, LowerBoundOnly, BudgetExhausted };
const char* to_string(SearchStatus s);

// Both limits are enforced; only the node limit gives reproducible cut-offs.
struct SearchBudget {
  std::uint64_t max_nodes = 200'000'000;
  std::chrono::milliseconds wall{std::chrono::minutes(15)};
};

enum class Execution { Serial, Parallel };

struct SearchOptions {
  SearchBudget budget;
  Execution execution = Execution::Parallel;
  bool use_symmetry = true;
  int threads = 0;  // 0: OpenMP default
};

struct SearchOutcome {
  Quantity quantity = Quantity::S;
  SearchStatus status = SearchStatus::BudgetExhausted;
  // Exact: the constant. LowerBoundOnly: longest avoiding sequence found + 1.
  // BudgetExhausted: 0, the group is beyond search scale.
  std::uint64_t value = 0;
  std::optional<Sequence> extremal_example;
  // All avoiding sequences of length value - 1, one per symmetry orbit,
  // ascending. Complete only when status is Exact.
  std::vector<Sequence> extremal_sequences;
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> elapsed{0};
  std::string symmetry;
};

// s(G): forbidden object is a zero-sum subsequence of length exactly exp(G).
SearchOutcome exact_s(const FiniteAbelianGroup& g, const SearchOptions& options = {});
// eta(G): forbidden object is a zero-sum subsequence of length in [1, exp(G)].
SearchOutcome exact_eta(const FiniteAbelianGroup& g, const SearchOptions& options = {});
SearchOutcome exact_constant(const FiniteAbelianGroup& g, Quantity q, const SearchOptions& options = {});

struct ExtremalEnumeration {
  std::vector<Sequence> sequences;  // one per orbit, ascending
  bool complete = false;            // false: budget ran out, list is partial
  std::string symmetry;
  std::uint64_t nodes_explored = 0;
};

// All sequences of `length` with no zero-sum subsequence of length exp(G),
// up to the symmetry group named in the result. Throws Error(Domain) for
// length 0.
ExtremalEnumeration enumerate_extremal(const FiniteAbelianGroup& g, std::uint64_t length,
                                       const SearchOptions& options = {}, Quantity q = Quantity::S);

// Largest group the search accepts.
inline constexpr std::size_t kMaxSearchOrder = 4096;

}  // namespace zsum
