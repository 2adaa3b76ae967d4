#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsum/group.hpp"
#include "zsum/search.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

struct CacheEntry {
  std::optional<std::uint64_t> s;
  std::optional<std::uint64_t> eta;
  // Avoiding sequences of length s - 1, one per symmetry orbit.
  std::vector<std::vector<GroupElement>> extremal_s;
  bool extremal_complete = false;
  nlohmann::ordered_json search;  // per-quantity metadata
};

/// Completed exact values keyed by canonical group string. On disk this is a
/// single JSON document:
///
///   { "Z3^2": { "s": 9, "eta": 7, "extremal_s": [[[0,0],[0,0],...], ...],
///               "extremal_complete": true, "search": {...} }, ... }
class ResultCache {
 public:
  ResultCache() = default;

  // Throws Error(Parse) for a malformed document; a missing file is an error
  // for load() and an empty cache for load_or_empty().
  static ResultCache load(const std::filesystem::path& path);
  static ResultCache load_or_empty(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  nlohmann::ordered_json to_json() const;
  static ResultCache from_json(const nlohmann::ordered_json& doc);

  const CacheEntry* find(const FiniteAbelianGroup& g) const;
  const std::map<std::string, CacheEntry>& entries() const { return entries_; }
  CacheEntry& entry(const FiniteAbelianGroup& g) { return entries_[g.to_string()]; }

  // Stores an Exact outcome (value, extremal list, metadata); others are ignored.
  void record(const FiniteAbelianGroup& g, const SearchOutcome& outcome);

 private:
  std::map<std::string, CacheEntry> entries_;
};

// Environment variable naming the default cache file.
inline constexpr const char* kCacheEnvVar = "ZSUM_CACHE";

}  // namespace zsum
