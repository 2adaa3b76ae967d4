#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsum/bounds.hpp"
#include "zsum/property_d.hpp"
#include "zsum/search.hpp"

namespace zsum::cli {

enum class Format { Json, Csv, Markdown };

struct RunConfig {
  std::uint64_t node_budget = SearchBudget{}.max_nodes;
  std::chrono::milliseconds wall_budget = SearchBudget{}.wall;
  double gamma_tolerance = 1e-9;
  PropertyDPolicy policy = PropertyDPolicy::RegistryOnly;
  Format format = Format::Json;
  std::optional<std::string> cache_path;
  int threads = 0;
  bool serial = false;
  bool use_symmetry = true;

  SearchOptions search_options() const;
};

// "small", "medium", "large" or a positive integer.
std::uint64_t parse_node_budget(const std::string& text);
// "<n>ms", "<n>s", "<n>m" or bare seconds.
std::chrono::milliseconds parse_wall_budget(const std::string& text);
// "a..b" or a single value, inclusive; a <= b required.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text);

struct BoundReport {
  std::string group;
  Quantity quantity = Quantity::S;
  PropertyDPolicy policy = PropertyDPolicy::RegistryOnly;
  std::optional<BoundValue> best_lower;
  std::optional<BoundValue> best_upper;
  std::vector<BoundValue> bounds;
  std::vector<bool> granted;

  bool operator==(const BoundReport&) const = default;
};

struct ExactReport {
  std::string group;
  Quantity quantity = Quantity::S;
  SearchStatus status = SearchStatus::BudgetExhausted;
  std::uint64_t value = 0;
  std::vector<std::string> extremal_example;  // elements as "a,b"
  std::uint64_t extremal_count = 0;
  std::uint64_t nodes_explored = 0;
  double elapsed_s = 0;
  std::string symmetry;
  bool from_cache = false;

  bool operator==(const ExactReport&) const = default;
};

struct PropdReport {
  std::string group;
  PropertyDStatus status = PropertyDStatus::Unknown;
  std::uint64_t s_value = 0;
  bool registry_known = false;
  std::string registry_citation;
  std::uint64_t extremal_count = 0;
  std::vector<std::string> counterexample;
  std::string symmetry;
  bool from_cache = false;

  bool operator==(const PropdReport&) const = default;
};

struct GammaReport {
  std::uint64_t k = 0;
  std::uint64_t q = 0;
  double gamma_upper = 0;
  std::string gamma_upper_exact;
  double minimizer_x = 1;
  double tolerance = 0;
  bool dense_fallback = false;

  bool operator==(const GammaReport&) const = default;
};

// Frozen column set of the table command; see docs/table_columns.md.
const std::vector<std::string>& table_columns();

struct TableRow {
  std::uint64_t k = 0;
  unsigned n = 0;
  std::vector<std::string> cells;  // one per column after k, n, quantity
  bool operator==(const TableRow&) const = default;
};

struct TableReport {
  Quantity quantity = Quantity::S;
  PropertyDPolicy policy = PropertyDPolicy::RegistryOnly;
  std::vector<TableRow> rows;
  bool truncated = false;
  bool operator==(const TableReport&) const = default;
};

struct Violation {
  std::string group;
  Quantity quantity = Quantity::S;
  std::uint64_t exact = 0;
  BoundValue bound;
  bool operator==(const Violation&) const = default;
};

struct ValidateReport {
  std::string corpus;
  std::uint64_t groups = 0;
  std::uint64_t checks = 0;
  std::vector<Violation> violations;
  bool operator==(const ValidateReport&) const = default;
};

nlohmann::ordered_json to_json(const BoundReport& r);
BoundReport bound_report_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const ExactReport& r);
ExactReport exact_report_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const PropdReport& r);
PropdReport propd_report_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const GammaReport& r);
GammaReport gamma_report_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const TableReport& r);
TableReport table_report_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const ValidateReport& r);
ValidateReport validate_report_from_json(const nlohmann::ordered_json& j);

BoundReport make_bound_report(const FiniteAbelianGroup& g, Quantity q, const RunConfig& cfg);
ExactReport make_exact_report(const FiniteAbelianGroup& g, Quantity q, const RunConfig& cfg);
PropdReport make_propd_report(const FiniteAbelianGroup& g, const RunConfig& cfg);
GammaReport make_gamma_report(std::uint64_t k, std::optional<std::uint64_t> q, double tol);
// Rows beyond max_rows are dropped and `truncated` is set.
TableReport make_table_report(std::pair<std::uint64_t, std::uint64_t> k_range,
                              std::pair<std::uint64_t, std::uint64_t> n_range, Quantity q, const RunConfig& cfg,
                              std::size_t max_rows);
ValidateReport make_validate_report(const std::string& corpus_path, PropertyDPolicy policy, double tol);

/// Entry point shared by the executable and the tests. Returns 0 on success
/// (including searches stopped by their budget) and 2 on any usage, parse or
/// domain error; nothing else.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zsum::cli
