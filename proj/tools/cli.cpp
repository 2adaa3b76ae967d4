#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zsum/cache.hpp"
#include "zsum/errors.hpp"

namespace zsum::cli {

using nlohmann::ordered_json;

SearchOptions RunConfig::search_options() const {
  SearchOptions o;
  o.budget.max_nodes = node_budget;
  o.budget.wall = wall_budget;
  o.execution = serial ? Execution::Serial : Execution::Parallel;
  o.use_symmetry = use_symmetry;
  o.threads = threads;
  return o;
}

namespace {

std::uint64_t parse_positive(const std::string& text, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text[0] == '-' || v == 0)
    throw Error(ErrorCode::Parse, std::string(what) + ": expected a positive integer, got '" + text + "'");
  return v;
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "markdown" || text == "md") return Format::Markdown;
  throw Error(ErrorCode::Parse, "unknown format '" + text + "' (json, csv, markdown)");
}

SearchStatus parse_status(const std::string& text) {
  for (auto s : {SearchStatus::Exact, SearchStatus::LowerBoundOnly, SearchStatus::BudgetExhausted})
    if (text == to_string(s)) return s;
  throw Error(ErrorCode::Parse, "unknown search status '" + text + "'");
}

PropertyDStatus parse_propd_status(const std::string& text) {
  for (auto s : {PropertyDStatus::Holds, PropertyDStatus::Fails, PropertyDStatus::Unknown})
    if (text == to_string(s)) return s;
  throw Error(ErrorCode::Parse, "unknown Property D status '" + text + "'");
}

ordered_json optional_bound(const std::optional<BoundValue>& b) { return b ? to_json(*b) : ordered_json(nullptr); }

std::optional<BoundValue> optional_bound_from(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return bound_from_json(j);
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

std::vector<std::string> element_strings(const Sequence& s) {
  std::vector<std::string> out;
  for (const auto& e : s.elements()) out.push_back(format_element(e));
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string assumption_list(const std::set<std::string>& a) {
  std::vector<std::string> xs;
  for (const auto& g : a) xs.push_back("PropertyD(" + g + ")");
  return join(xs, " ");
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit_table(std::ostream& out, Format f, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  if (f == Format::Csv) {
    std::vector<std::string> h;
    for (const auto& c : header) h.push_back(csv_cell(c));
    out << join(h, ",") << '\n';
    for (const auto& r : rows) {
      std::vector<std::string> cells;
      for (const auto& c : r) cells.push_back(csv_cell(c));
      out << join(cells, ",") << '\n';
    }
    return;
  }
  out << "| " << join(header, " | ") << " |\n|";
  for (std::size_t i = 0; i < header.size(); ++i) out << "---|";
  out << '\n';
  for (const auto& r : rows) out << "| " << join(r, " | ") << " |\n";
}

// A single record as a two-column key/value table.
void emit_record(std::ostream& out, Format f, const std::vector<std::pair<std::string, std::string>>& fields) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [k, v] : fields) rows.push_back({k, v});
  emit_table(out, f, {"field", "value"}, rows);
}

std::optional<std::string> resolve_cache(const RunConfig& cfg) {
  if (cfg.cache_path) return cfg.cache_path;
  if (const char* env = std::getenv(kCacheEnvVar); env && *env) return std::string(env);
  return std::nullopt;
}

std::string propd_summary(const PropdReport& r) {
  std::string s = to_string(r.status);
  std::vector<std::string> parts;
  if (r.registry_known) parts.push_back("registry: " + r.registry_citation);
  else parts.push_back("registry: not listed");
  if (r.status == PropertyDStatus::Holds) parts.push_back("verified");
  if (r.status == PropertyDStatus::Fails) parts.push_back("counterexample found");
  if (r.status == PropertyDStatus::Unknown) parts.push_back("search incomplete");
  return s + " (" + join(parts, "; ") + ")";
}

}  // namespace

std::uint64_t parse_node_budget(const std::string& text) {
  if (text == "small") return 100'000;
  if (text == "medium") return 10'000'000;
  if (text == "large") return 200'000'000;
  return parse_positive(text, "--node-budget");
}

std::chrono::milliseconds parse_wall_budget(const std::string& text) {
  std::string digits = text;
  std::uint64_t scale = 1000;
  auto ends_with = [&](const std::string& suf) {
    return digits.size() > suf.size() && digits.compare(digits.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends_with("ms")) {
    digits.resize(digits.size() - 2);
    scale = 1;
  } else if (ends_with("s")) {
    digits.pop_back();
  } else if (ends_with("m")) {
    digits.pop_back();
    scale = 60'000;
  }
  return std::chrono::milliseconds(parse_positive(digits, "--wall-budget") * scale);
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_positive(text, "range");
    return {v, v};
  }
  const auto a = parse_positive(text.substr(0, dots), "range start");
  const auto b = parse_positive(text.substr(dots + 2), "range end");
  if (a > b) throw Error(ErrorCode::Parse, "empty range '" + text + "'");
  return {a, b};
}

// ---- report serialization ----

ordered_json to_json(const BoundReport& r) {
  ordered_json j;
  j["command"] = "bound";
  j["group"] = r.group;
  j["quantity"] = to_string(r.quantity);
  j["policy"] = to_string(r.policy);
  j["best_lower"] = optional_bound(r.best_lower);
  j["best_upper"] = optional_bound(r.best_upper);
  j["bounds"] = ordered_json::array();
  for (std::size_t i = 0; i < r.bounds.size(); ++i) {
    ordered_json b;
    b["granted"] = static_cast<bool>(r.granted[i]);
    b["bound"] = to_json(r.bounds[i]);
    j["bounds"].push_back(std::move(b));
  }
  return j;
}

BoundReport bound_report_from_json(const ordered_json& j) {
  return guarded("bound report", [&] {
    BoundReport r;
    r.group = j.at("group").get<std::string>();
    r.quantity = parse_quantity(j.at("quantity").get<std::string>());
    r.policy = parse_policy(j.at("policy").get<std::string>());
    r.best_lower = optional_bound_from(j.at("best_lower"));
    r.best_upper = optional_bound_from(j.at("best_upper"));
    for (const auto& b : j.at("bounds")) {
      r.granted.push_back(b.at("granted").get<bool>());
      r.bounds.push_back(bound_from_json(b.at("bound")));
    }
    return r;
  });
}

ordered_json to_json(const ExactReport& r) {
  ordered_json j;
  j["command"] = "exact";
  j["group"] = r.group;
  j["quantity"] = to_string(r.quantity);
  j["status"] = to_string(r.status);
  j["value"] = r.value;
  j["extremal_example"] = r.extremal_example;
  j["extremal_count"] = r.extremal_count;
  j["nodes_explored"] = r.nodes_explored;
  j["elapsed_s"] = r.elapsed_s;
  j["symmetry"] = r.symmetry;
  j["from_cache"] = r.from_cache;
  return j;
}

ExactReport exact_report_from_json(const ordered_json& j) {
  return guarded("exact report", [&] {
    ExactReport r;
    r.group = j.at("group").get<std::string>();
    r.quantity = parse_quantity(j.at("quantity").get<std::string>());
    r.status = parse_status(j.at("status").get<std::string>());
    r.value = j.at("value").get<std::uint64_t>();
    r.extremal_example = j.at("extremal_example").get<std::vector<std::string>>();
    r.extremal_count = j.at("extremal_count").get<std::uint64_t>();
    r.nodes_explored = j.at("nodes_explored").get<std::uint64_t>();
    r.elapsed_s = j.at("elapsed_s").get<double>();
    r.symmetry = j.at("symmetry").get<std::string>();
    r.from_cache = j.at("from_cache").get<bool>();
    return r;
  });
}

ordered_json to_json(const PropdReport& r) {
  ordered_json j;
  j["command"] = "propd";
  j["group"] = r.group;
  j["status"] = to_string(r.status);
  j["summary"] = propd_summary(r);
  j["s"] = r.s_value;
  j["registry_known"] = r.registry_known;
  j["registry_citation"] = r.registry_citation;
  j["extremal_count"] = r.extremal_count;
  j["counterexample"] = r.counterexample;
  j["symmetry"] = r.symmetry;
  j["from_cache"] = r.from_cache;
  return j;
}

PropdReport propd_report_from_json(const ordered_json& j) {
  return guarded("propd report", [&] {
    PropdReport r;
    r.group = j.at("group").get<std::string>();
    r.status = parse_propd_status(j.at("status").get<std::string>());
    r.s_value = j.at("s").get<std::uint64_t>();
    r.registry_known = j.at("registry_known").get<bool>();
    r.registry_citation = j.at("registry_citation").get<std::string>();
    r.extremal_count = j.at("extremal_count").get<std::uint64_t>();
    r.counterexample = j.at("counterexample").get<std::vector<std::string>>();
    r.symmetry = j.at("symmetry").get<std::string>();
    r.from_cache = j.at("from_cache").get<bool>();
    return r;
  });
}

ordered_json to_json(const GammaReport& r) {
  ordered_json j;
  j["command"] = "gamma";
  j["k"] = r.k;
  j["q"] = r.q;
  j["gamma_upper"] = r.gamma_upper;
  j["gamma_upper_exact"] = r.gamma_upper_exact;
  j["minimizer_x"] = r.minimizer_x;
  j["tolerance"] = r.tolerance;
  j["dense_fallback"] = r.dense_fallback;
  return j;
}

GammaReport gamma_report_from_json(const ordered_json& j) {
  return guarded("gamma report", [&] {
    GammaReport r;
    r.k = j.at("k").get<std::uint64_t>();
    r.q = j.at("q").get<std::uint64_t>();
    r.gamma_upper = j.at("gamma_upper").get<double>();
    r.gamma_upper_exact = j.at("gamma_upper_exact").get<std::string>();
    r.minimizer_x = j.at("minimizer_x").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.dense_fallback = j.at("dense_fallback").get<bool>();
    return r;
  });
}

const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> cols = {
      "k",                "n",                "quantity",         "harborth_lower",     "harborth_upper",
      "harborth_exact_pow2", "elsholtz_lower", "rank3_lower",      "rank4_lower",        "slice_rank_binomial",
      "slice_rank_entropy", "central_binomial", "prime_power",     "odd_modulus",        "rank3_linear_upper",
      "naslund",          "primary_sum",      "compose_primary",  "best_lower",         "best_upper",
  };
  return cols;
}

ordered_json to_json(const TableReport& r) {
  ordered_json j;
  j["command"] = "table";
  j["quantity"] = to_string(r.quantity);
  j["policy"] = to_string(r.policy);
  j["columns"] = table_columns();
  j["truncated"] = r.truncated;
  j["rows"] = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json cells = ordered_json::array({row.k, row.n, to_string(r.quantity)});
    for (const auto& c : row.cells) cells.push_back(c);
    j["rows"].push_back(std::move(cells));
  }
  return j;
}

TableReport table_report_from_json(const ordered_json& j) {
  return guarded("table report", [&] {
    TableReport r;
    r.quantity = parse_quantity(j.at("quantity").get<std::string>());
    r.policy = parse_policy(j.at("policy").get<std::string>());
    r.truncated = j.at("truncated").get<bool>();
    if (j.at("columns").get<std::vector<std::string>>() != table_columns())
      throw Error(ErrorCode::Parse, "table report has unexpected columns");
    for (const auto& row : j.at("rows")) {
      TableRow t;
      t.k = row.at(0).get<std::uint64_t>();
      t.n = row.at(1).get<unsigned>();
      for (std::size_t i = 3; i < row.size(); ++i) t.cells.push_back(row.at(i).get<std::string>());
      r.rows.push_back(std::move(t));
    }
    return r;
  });
}

ordered_json to_json(const ValidateReport& r) {
  ordered_json j;
  j["command"] = "validate";
  j["corpus"] = r.corpus;
  j["groups"] = r.groups;
  j["checks"] = r.checks;
  j["violations"] = ordered_json::array();
  for (const auto& v : r.violations) {
    ordered_json x;
    x["group"] = v.group;
    x["quantity"] = to_string(v.quantity);
    x["exact"] = v.exact;
    x["bound"] = to_json(v.bound);
    j["violations"].push_back(std::move(x));
  }
  return j;
}

ValidateReport validate_report_from_json(const ordered_json& j) {
  return guarded("validate report", [&] {
    ValidateReport r;
    r.corpus = j.at("corpus").get<std::string>();
    r.groups = j.at("groups").get<std::uint64_t>();
    r.checks = j.at("checks").get<std::uint64_t>();
    for (const auto& x : j.at("violations")) {
      Violation v;
      v.group = x.at("group").get<std::string>();
      v.quantity = parse_quantity(x.at("quantity").get<std::string>());
      v.exact = x.at("exact").get<std::uint64_t>();
      v.bound = bound_from_json(x.at("bound"));
      r.violations.push_back(std::move(v));
    }
    return r;
  });
}

// ---- report construction ----

BoundReport make_bound_report(const FiniteAbelianGroup& g, Quantity q, const RunConfig& cfg) {
  auto set = best_bounds(g, q, cfg.policy, cfg.gamma_tolerance);
  BoundReport r;
  r.group = g.to_string();
  r.quantity = q;
  r.policy = cfg.policy;
  r.best_lower = std::move(set.best_lower);
  r.best_upper = std::move(set.best_upper);
  r.bounds = std::move(set.all);
  r.granted = std::move(set.granted);
  return r;
}

ExactReport make_exact_report(const FiniteAbelianGroup& g, Quantity q, const RunConfig& cfg) {
  ExactReport r;
  r.group = g.to_string();
  r.quantity = q;

  const auto cache_path = resolve_cache(cfg);
  ResultCache cache;
  if (cache_path) cache = ResultCache::load_or_empty(*cache_path);
  if (const CacheEntry* hit = cache_path ? cache.find(g) : nullptr) {
    const auto& value = q == Quantity::S ? hit->s : hit->eta;
    if (value) {
      r.status = SearchStatus::Exact;
      r.value = *value;
      r.from_cache = true;
      if (q == Quantity::S && !hit->extremal_s.empty()) {
        r.extremal_count = hit->extremal_s.size();
        for (const auto& e : Sequence(g, hit->extremal_s.front()).elements()) r.extremal_example.push_back(format_element(e));
      }
      const auto key = to_string(q);
      if (hit->search.contains(key)) {
        const auto& meta = hit->search.at(key);
        r.symmetry = meta.value("symmetry", std::string());
        r.nodes_explored = meta.value("nodes", std::uint64_t(0));
        r.elapsed_s = meta.value("elapsed_s", 0.0);
      }
      return r;
    }
  }

  const auto outcome = exact_constant(g, q, cfg.search_options());
  r.status = outcome.status;
  r.value = outcome.value;
  r.nodes_explored = outcome.nodes_explored;
  r.elapsed_s = outcome.elapsed.count();
  r.symmetry = outcome.symmetry;
  if (outcome.extremal_example) r.extremal_example = element_strings(*outcome.extremal_example);
  r.extremal_count = outcome.extremal_sequences.size();
  if (cache_path && outcome.status == SearchStatus::Exact) {
    cache.record(g, outcome);
    cache.save(*cache_path);
  }
  return r;
}

PropdReport make_propd_report(const FiniteAbelianGroup& g, const RunConfig& cfg) {
  if (!g.homocyclic_shape()) throw Error(ErrorCode::Shape, g.to_string() + " is not of the form (Z_k)^n");
  const auto cache_path = resolve_cache(cfg);
  ResultCache cache;
  if (cache_path) cache = ResultCache::load_or_empty(*cache_path);
  const auto verdict = check_property_d(g, cfg.search_options(), cache_path ? &cache : nullptr);
  if (cache_path && !verdict.from_cache && verdict.status != PropertyDStatus::Unknown) cache.save(*cache_path);

  const auto reg = known_property_d(g);
  PropdReport r;
  r.group = g.to_string();
  r.status = verdict.status;
  r.s_value = verdict.s_value;
  r.registry_known = reg.known;
  r.registry_citation = reg.citation;
  r.extremal_count = verdict.extremal_sequences.size();
  if (verdict.counterexample) r.counterexample = element_strings(*verdict.counterexample);
  r.symmetry = verdict.symmetry;
  r.from_cache = verdict.from_cache;
  return r;
}

GammaReport make_gamma_report(std::uint64_t k, std::optional<std::uint64_t> q, double tol) {
  const auto res = naslund_gamma(k, q.value_or(largest_prime_power_divisor(k)), tol);
  GammaReport r;
  r.k = res.k;
  r.q = res.q;
  r.gamma_upper = res.gamma_upper;
  r.gamma_upper_exact = res.gamma_upper_exact;
  r.minimizer_x = res.minimizer_x;
  r.tolerance = res.tolerance;
  r.dense_fallback = res.used_dense_fallback;
  return r;
}

TableReport make_table_report(std::pair<std::uint64_t, std::uint64_t> k_range,
                              std::pair<std::uint64_t, std::uint64_t> n_range, Quantity q, const RunConfig& cfg,
                              std::size_t max_rows) {
  if (k_range.first < 2) throw Error(ErrorCode::Domain, "table needs k >= 2");
  TableReport r;
  r.quantity = q;
  r.policy = cfg.policy;
  const auto& cols = table_columns();
  for (auto k = k_range.first; k <= k_range.second; ++k) {
    for (auto n = n_range.first; n <= n_range.second; ++n) {
      if (r.rows.size() == max_rows) {
        r.truncated = true;
        return r;
      }
      const auto set = best_bounds(FiniteAbelianGroup::homocyclic(k, static_cast<unsigned>(n)), q, cfg.policy,
                                   cfg.gamma_tolerance);
      TableRow row;
      row.k = k;
      row.n = static_cast<unsigned>(n);
      for (std::size_t c = 3; c < cols.size(); ++c) {
        std::string cell;
        if (cols[c] == "best_lower") {
          if (set.best_lower) cell = set.best_lower->value.str();
        } else if (cols[c] == "best_upper") {
          if (set.best_upper) cell = set.best_upper->value.str();
        } else {
          for (const auto& b : set.all)
            if (b.derivation.rule == cols[c]) cell = b.value.str();
        }
        row.cells.push_back(cell);
      }
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

ValidateReport make_validate_report(const std::string& corpus_path, PropertyDPolicy policy, double tol) {
  const auto cache = ResultCache::load(corpus_path);
  ValidateReport r;
  r.corpus = corpus_path;
  for (const auto& [key, entry] : cache.entries()) {
    const auto g = parse_group(key);
    ++r.groups;
    for (auto q : {Quantity::S, Quantity::Eta}) {
      const auto& exact = q == Quantity::S ? entry.s : entry.eta;
      if (!exact) continue;
      const auto set = best_bounds(g, q, policy, tol);
      for (std::size_t i = 0; i < set.all.size(); ++i) {
        const auto& b = set.all[i];
        const bool lower = b.direction == Direction::Lower;
        if (!lower && !set.granted[i]) continue;
        ++r.checks;
        const bool ok = lower ? b.value <= *exact : b.value >= *exact;
        if (!ok) r.violations.push_back({key, q, *exact, b});
      }
    }
  }
  return r;
}

// ---- command line ----

namespace {

void print_bound(std::ostream& out, Format f, const BoundReport& r) {
  if (f == Format::Json) {
    out << to_json(r).dump(2) << '\n';
    return;
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < r.bounds.size(); ++i) {
    const auto& b = r.bounds[i];
    rows.push_back({b.derivation.rule, to_string(b.direction), b.value.str(), r.granted[i] ? "yes" : "no",
                    assumption_list(b.assumptions)});
  }
  emit_table(out, f, {"rule", "direction", "value", "granted", "assumptions"}, rows);
  if (f == Format::Markdown) {
    out << "\nbest lower: " << (r.best_lower ? r.best_lower->value.str() : "none")
        << ", best upper: " << (r.best_upper ? r.best_upper->value.str() : "none") << '\n';
  }
}

void print_exact(std::ostream& out, Format f, const ExactReport& r) {
  if (f == Format::Json) {
    out << to_json(r).dump(2) << '\n';
    return;
  }
  std::ostringstream elapsed;
  elapsed << r.elapsed_s;
  emit_record(out, f,
              {{"group", r.group}, {"quantity", to_string(r.quantity)}, {"status", to_string(r.status)},
               {"value", std::to_string(r.value)}, {"extremal_example", join(r.extremal_example, " ")},
               {"extremal_count", std::to_string(r.extremal_count)}, {"nodes_explored", std::to_string(r.nodes_explored)},
               {"elapsed_s", elapsed.str()}, {"symmetry", r.symmetry}, {"from_cache", r.from_cache ? "true" : "false"}});
}

void print_propd(std::ostream& out, Format f, const PropdReport& r) {
  if (f == Format::Json) {
    out << to_json(r).dump(2) << '\n';
    return;
  }
  emit_record(out, f,
              {{"group", r.group}, {"status", to_string(r.status)}, {"summary", propd_summary(r)},
               {"s", std::to_string(r.s_value)}, {"registry_citation", r.registry_citation},
               {"extremal_count", std::to_string(r.extremal_count)}, {"counterexample", join(r.counterexample, " ")},
               {"symmetry", r.symmetry}});
}

void print_gamma(std::ostream& out, Format f, const GammaReport& r) {
  if (f == Format::Json) {
    out << to_json(r).dump(2) << '\n';
    return;
  }
  std::ostringstream g, x;
  g.precision(17);
  x.precision(17);
  g << r.gamma_upper;
  x << r.minimizer_x;
  emit_record(out, f,
              {{"k", std::to_string(r.k)}, {"q", std::to_string(r.q)}, {"gamma_upper", g.str()},
               {"gamma_upper_exact", r.gamma_upper_exact}, {"minimizer_x", x.str()},
               {"dense_fallback", r.dense_fallback ? "true" : "false"}});
}

void print_table(std::ostream& out, Format f, const TableReport& r) {
  if (f == Format::Json) {
    out << to_json(r).dump(2) << '\n';
    return;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : r.rows) {
    std::vector<std::string> cells = {std::to_string(row.k), std::to_string(row.n), to_string(r.quantity)};
    cells.insert(cells.end(), row.cells.begin(), row.cells.end());
    rows.push_back(std::move(cells));
  }
  emit_table(out, f, table_columns(), rows);
}

void print_validate(std::ostream& out, Format f, const ValidateReport& r) {
  if (f == Format::Json) {
    out << to_json(r).dump(2) << '\n';
    return;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& v : r.violations)
    rows.push_back({v.group, to_string(v.quantity), std::to_string(v.exact), v.bound.derivation.rule,
                    to_string(v.bound.direction), v.bound.value.str()});
  emit_table(out, f, {"group", "quantity", "exact", "rule", "direction", "bound"}, rows);
  out << r.violations.size() << " violations in " << r.checks << " checks over " << r.groups << " groups\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zsum: zero-sum constants of finite Abelian groups"};
  app.require_subcommand(1);

  std::string policy = "registry-only", node_budget = "large", wall_budget = "15m";
  std::optional<std::string> format, cache;
  double tol = 1e-9;
  RunConfig cfg;
  app.add_option("--policy", policy, "Property D policy: none, registry-only, assume-all");
  app.add_option("--node-budget", node_budget, "search node budget: small, medium, large or a count");
  app.add_option("--wall-budget", wall_budget, "search wall-clock budget, e.g. 30s, 5m, 500ms");
  app.add_option("--tol", tol, "tolerance of the gamma minimization");
  app.add_option("--format", format, "output format: json, csv, markdown");
  app.add_option("--cache", cache, std::string("result cache file (default: $") + kCacheEnvVar + ")");
  app.add_option("--threads", cfg.threads, "worker threads for the search (0: OpenMP default)");
  app.add_flag("--serial", cfg.serial, "run the search on one thread");
  app.add_flag("--no-symmetry", [&](std::int64_t) { cfg.use_symmetry = false; }, "disable symmetry reduction");

  std::string group_spec, quantity = "s";
  auto* bound = app.add_subcommand("bound", "all applicable bounds and the best ones");
  bound->add_option("group", group_spec, "group, e.g. Z3^2 or Z4xZ2")->required();
  bound->add_option("quantity", quantity, "s or eta");

  auto* exact = app.add_subcommand("exact", "exact value by exhaustive search");
  exact->add_option("group", group_spec)->required();
  exact->add_option("quantity", quantity, "s or eta");

  auto* propd = app.add_subcommand("propd", "check Property D on (Z_k)^n");
  propd->add_option("group", group_spec)->required();

  std::string seq_file;
  std::optional<std::uint64_t> exactly, at_most;
  bool input_coords = false;
  auto* zerosum = app.add_subcommand("zerosum", "find a zero-sum subsequence in a sequence file");
  zerosum->add_option("file", seq_file, "sequence file")->required();
  zerosum->add_option("group", group_spec)->required();
  auto* ex_opt = zerosum->add_option("--exactly", exactly, "length exactly N (default: exp(G))");
  zerosum->add_option("--at-most", at_most, "length between 1 and N")->excludes(ex_opt);
  zerosum->add_flag("--input-coords", input_coords, "residues follow the factor order of the group spec");

  std::uint64_t gamma_k = 0;
  std::optional<std::uint64_t> gamma_q;
  auto* gamma = app.add_subcommand("gamma", "optimized exponential base for (Z_k)^n");
  gamma->add_option("k", gamma_k)->required();
  gamma->add_option("q", gamma_q, "prime power dividing k (default: the largest)");

  std::string k_range, n_range;
  std::size_t max_rows = 500;
  auto* table = app.add_subcommand("table", "bound comparison over ranges of k and n");
  table->add_option("--k", k_range, "k or a..b")->required();
  table->add_option("--n", n_range, "n or a..b")->required();
  table->add_option("quantity", quantity, "s or eta");
  table->add_option("--max-rows", max_rows, "rows kept before truncating");

  std::optional<std::string> corpus;
  auto* validate = app.add_subcommand("validate", "sandwich check of cached exact values against all bounds");
  validate->add_option("corpus", corpus, "cache file (default: --cache or $ZSUM_CACHE)");

  for (auto* sub : {bound, exact, propd, zerosum, gamma, table, validate}) sub->fallthrough();

  std::vector<std::string> argv_store = {"zsum"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    cfg.policy = parse_policy(policy);
    cfg.node_budget = parse_node_budget(node_budget);
    cfg.wall_budget = parse_wall_budget(wall_budget);
    if (!(tol > 0)) throw Error(ErrorCode::Parse, "--tol must be positive");
    cfg.gamma_tolerance = tol;
    cfg.cache_path = cache;
    const auto fmt = [&](Format fallback) { return format ? parse_format(*format) : fallback; };
    cfg.format = fmt(Format::Json);

    if (bound->parsed()) {
      print_bound(out, cfg.format, make_bound_report(parse_group(group_spec), parse_quantity(quantity), cfg));
    } else if (exact->parsed()) {
      print_exact(out, cfg.format, make_exact_report(parse_group(group_spec), parse_quantity(quantity), cfg));
    } else if (propd->parsed()) {
      print_propd(out, cfg.format, make_propd_report(parse_group(group_spec), cfg));
    } else if (zerosum->parsed()) {
      const auto g = parse_group(group_spec);
      std::ifstream in(seq_file);
      if (!in) throw Error(ErrorCode::Parse, "cannot open sequence file " + seq_file);
      const auto seq = read_sequence(in, g, input_coords);
      const LengthSpec target = at_most ? LengthSpec::at_most(*at_most)
                                        : LengthSpec::exactly(exactly.value_or(g.small_exponent()));
      const auto w = find_zero_sum(seq, target);
      if (format && parse_format(*format) == Format::Json) {
        ordered_json j;
        j["command"] = "zerosum";
        j["group"] = g.to_string();
        j["found"] = w.has_value();
        j["length"] = w ? w->length : 0;
        std::vector<std::string> elems;
        if (w)
          for (const auto& [e, m] : w->sub_multiplicities)
            for (std::uint64_t i = 0; i < m; ++i) elems.push_back(format_element(e));
        j["witness"] = elems;
        out << j.dump(2) << '\n';
      } else if (w) {
        out << "# zero-sum subsequence of length " << w->length << '\n';
        write_sequence(out, w->sub_multiplicities);
      } else {
        out << "none\n";
      }
    } else if (gamma->parsed()) {
      print_gamma(out, cfg.format, make_gamma_report(gamma_k, gamma_q, cfg.gamma_tolerance));
    } else if (table->parsed()) {
      const auto report = make_table_report(parse_range(k_range), parse_range(n_range), parse_quantity(quantity), cfg,
                                            max_rows);
      if (report.truncated) err << "warning: table truncated to " << max_rows << " rows (raise --max-rows)\n";
      print_table(out, fmt(Format::Csv), report);
    } else if (validate->parsed()) {
      std::optional<std::string> path = corpus;
      if (!path) path = resolve_cache(cfg);
      if (!path) throw Error(ErrorCode::Parse, "validate needs a corpus file, --cache or $ZSUM_CACHE");
      const auto report = make_validate_report(*path, cfg.policy, cfg.gamma_tolerance);
      if (report.groups == 0) err << "warning: corpus " << *path << " is empty; nothing to check\n";
      print_validate(out, cfg.format, report);
      if (!report.violations.empty()) {
        err << "error: " << report.violations.size() << " sandwich violations\n";
        return 2;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace zsum::cli
