#include "zsum/cache.hpp"

#include <fstream>

#include "zsum/errors.hpp"

namespace zsum {

using nlohmann::ordered_json;

namespace {

ordered_json element_json(const GroupElement& e) { return ordered_json(e.coords); }

GroupElement element_from_json(const ordered_json& j) {
  GroupElement e;
  e.coords = j.get<std::vector<std::uint64_t>>();
  return e;
}

}  // namespace

ResultCache ResultCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open cache file " + path.string());
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, "cache file " + path.string() + ": " + e.what());
  }
  return from_json(doc);
}

ResultCache ResultCache::load_or_empty(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  return load(path);
}

void ResultCache::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Parse, "cannot write cache file " + path.string());
  out << to_json().dump(2) << '\n';
}

ordered_json ResultCache::to_json() const {
  ordered_json doc = ordered_json::object();
  for (const auto& [key, e] : entries_) {
    ordered_json j = ordered_json::object();
    if (e.s) j["s"] = *e.s;
    if (e.eta) j["eta"] = *e.eta;
    if (!e.extremal_s.empty()) {
      ordered_json list = ordered_json::array();
      for (const auto& seq : e.extremal_s) {
        ordered_json sj = ordered_json::array();
        for (const auto& el : seq) sj.push_back(element_json(el));
        list.push_back(std::move(sj));
      }
      j["extremal_s"] = std::move(list);
      j["extremal_complete"] = e.extremal_complete;
    }
    if (!e.search.is_null()) j["search"] = e.search;
    doc[key] = std::move(j);
  }
  return doc;
}

ResultCache ResultCache::from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::Parse, "cache document must be an object");
  ResultCache cache;
  for (const auto& [key, j] : doc.items()) {
    const auto g = parse_group(key);
    CacheEntry e;
    try {
      if (j.contains("s")) e.s = j.at("s").get<std::uint64_t>();
      if (j.contains("eta")) e.eta = j.at("eta").get<std::uint64_t>();
      if (j.contains("extremal_s")) {
        for (const auto& sj : j.at("extremal_s")) {
          std::vector<GroupElement> seq;
          for (const auto& el : sj) {
            auto ge = element_from_json(el);
            if (!g.contains(ge)) throw Error(ErrorCode::Parse, "element outside " + key);
            seq.push_back(std::move(ge));
          }
          e.extremal_s.push_back(std::move(seq));
        }
        e.extremal_complete = j.value("extremal_complete", false);
      }
      if (j.contains("search")) e.search = j.at("search");
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::Parse, "cache entry " + key + ": " + ex.what());
    }
    cache.entries_[g.to_string()] = std::move(e);
  }
  return cache;
}

const CacheEntry* ResultCache::find(const FiniteAbelianGroup& g) const {
  auto it = entries_.find(g.to_string());
  return it == entries_.end() ? nullptr : &it->second;
}

void ResultCache::record(const FiniteAbelianGroup& g, const SearchOutcome& outcome) {
  if (outcome.status != SearchStatus::Exact) return;
  auto& e = entry(g);
  ordered_json meta = ordered_json::object();
  meta["status"] = to_string(outcome.status);
  meta["nodes"] = outcome.nodes_explored;
  meta["elapsed_s"] = outcome.elapsed.count();
  meta["symmetry"] = outcome.symmetry;
  if (e.search.is_null()) e.search = ordered_json::object();
  e.search[to_string(outcome.quantity)] = std::move(meta);
  if (outcome.quantity == Quantity::S) {
    e.s = outcome.value;
    e.extremal_s.clear();
    for (const auto& seq : outcome.extremal_sequences) e.extremal_s.push_back(seq.elements());
    e.extremal_complete = true;
  } else {
    e.eta = outcome.value;
  }
}

}  // namespace zsum
