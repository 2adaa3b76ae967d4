#include "zsum/property_d.hpp"

#include "zsum/errors.hpp"

namespace zsum {

const char* to_string(PropertyDStatus s) {
  switch (s) {
    case PropertyDStatus::Holds: return "Holds";
    case PropertyDStatus::Fails: return "Fails";
    case PropertyDStatus::Unknown: return "Unknown";
  }
  return "?";
}

RegistryEntry known_property_d(const FiniteAbelianGroup& g) {
  RegistryEntry r;
  const auto shape = g.homocyclic_shape();
  if (!shape) return r;
  const auto [k, n] = *shape;
  const auto base = prime_power_base(k);
  std::uint64_t largest_prime = 0;
  for (const auto& pp : factorize(k)) largest_prime = pp.prime;

  // Listed in precedence order for the citation.
  const std::pair<bool, const char*> cases[] = {
      {base == 2, "case (i): k = 2^a, any n"},
      {n == 1, "case (iii): n = 1, any k"},
      {k == 3, "case (ii): k = 3, any n"},
      {n == 2 && largest_prime <= 7, "case (iv): n = 2, k has no prime factor > 7"},
      {n == 3 && base == 5, "case (v): n = 3, k = 5^a"},
      {n == 3 && base == 3, "case (vi): n = 3, k = 3^a"},
  };
  for (const auto& [match, label] : cases) {
    if (!match) continue;
    if (!r.known) r.citation = label;
    r.known = true;
    r.cases.emplace_back(label);
  }
  return r;
}

bool is_set_power(const Sequence& s, std::uint64_t k) {
  for (const auto& [e, m] : s.multiplicities())
    if (m != k - 1) return false;
  return true;
}

PropertyDVerdict check_property_d(const FiniteAbelianGroup& g, const SearchOptions& options, ResultCache* cache) {
  const auto shape = g.homocyclic_shape();
  if (!shape) throw Error(ErrorCode::Shape, g.to_string() + " is not of the form (Z_k)^n");
  const auto k = shape->k;

  PropertyDVerdict v;
  std::vector<Sequence> extremal;
  const CacheEntry* hit = cache ? cache->find(g) : nullptr;
  if (hit && hit->s && hit->extremal_complete && !hit->extremal_s.empty()) {
    v.from_cache = true;
    v.s_value = *hit->s;
    if (hit->search.contains("s")) v.symmetry = hit->search.at("s").value("symmetry", std::string());
    for (const auto& elems : hit->extremal_s) extremal.emplace_back(g, elems);
  } else {
    const auto outcome = exact_s(g, options);
    v.symmetry = outcome.symmetry;
    if (outcome.status != SearchStatus::Exact) return v;
    v.s_value = outcome.value;
    extremal = outcome.extremal_sequences;
    if (cache) cache->record(g, outcome);
  }

  for (const auto& seq : extremal) {
    if (!is_set_power(seq, k)) {
      v.status = PropertyDStatus::Fails;
      v.counterexample = seq;
      return v;
    }
  }
  v.status = PropertyDStatus::Holds;
  v.extremal_sequences = std::move(extremal);
  return v;
}

}  // namespace zsum
