#include <algorithm>
#include <cctype>
#include <tuple>

#include "zsum/bounds.hpp"
#include "zsum/errors.hpp"
#include "zsum/property_d.hpp"

namespace zsum {

const char* to_string(PropertyDPolicy p) {
  switch (p) {
    case PropertyDPolicy::None: return "none";
    case PropertyDPolicy::RegistryOnly: return "registry-only";
    case PropertyDPolicy::AssumeAll: return "assume-all";
  }
  return "?";
}

PropertyDPolicy parse_policy(const std::string& text) {
  std::string t;
  for (char c : text) t += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "none") return PropertyDPolicy::None;
  if (t == "registry-only" || t == "registry") return PropertyDPolicy::RegistryOnly;
  if (t == "assume-all" || t == "all") return PropertyDPolicy::AssumeAll;
  throw Error(ErrorCode::Parse, "unknown Property D policy '" + text + "' (none, registry-only, assume-all)");
}

bool assumptions_granted(const std::set<std::string>& assumptions, PropertyDPolicy policy) {
  switch (policy) {
    case PropertyDPolicy::None: return assumptions.empty();
    case PropertyDPolicy::AssumeAll: return true;
    case PropertyDPolicy::RegistryOnly:
      return std::all_of(assumptions.begin(), assumptions.end(),
                         [](const std::string& g) { return known_property_d(parse_group(g)).known; });
  }
  return false;
}

namespace {

bool odd_at_least_3(std::uint64_t k) { return k >= 3 && k % 2 == 1; }

bool only_3_and_5(std::uint64_t k) {
  if (k < 3) return false;
  for (const auto& pp : factorize(k))
    if (pp.prime != 3 && pp.prime != 5) return false;
  return true;
}

void homocyclic_rules(std::uint64_t k, unsigned n, Quantity q, double tol, std::vector<BoundValue>& out) {
  if (q == Quantity::Eta) {
    if (n == 3 && odd_at_least_3(k)) out.push_back(rank3_lower(k, q));
    if (n == 4 && odd_at_least_3(k)) out.push_back(rank4_lower(k, q));
    if (n == 3 && only_3_and_5(k)) out.push_back(rank3_linear_upper(k, q));
    return;
  }
  out.push_back(harborth_lower(k, n));
  out.push_back(harborth_upper(k, n));
  if (prime_power_base(k) == 2) {
    auto [lo, hi] = harborth_exact_pow2(k, n);
    out.push_back(std::move(lo));
    out.push_back(std::move(hi));
  }
  if (odd_at_least_3(k)) {
    out.push_back(elsholtz_lower(k, n));
    out.push_back(odd_modulus_bound(k, n));
    if (n == 3) out.push_back(rank3_lower(k, q));
    if (n == 4) out.push_back(rank4_lower(k, q));
    if (prime_power_base(k) != 0) out.push_back(prime_power_bound(k, n));
  }
  out.push_back(naslund_bound(k, n, tol));
  if (is_prime(k)) {
    out.push_back(slice_rank_binomial_bound(k, n));
    out.push_back(slice_rank_entropy_bound(k, n));
    out.push_back(central_binomial_bound(k, n));
  }
  if (n == 3 && only_3_and_5(k)) out.push_back(rank3_linear_upper(k, q));
}

std::vector<BoundValue> applicable(const FiniteAbelianGroup& g, Quantity q, PropertyDPolicy policy, double tol,
                                   bool with_composition) {
  std::vector<BoundValue> out;
  if (g.is_trivial()) return out;
  if (auto shape = g.homocyclic_shape()) homocyclic_rules(shape->k, shape->n, q, tol, out);
  if (q == Quantity::Eta) return out;

  out.push_back(primary_sum_bound(g));
  if (with_composition && !g.elementary_shape()) {
    std::map<std::uint64_t, BoundValue> per_prime;
    for (const auto& c : g.primary_decomposition()) {
      const auto sub = FiniteAbelianGroup::homocyclic(c.prime, c.rank);
      std::optional<BoundValue> best;
      for (auto& b : applicable(sub, q, policy, tol, false)) {
        if (b.direction != Direction::Upper || !assumptions_granted(b.assumptions, policy)) continue;
        if (!best || b.value < best->value) best = std::move(b);
      }
      per_prime.emplace(c.prime, std::move(*best));  // harborth_upper is always granted
    }
    out.push_back(compose_primary(g, per_prime));
  }
  return out;
}

}  // namespace

BoundSet best_bounds(const FiniteAbelianGroup& g, Quantity q, PropertyDPolicy policy, double tol) {
  BoundSet set;
  set.all = applicable(g, q, policy, tol, true);
  std::stable_sort(set.all.begin(), set.all.end(), [](const BoundValue& a, const BoundValue& b) {
    return std::tie(a.derivation.rule, a.direction, a.value) < std::tie(b.derivation.rule, b.direction, b.value);
  });
  for (const auto& b : set.all) {
    const bool ok = assumptions_granted(b.assumptions, policy);
    set.granted.push_back(ok);
    if (!ok) continue;
    if (b.direction == Direction::Lower && (!set.best_lower || b.value > set.best_lower->value)) set.best_lower = b;
    if (b.direction == Direction::Upper && (!set.best_upper || b.value < set.best_upper->value)) set.best_upper = b;
  }
  return set;
}

}  // namespace zsum
