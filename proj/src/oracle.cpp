#include "zsum/oracle.hpp"

#include "zsum/errors.hpp"

namespace zsum {

namespace {

bool length_ok(std::uint64_t len, LengthSpec target) {
  return target.kind == LengthSpec::Kind::Exactly ? len == target.length : len >= 1 && len <= target.length;
}

// Positions of elements with repetition; bit i of a mask selects position i.
std::optional<ZeroSumWitness> search_subsets(const FiniteAbelianGroup& g, const std::vector<GroupElement>& items,
                                             LengthSpec target) {
  std::optional<ZeroSumWitness> best;
  const std::uint64_t limit = std::uint64_t(1) << items.size();
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    const auto len = static_cast<std::uint64_t>(__builtin_popcountll(mask));
    if (!length_ok(len, target)) continue;
    if (best && best->length <= len) continue;
    GroupElement sum = g.zero();
    for (std::size_t i = 0; i < items.size(); ++i)
      if (mask >> i & 1) sum = g.add(sum, items[i]);
    if (sum != g.zero()) continue;
    ZeroSumWitness w;
    w.length = len;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (mask >> i & 1) ++w.sub_multiplicities[items[i]];
    best = std::move(w);
    if (target.kind == LengthSpec::Kind::Exactly) break;
  }
  return best;
}

}  // namespace

std::optional<ZeroSumWitness> oracle_find_zero_sum(const Sequence& s, LengthSpec target) {
  if (target.length == 0) throw Error(ErrorCode::InvalidTarget, "target length must be >= 1");
  if (s.length() > kOracleMaxSequence)
    throw Error(ErrorCode::OracleScale, "oracle handles at most " + std::to_string(kOracleMaxSequence) + " terms");
  return search_subsets(s.group(), s.elements(), target);
}

std::uint64_t oracle_exact(const FiniteAbelianGroup& g, Quantity q) {
  const auto order = g.small_order(kOracleMaxGroup);
  if (!order) throw Error(ErrorCode::OracleScale, "oracle handles groups of order <= " + std::to_string(kOracleMaxGroup));
  const std::uint64_t e = g.small_exponent();
  const LengthSpec target = q == Quantity::S ? LengthSpec::exactly(e) : LengthSpec::at_most(e);

  std::vector<GroupElement> elements;
  g.enumerate_elements([&](const GroupElement& x) { elements.push_back(x); });

  for (std::uint64_t len = 1;; ++len) {
    if (len > kOracleMaxExtremal + 1)
      throw Error(ErrorCode::OracleScale, "extremal length exceeds " + std::to_string(kOracleMaxExtremal));
    // Nondecreasing index vectors enumerate each multiset of size len once.
    std::vector<std::size_t> idx(len, 0);
    bool avoiding_found = false;
    while (true) {
      std::vector<GroupElement> items;
      for (auto i : idx) items.push_back(elements[i]);
      if (!search_subsets(g, items, target)) {
        avoiding_found = true;
        break;
      }
      std::size_t pos = len;
      while (pos > 0 && idx[pos - 1] == elements.size() - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < len; ++j) idx[j] = idx[pos - 1];
    }
    if (!avoiding_found) return len;
  }
}

std::uint64_t oracle_exact_s(const FiniteAbelianGroup& g) { return oracle_exact(g, Quantity::S); }
std::uint64_t oracle_exact_eta(const FiniteAbelianGroup& g) { return oracle_exact(g, Quantity::Eta); }

BigInt oracle_count_monomials(const MonomialConstraint& c) {
  if (c.n_vars == 0) throw Error(ErrorCode::Domain, "monomial constraint needs at least one variable");
  double space = 1;
  for (std::uint64_t i = 0; i < c.n_vars; ++i) space *= static_cast<double>(c.per_var_cap + 1);
  if (space > static_cast<double>(kOracleMaxMonomialSpace))
    throw Error(ErrorCode::OracleScale, "monomial search space exceeds 10^7");
  std::vector<std::uint64_t> a(c.n_vars, 0);
  std::uint64_t count = 0;
  while (true) {
    std::uint64_t total = 0;
    for (auto v : a) total += v;
    if (total <= c.total_cap) ++count;
    std::size_t i = 0;
    while (i < a.size() && a[i] == c.per_var_cap) a[i++] = 0;
    if (i == a.size()) break;
    ++a[i];
  }
  return count;
}

}  // namespace zsum
