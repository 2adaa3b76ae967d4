#include "zsum/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "zsum/errors.hpp"

namespace zsum {

namespace {

std::uint64_t reduce(std::int64_t r, std::uint64_t m) {
  auto mm = static_cast<std::int64_t>(m);
  auto v = r % mm;
  if (v < 0) v += mm;
  return static_cast<std::uint64_t>(v);
}

}  // namespace

FiniteAbelianGroup FiniteAbelianGroup::make(std::span<const std::uint64_t> factor_orders) {
  if (factor_orders.empty()) throw Error(ErrorCode::InvalidOrder, "empty factor list");
  for (auto o : factor_orders)
    if (o < 2) throw Error(ErrorCode::InvalidOrder, "factor order " + std::to_string(o) + " < 2");

  FiniteAbelianGroup g;
  g.input_factors_.assign(factor_orders.begin(), factor_orders.end());

  // prime -> list of (order, input factor index)
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::size_t>>> pieces;
  for (std::size_t i = 0; i < factor_orders.size(); ++i)
    for (const auto& pp : factorize(factor_orders[i])) pieces[pp.prime].push_back({pp.value, i});

  g.input_map_.resize(factor_orders.size());
  for (auto& [prime, list] : pieces) {
    std::stable_sort(list.begin(), list.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    PrimaryComponent comp{prime, static_cast<unsigned>(list.size()), {}};
    for (const auto& [order, input] : list) {
      g.input_map_[input].push_back(g.factors_.size());
      g.factors_.push_back(order);
      comp.orders.push_back(order);
    }
    g.components_.push_back(std::move(comp));
  }
  for (auto f : g.factors_) g.order_ *= f;
  for (const auto& c : g.components_) g.exponent_ *= c.orders.front();
  return g;
}

FiniteAbelianGroup FiniteAbelianGroup::homocyclic(std::uint64_t k, unsigned n) {
  std::vector<std::uint64_t> orders(n, k);
  return make(orders);
}

FiniteAbelianGroup FiniteAbelianGroup::trivial() { return FiniteAbelianGroup{}; }

std::optional<std::size_t> FiniteAbelianGroup::small_order(std::size_t limit) const {
  if (order_ > limit) return std::nullopt;
  return order_.convert_to<std::size_t>();
}

std::uint64_t FiniteAbelianGroup::small_exponent() const {
  if (exponent_ > std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorCode::Domain, "exponent does not fit in 64 bits");
  return exponent_.convert_to<std::uint64_t>();
}

std::optional<HomocyclicShape> FiniteAbelianGroup::homocyclic_shape() const {
  if (components_.empty()) return std::nullopt;
  const unsigned rank = components_.front().rank;
  std::uint64_t k = 1;
  for (const auto& c : components_) {
    if (c.rank != rank) return std::nullopt;
    if (std::adjacent_find(c.orders.begin(), c.orders.end(), std::not_equal_to<>()) != c.orders.end())
      return std::nullopt;
    k *= c.orders.front();
  }
  return HomocyclicShape{k, rank};
}

std::optional<HomocyclicShape> FiniteAbelianGroup::elementary_shape() const {
  if (components_.size() != 1) return std::nullopt;
  const auto& c = components_.front();
  for (auto o : c.orders)
    if (o != c.prime) return std::nullopt;
  return HomocyclicShape{c.prime, c.rank};
}

std::string FiniteAbelianGroup::to_string() const {
  if (factors_.empty()) return "Z1";
  std::ostringstream out;
  for (std::size_t i = 0; i < factors_.size();) {
    std::size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    if (i > 0) out << 'x';
    out << 'Z' << factors_[i];
    if (j - i > 1) out << '^' << (j - i);
    i = j;
  }
  return out.str();
}

void FiniteAbelianGroup::check(const GroupElement& a) const {
  if (!contains(a)) throw Error(ErrorCode::GroupMismatch, "element (" + format_element(a) + ") not in " + to_string());
}

bool FiniteAbelianGroup::contains(const GroupElement& a) const {
  if (a.coords.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (a.coords[i] >= factors_[i]) return false;
  return true;
}

GroupElement FiniteAbelianGroup::zero() const { return GroupElement{std::vector<std::uint64_t>(factors_.size(), 0)}; }

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  GroupElement r = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % factors_[i];
  return r;
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& a) const {
  check(a);
  GroupElement r = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) r.coords[i] = (factors_[i] - a.coords[i]) % factors_[i];
  return r;
}

GroupElement FiniteAbelianGroup::scalar_multiple(const GroupElement& a, std::int64_t c) const {
  check(a);
  GroupElement r = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto m = factors_[i];
    const auto cm = reduce(c, m);
    r.coords[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.coords[i]) * cm) % m);
  }
  return r;
}

std::uint64_t FiniteAbelianGroup::element_order(const GroupElement& a) const {
  check(a);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto m = factors_[i];
    ord = std::lcm(ord, m / std::gcd(m, a.coords[i]));
  }
  return ord;
}

void FiniteAbelianGroup::enumerate_elements(const std::function<void(const GroupElement&)>& visit) const {
  GroupElement e = zero();
  while (true) {
    visit(e);
    bool advanced = false;
    for (std::size_t i = factors_.size(); i > 0 && !advanced; --i) {
      if (++e.coords[i - 1] < factors_[i - 1]) {
        advanced = true;
      } else {
        e.coords[i - 1] = 0;
      }
    }
    if (!advanced) return;
  }
}

GroupElement FiniteAbelianGroup::from_input_coords(std::span<const std::int64_t> residues) const {
  if (residues.size() != input_factors_.size())
    throw Error(ErrorCode::GroupMismatch, "expected " + std::to_string(input_factors_.size()) + " residues, got " +
                                              std::to_string(residues.size()));
  GroupElement e = zero();
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const auto r = reduce(residues[i], input_factors_[i]);
    for (auto pos : input_map_[i]) e.coords[pos] = r % factors_[pos];
  }
  return e;
}

GroupElement FiniteAbelianGroup::from_canonical_coords(std::span<const std::int64_t> residues) const {
  if (residues.size() != factors_.size())
    throw Error(ErrorCode::GroupMismatch, "expected " + std::to_string(factors_.size()) + " residues, got " +
                                              std::to_string(residues.size()));
  GroupElement e = zero();
  for (std::size_t i = 0; i < residues.size(); ++i) e.coords[i] = reduce(residues[i], factors_[i]);
  return e;
}

std::size_t FiniteAbelianGroup::index_of(const GroupElement& a) const {
  check(a);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + a.coords[i];
  return idx;
}

GroupElement FiniteAbelianGroup::element_at(std::size_t index) const {
  GroupElement e = zero();
  for (std::size_t i = factors_.size(); i > 0; --i) {
    e.coords[i - 1] = index % factors_[i - 1];
    index /= factors_[i - 1];
  }
  return e;
}

FiniteAbelianGroup parse_group(std::string_view spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s.empty()) throw Error(ErrorCode::Parse, "empty group spec");

  auto number = [&](std::size_t& pos) -> std::uint64_t {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data() + pos)
      throw Error(ErrorCode::Parse, "expected a number at position " + std::to_string(pos) + " in '" + std::string(spec) + "'");
    pos = static_cast<std::size_t>(ptr - s.data());
    return v;
  };

  std::vector<std::uint64_t> orders;
  std::size_t pos = 0;
  while (true) {
    if (pos >= s.size() || s[pos] != 'z')
      throw Error(ErrorCode::Parse, "expected 'Z' at position " + std::to_string(pos) + " in '" + std::string(spec) + "'");
    ++pos;
    const auto k = number(pos);
    std::uint64_t n = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      n = number(pos);
      if (n == 0 || n > 64) throw Error(ErrorCode::Parse, "rank must be in 1..64");
    }
    orders.insert(orders.end(), n, k);
    if (pos == s.size()) break;
    if (s[pos] != 'x') throw Error(ErrorCode::Parse, "expected 'x' at position " + std::to_string(pos) + " in '" + std::string(spec) + "'");
    ++pos;
  }
  return FiniteAbelianGroup::make(orders);
}

std::string format_element(const GroupElement& e) {
  std::string out;
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(e.coords[i]);
  }
  return out;
}

}  // namespace zsum
