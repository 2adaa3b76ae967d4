#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/numeric.hpp"

namespace zsum {

struct PrimaryComponent {
  std::uint64_t prime = 0;
  unsigned rank = 0;                 // number of cyclic factors
  std::vector<std::uint64_t> orders; // p-powers, descending

  bool operator==(const PrimaryComponent&) const = default;
};

struct GroupElement {
  std::vector<std::uint64_t> coords;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

// (Z_k)^n
struct HomocyclicShape {
  std::uint64_t k = 0;
  unsigned n = 0;
  bool operator==(const HomocyclicShape&) const = default;
};

/// A finite Abelian group held in canonical form: the primary decomposition,
/// primes ascending and prime-power orders descending within each prime.
///
/// The factor list the caller used is remembered so that coordinates given
/// against it can be mapped onto the canonical factors (CRT split per input
/// factor). Equality only looks at the canonical factors.
class FiniteAbelianGroup {
 public:
  // Throws Error(InvalidOrder) for an empty list or an entry < 2.
  static FiniteAbelianGroup make(std::span<const std::uint64_t> factor_orders);
  static FiniteAbelianGroup make(std::initializer_list<std::uint64_t> factor_orders) {
    return make(std::span<const std::uint64_t>(factor_orders.begin(), factor_orders.size()));
  }
  static FiniteAbelianGroup homocyclic(std::uint64_t k, unsigned n);
  // The trivial group; only used as a quotient in bound composition.
  static FiniteAbelianGroup trivial();

  const std::vector<std::uint64_t>& factors() const { return factors_; }
  const std::vector<std::uint64_t>& input_factors() const { return input_factors_; }
  const std::vector<PrimaryComponent>& primary_decomposition() const { return components_; }

  const BigInt& order() const { return order_; }
  const BigInt& exponent() const { return exponent_; }
  bool is_trivial() const { return factors_.empty(); }

  // |G| as a machine integer when |G| <= limit.
  std::optional<std::size_t> small_order(std::size_t limit = std::size_t(1) << 24) const;
  // exp(G) as a machine integer; throws Error(Domain) when it does not fit.
  std::uint64_t small_exponent() const;

  std::optional<HomocyclicShape> homocyclic_shape() const;
  // (p, n) when the group is (Z_p)^n.
  std::optional<HomocyclicShape> elementary_shape() const;

  std::string to_string() const;

  GroupElement zero() const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement scalar_multiple(const GroupElement& a, std::int64_t c) const;
  std::uint64_t element_order(const GroupElement& a) const;
  bool contains(const GroupElement& a) const;

  // Calls `visit` for every element in lexicographic coordinate order.
  void enumerate_elements(const std::function<void(const GroupElement&)>& visit) const;

  // Interprets residues given against input_factors(); each residue is reduced.
  GroupElement from_input_coords(std::span<const std::int64_t> residues) const;
  // Interprets residues given against factors(); each residue is reduced.
  GroupElement from_canonical_coords(std::span<const std::int64_t> residues) const;

  // Mixed-radix index with the first factor most significant. Index order
  // coincides with lexicographic coordinate order; zero has index 0.
  std::size_t index_of(const GroupElement& a) const;
  GroupElement element_at(std::size_t index) const;

  bool operator==(const FiniteAbelianGroup& other) const { return factors_ == other.factors_; }

 private:
  void check(const GroupElement& a) const;

  std::vector<std::uint64_t> factors_;
  std::vector<std::uint64_t> input_factors_;
  // For input factor i: the canonical positions its CRT pieces land on.
  std::vector<std::vector<std::size_t>> input_map_;
  std::vector<PrimaryComponent> components_;
  BigInt order_ = 1;
  BigInt exponent_ = 1;
};

// Grammar: factor ('x' factor)*, factor := 'Z' <k> ['^' <n>]; case-insensitive.
// Throws Error(Parse) or Error(InvalidOrder).
FiniteAbelianGroup parse_group(std::string_view spec);

// Renders coordinates as "a,b,c".
std::string format_element(const GroupElement& e);

}  // namespace zsum
