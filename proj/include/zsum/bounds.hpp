#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zsum/group.hpp"
#include "zsum/interval.hpp"
#include "zsum/numeric.hpp"
#include "zsum/search.hpp"

namespace zsum {

enum class Direction { Lower, Upper };
const char* to_string(Direction d);

/// One node of a bound certificate. `inputs` keep insertion order; together
/// with the children's values they are everything replay() needs.
struct Derivation {
  std::string rule;
  std::string citation;
  std::vector<std::pair<std::string, std::string>> inputs;
  BigInt value;
  std::set<std::string> assumptions;  // canonical strings of groups assumed to have Property D
  std::vector<std::string> notes;
  std::vector<Derivation> children;

  const std::string& input(const std::string& name) const;
  bool operator==(const Derivation&) const = default;
};

struct BoundValue {
  Quantity quantity = Quantity::S;
  FiniteAbelianGroup group = FiniteAbelianGroup::trivial();
  Direction direction = Direction::Upper;
  BigInt value;
  std::set<std::string> assumptions;
  Derivation derivation;

  bool operator==(const BoundValue&) const = default;
};

// Re-evaluates every node bottom-up and returns the root value. Throws
// Error(Domain) naming the first node whose recorded value does not reproduce.
BigInt replay(const Derivation& d);

nlohmann::ordered_json to_json(const Derivation& d);
Derivation derivation_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const BoundValue& b);
BoundValue bound_from_json(const nlohmann::ordered_json& j);

// ---- monomial counting --------------------------------------------------

// Monomials in n variables of total degree <= k: C(n + k, n).
BigInt count_monomials_total(std::uint64_t n, std::uint64_t k);

struct MonomialConstraint {
  std::uint64_t n_vars = 1;
  std::uint64_t per_var_cap = 0;
  std::uint64_t total_cap = 0;
};

// Integer vectors with 0 <= a_i <= per_var_cap and sum <= total_cap, by a DP
// over variables and running total. Throws Error(Domain) for n_vars == 0.
BigInt count_monomials_box_capped(const MonomialConstraint& c);

struct SliceRankCap {
  BigInt box_count;      // exponents in [0, p-1], total <= floor(n(p-1)/p)
  BigInt exact;          // p * box_count
  BigInt binomial_form;  // p * C(n + floor(n(p-1)/p), n)
};
// Throws Error(InvalidPrime) when p is not prime.
SliceRankCap slice_rank_cap(std::uint64_t p, std::uint64_t n);

// ---- closed-form bounds on (Z_k)^n ----------------------------------------

BoundValue harborth_lower(std::uint64_t k, unsigned n);
BoundValue harborth_upper(std::uint64_t k, unsigned n);
// k = 2^a: lower and upper coincide. Throws Error(Domain) otherwise.
std::pair<BoundValue, BoundValue> harborth_exact_pow2(std::uint64_t k, unsigned n);
BoundValue elsholtz_lower(std::uint64_t k, unsigned n);
BoundValue rank3_lower(std::uint64_t k, Quantity q);
BoundValue rank4_lower(std::uint64_t k, Quantity q);

/// s((Z_p)^n) <= p(p-1) C(n + floor(n(p-1)/p), n) + 1 under Property D. The
/// top of the binomial is integerized by the floor of the degree cap.
BoundValue slice_rank_binomial_bound(std::uint64_t p, unsigned n);
/// s((Z_p)^n) <= floor((p-1) B^n) + 1 with B = (2 + 1/(p-1))^((p-1)/p) (2 - 1/p),
/// evaluated in interval arithmetic.
BoundValue slice_rank_entropy_bound(std::uint64_t p, unsigned n);
// Enclosure of B for a prime p.
Interval entropy_base(std::uint64_t p, long precision);
BoundValue central_binomial_bound(std::uint64_t p, unsigned n);
/// q = p^a odd: s((Z_q)^n) <= p(q-1) C(2n, n) + 1. The certificate carries the
/// subgroup composition chain Z_p^n < Z_q^n as provenance.
BoundValue prime_power_bound(std::uint64_t q, unsigned n);
/// k odd: s((Z_k)^n) <= rad(k)(k-1) C(2n, n) + 1.
BoundValue odd_modulus_bound(std::uint64_t k, unsigned n);
/// s(G) < exp(G) (sum_j p_j C(2n_j, n_j) + sum_j 1/(p_j - 1)), integerized
/// for a strict inequality.
BoundValue primary_sum_bound(const FiniteAbelianGroup& g);
/// k = 3^a 5^b: s((Z_k)^3) <= 300k - 299, eta((Z_k)^3) <= 299k - 298.
BoundValue rank3_linear_upper(std::uint64_t k, Quantity q);

// ---- optimized exponential base -------------------------------------------

struct GammaResult {
  std::uint64_t k = 0;
  std::uint64_t q = 0;
  double gamma_upper = 0;          // rounded up from the exact value below
  std::string gamma_upper_exact;   // hex float; a rigorous upper enclosure
  double minimizer_x = 1;          // 1 encodes the x -> 1 limit
  double tolerance = 0;
  bool used_dense_fallback = false;
};

/// Upper enclosure of (k/q) inf_{0<x<1} (1-x^q)/(1-x) x^(-(q-1)/k).
/// The x -> 1 limit k is always a candidate; the interior is bracketed on a
/// grid, refined by golden section and checked for unimodality, with a dense
/// scan as fallback. Throws Error(Domain) unless q is a prime power dividing k.
GammaResult naslund_gamma(std::uint64_t k, std::uint64_t q, double tol = 1e-9);
// Same minimization without the prime-power/divisibility checks.
GammaResult gamma_infimum(std::uint64_t k, std::uint64_t q, double tol = 1e-9);
// gamma_{q,q} / ((2^q - 1)/2^q * 2^((2q-1)/q)).
double naslund_asymptotic_ratio(std::uint64_t q);
/// s((Z_k)^n) <= floor((k-1) gamma^n + 1) with q the largest prime power
/// dividing k, using the upper enclosure of gamma.
BoundValue naslund_bound(std::uint64_t k, unsigned n, double tol = 1e-9);

struct BinomialEntropyCheck {
  std::optional<BigInt> lhs;  // C((r+1)m, m) when (r+1)m is an integer
  double rhs_upper = 0;       // ((r+1)^(r+1) / r^r)^m, rounded up
  bool holds = true;          // lhs <= rhs when lhs is available
};
// Throws Error(Domain) for r <= 0 or m == 0.
BinomialEntropyCheck sondow_zudilin(std::uint64_t m, const Rational& r);

// ---- composition ----------------------------------------------------------

/// s(G) <= exp(G/H)(s(H) - 1) + s(G/H). The caller vouches that
/// exp(G) = exp(H) exp(G/H). Throws Error(Direction) for non-Upper inputs.
BoundValue compose_subgroup(const BoundValue& s_sub, const BoundValue& s_quotient, std::uint64_t exp_quotient,
                            const FiniteAbelianGroup& composed);

/// s(G) < exp(G) sum_j s((Z_{p_j})^{n_j}) / (p_j - 1). Throws
/// Error(IncompleteInput) if a prime of G is missing or has the wrong rank.
BoundValue compose_primary(const FiniteAbelianGroup& g, const std::map<std::uint64_t, BoundValue>& per_prime);

// ---- aggregation ------------------------------------------------------------

enum class PropertyDPolicy { None, RegistryOnly, AssumeAll };
const char* to_string(PropertyDPolicy p);
PropertyDPolicy parse_policy(const std::string& text);

bool assumptions_granted(const std::set<std::string>& assumptions, PropertyDPolicy policy);

struct BoundSet {
  std::vector<BoundValue> all;  // sorted by rule name, then direction, then value
  std::vector<bool> granted;    // parallel to `all`
  std::optional<BoundValue> best_lower;
  std::optional<BoundValue> best_upper;
};

/// Every applicable rule for G and quantity q, plus the primary-decomposition
/// composition. Bounds whose Property D assumptions the policy does not grant
/// are listed but never chosen as best.
BoundSet best_bounds(const FiniteAbelianGroup& g, Quantity q, PropertyDPolicy policy, double tol = 1e-9);

}  // namespace zsum
