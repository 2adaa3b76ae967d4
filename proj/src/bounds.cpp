#include "zsum/bounds.hpp"

#include <functional>
#include <sstream>

#include "zsum/errors.hpp"
#include "zsum/property_d.hpp"

namespace zsum {

using nlohmann::ordered_json;

const char* to_string(Direction d) { return d == Direction::Lower ? "Lower" : "Upper"; }

const std::string& Derivation::input(const std::string& name) const {
  for (const auto& [k, v] : inputs)
    if (k == name) return v;
  throw Error(ErrorCode::Domain, "derivation '" + rule + "' has no input '" + name + "'");
}

namespace {

std::string str(const BigInt& v) { return v.str(); }
std::string str(std::uint64_t v) { return std::to_string(v); }

std::uint64_t in_u64(const Derivation& d, const std::string& name) { return std::stoull(d.input(name)); }

std::string property_d_key(std::uint64_t k, unsigned n) { return FiniteAbelianGroup::homocyclic(k, n).to_string(); }

void require_odd(std::uint64_t k, const char* what) {
  if (k < 3 || k % 2 == 0) throw Error(ErrorCode::Domain, std::string(what) + " needs an odd k >= 3, got " + std::to_string(k));
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
}

void require_rank(unsigned n) {
  if (n == 0) throw Error(ErrorCode::Domain, "rank n must be >= 1");
}

BoundValue make_bound(Quantity q, const FiniteAbelianGroup& g, Direction dir, Derivation d) {
  for (const auto& c : d.children) d.assumptions.insert(c.assumptions.begin(), c.assumptions.end());
  BoundValue b;
  b.quantity = q;
  b.group = g;
  b.direction = dir;
  b.value = d.value;
  b.assumptions = d.assumptions;
  b.derivation = std::move(d);
  return b;
}

// Integer part of an upper-rounded enclosure, refining precision until both
// endpoints agree on the floor.
BigInt stable_floor(const std::function<Interval(long)>& eval) {
  long prec = 128;
  Interval x = eval(prec);
  while (x.floor_lower() != x.floor_upper() && prec < 8192) {
    prec *= 2;
    x = eval(prec);
  }
  return x.floor_upper();
}

// ---- value formulas, shared by construction and replay ----

BigInt harborth_lower_value(std::uint64_t k, unsigned n) { return BigInt(k - 1) * pow_big(2, n) + 1; }
BigInt harborth_upper_value(std::uint64_t k, unsigned n) { return BigInt(k - 1) * pow_big(k, n) + 1; }

BigInt elsholtz_value(std::uint64_t k, unsigned n) {
  const unsigned t = n / 3;
  const Rational x(BigInt(k - 1) * pow_big(2, n) * pow_big(9, t), pow_big(8, t));
  return ceil_of(x) + 1;
}

BigInt rank3_lower_value(std::uint64_t k, Quantity q) { return q == Quantity::S ? BigInt(9 * k - 8) : BigInt(8 * k - 7); }
BigInt rank4_lower_value(std::uint64_t k, Quantity q) { return q == Quantity::S ? BigInt(20 * k - 19) : BigInt(19 * k - 18); }

BigInt slice_rank_binomial_value(std::uint64_t p, unsigned n) {
  return BigInt(p) * (p - 1) * binomial(n + n * (p - 1) / p, n) + 1;
}

Interval entropy_power(std::uint64_t p, unsigned n, long prec) {
  return Interval(Rational(p - 1), prec) * pow(entropy_base(p, prec), static_cast<unsigned long>(n));
}

BigInt slice_rank_entropy_value(std::uint64_t p, unsigned n) {
  return stable_floor([&](long prec) { return entropy_power(p, n, prec); }) + 1;
}

BigInt central_binomial_value(std::uint64_t p, unsigned n) { return BigInt(p) * (p - 1) * binomial(2 * n, n) + 1; }

BigInt prime_power_value(std::uint64_t p, std::uint64_t q, unsigned n) {
  return BigInt(p) * (q - 1) * binomial(2 * n, n) + 1;
}

BigInt odd_modulus_value(std::uint64_t k, unsigned n) { return BigInt(radical(k)) * (k - 1) * binomial(2 * n, n) + 1; }

BigInt primary_sum_value(const FiniteAbelianGroup& g) {
  Rational sum = 0;
  for (const auto& c : g.primary_decomposition()) {
    sum += Rational(BigInt(c.prime) * binomial(2 * c.rank, c.rank));
    sum += Rational(1, c.prime - 1);
  }
  return strict_upper(Rational(g.exponent()) * sum);
}

BigInt rank3_linear_value(std::uint64_t k, Quantity q) {
  return q == Quantity::S ? BigInt(300) * k - 299 : BigInt(299) * k - 298;
}

BigInt naslund_value(std::uint64_t k, unsigned n, const std::string& gamma_exact) {
  return stable_floor([&](long prec) {
    const Interval g = Interval::point_from_string(gamma_exact, prec);
    return Interval(Rational(k - 1), prec) * pow(g, static_cast<unsigned long>(n)) + Interval(Rational(1), prec);
  });
}

BigInt compose_subgroup_value(std::uint64_t exp_q, const BigInt& s_h, const BigInt& s_q) {
  return BigInt(exp_q) * (s_h - 1) + s_q;
}

BigInt compose_primary_value(const BigInt& exponent, const std::vector<std::uint64_t>& primes,
                             const std::vector<BigInt>& values) {
  Rational sum = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) sum += Rational(values[i], BigInt(primes[i] - 1));
  return strict_upper(Rational(exponent) * sum);
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
  return out;
}

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

Quantity in_quantity(const Derivation& d) { return parse_quantity(d.input("quantity")); }

using Evaluator = std::function<BigInt(const Derivation&, const std::vector<BigInt>&)>;

const std::map<std::string, Evaluator>& evaluators() {
  static const std::map<std::string, Evaluator> table = {
      {"harborth_lower", [](const Derivation& d, auto&) {
         return harborth_lower_value(in_u64(d, "k"), static_cast<unsigned>(in_u64(d, "n")));
       }},
      {"harborth_upper", [](const Derivation& d, auto&) {
         return harborth_upper_value(in_u64(d, "k"), static_cast<unsigned>(in_u64(d, "n")));
       }},
      {"harborth_exact_pow2", [](const Derivation& d, auto&) {
         return harborth_lower_value(in_u64(d, "k"), static_cast<unsigned>(in_u64(d, "n")));
       }},
      {"elsholtz_lower", [](const Derivation& d, auto&) {
         return elsholtz_value(in_u64(d, "k"), static_cast<unsigned>(in_u64(d, "n")));
       }},
      {"rank3_lower", [](const Derivation& d, auto&) { return rank3_lower_value(in_u64(d, "k"), in_quantity(d)); }},
      {"rank4_lower", [](const Derivation& d, auto&) { return rank4_lower_value(in_u64(d, "k"), in_quantity(d)); }},
      {"slice_rank_binomial", [](const Derivation& d, auto&) {
         return slice_rank_binomial_value(in_u64(d, "p"), static_cast<unsigned>(in_u64(d, "n")));
       }},
      {"slice_rank_entropy", [](const Derivation& d, auto&) {
         return slice_rank_entropy_value(in_u64(d, "p"), static_cast<unsigned>(in_u64(d, "n")));
       }},
      {"central_binomial", [](const Derivation& d, auto&) {
         return central_binomial_value(in_u64(d, "p"), static_cast<unsigned>(in_u64(d, "n")));
       }},
      {"prime_power", [](const Derivation& d, auto&) {
         return prime_power_value(in_u64(d, "p"), in_u64(d, "q"), static_cast<unsigned>(in_u64(d, "n")));
       }},
      {"odd_modulus", [](const Derivation& d, auto&) {
         return odd_modulus_value(in_u64(d, "k"), static_cast<unsigned>(in_u64(d, "n")));
       }},
      {"primary_sum", [](const Derivation& d, auto&) { return primary_sum_value(parse_group(d.input("group"))); }},
      {"rank3_linear_upper", [](const Derivation& d, auto&) { return rank3_linear_value(in_u64(d, "k"), in_quantity(d)); }},
      {"naslund", [](const Derivation& d, auto&) {
         return naslund_value(in_u64(d, "k"), static_cast<unsigned>(in_u64(d, "n")), d.input("gamma_upper"));
       }},
      {"compose_subgroup", [](const Derivation& d, const std::vector<BigInt>& ch) {
         if (ch.size() != 2) throw Error(ErrorCode::Domain, "compose_subgroup needs two children");
         return compose_subgroup_value(in_u64(d, "exp_quotient"), ch[0], ch[1]);
       }},
      {"compose_primary", [](const Derivation& d, const std::vector<BigInt>& ch) {
         const auto primes = parse_list(d.input("primes"));
         if (ch.size() != primes.size()) throw Error(ErrorCode::Domain, "compose_primary child count mismatch");
         return compose_primary_value(BigInt(d.input("exponent")), primes, ch);
       }},
  };
  return table;
}

BigInt json_big(const ordered_json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  return BigInt(j.get<std::int64_t>());
}

ordered_json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

Derivation leaf(std::string rule, std::string citation, std::vector<std::pair<std::string, std::string>> inputs,
                BigInt value) {
  Derivation d;
  d.rule = std::move(rule);
  d.citation = std::move(citation);
  d.inputs = std::move(inputs);
  d.value = std::move(value);
  return d;
}

}  // namespace

BigInt replay(const Derivation& d) {
  std::vector<BigInt> child_values;
  for (const auto& c : d.children) child_values.push_back(replay(c));
  const auto& table = evaluators();
  auto it = table.find(d.rule);
  if (it == table.end()) throw Error(ErrorCode::Domain, "unknown rule '" + d.rule + "'");
  const BigInt v = it->second(d, child_values);
  if (v != d.value)
    throw Error(ErrorCode::Domain, "replay of '" + d.rule + "' gives " + v.str() + ", recorded " + d.value.str());
  // Provenance children must support the stated value.
  if (d.rule == "prime_power" && !child_values.empty() && child_values.front() != v)
    throw Error(ErrorCode::Domain, "prime_power composition chain does not reproduce the closed form");
  if (d.rule == "rank3_linear_upper" && !child_values.empty() && child_values.front() > v)
    throw Error(ErrorCode::Domain, "rank3_linear_upper is tighter than its supporting bound");
  return v;
}

ordered_json to_json(const Derivation& d) {
  ordered_json j;
  j["rule"] = d.rule;
  j["citation"] = d.citation;
  ordered_json inputs = ordered_json::object();
  for (const auto& [k, v] : d.inputs) inputs[k] = v;
  j["inputs"] = std::move(inputs);
  j["value"] = big_json(d.value);
  j["assumptions"] = ordered_json::array();
  for (const auto& a : d.assumptions) j["assumptions"].push_back("PropertyD(" + a + ")");
  j["notes"] = d.notes;
  j["children"] = ordered_json::array();
  for (const auto& c : d.children) j["children"].push_back(to_json(c));
  return j;
}

Derivation derivation_from_json(const ordered_json& j) {
  Derivation d;
  try {
    d.rule = j.at("rule").get<std::string>();
    d.citation = j.at("citation").get<std::string>();
    for (const auto& [k, v] : j.at("inputs").items()) d.inputs.emplace_back(k, v.get<std::string>());
    d.value = json_big(j.at("value"));
    for (const auto& a : j.at("assumptions")) {
      auto s = a.get<std::string>();
      const std::string prefix = "PropertyD(";
      if (s.rfind(prefix, 0) == 0 && s.back() == ')') s = s.substr(prefix.size(), s.size() - prefix.size() - 1);
      d.assumptions.insert(s);
    }
    d.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& c : j.at("children")) d.children.push_back(derivation_from_json(c));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("derivation: ") + e.what());
  }
  return d;
}

ordered_json to_json(const BoundValue& b) {
  ordered_json j;
  j["quantity"] = to_string(b.quantity);
  j["group"] = b.group.to_string();
  j["direction"] = to_string(b.direction);
  j["value"] = big_json(b.value);
  j["assumptions"] = ordered_json::array();
  for (const auto& a : b.assumptions) j["assumptions"].push_back("PropertyD(" + a + ")");
  j["derivation"] = to_json(b.derivation);
  return j;
}

BoundValue bound_from_json(const ordered_json& j) {
  BoundValue b;
  try {
    b.quantity = parse_quantity(j.at("quantity").get<std::string>());
    const auto g = j.at("group").get<std::string>();
    b.group = g == "Z1" ? FiniteAbelianGroup::trivial() : parse_group(g);
    const auto dir = j.at("direction").get<std::string>();
    if (dir != "Lower" && dir != "Upper") throw Error(ErrorCode::Parse, "bad direction '" + dir + "'");
    b.direction = dir == "Lower" ? Direction::Lower : Direction::Upper;
    b.value = json_big(j.at("value"));
    b.derivation = derivation_from_json(j.at("derivation"));
    b.assumptions = b.derivation.assumptions;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("bound: ") + e.what());
  }
  return b;
}

// ---- closed forms ----

BoundValue harborth_lower(std::uint64_t k, unsigned n) {
  if (k < 2) throw Error(ErrorCode::Domain, "k must be >= 2");
  require_rank(n);
  return make_bound(Quantity::S, FiniteAbelianGroup::homocyclic(k, n), Direction::Lower,
                    leaf("harborth_lower", "Harborth: (k-1)2^n + 1 <= s((Z_k)^n)", {{"k", str(k)}, {"n", str(n)}},
                         harborth_lower_value(k, n)));
}

BoundValue harborth_upper(std::uint64_t k, unsigned n) {
  if (k < 2) throw Error(ErrorCode::Domain, "k must be >= 2");
  require_rank(n);
  return make_bound(Quantity::S, FiniteAbelianGroup::homocyclic(k, n), Direction::Upper,
                    leaf("harborth_upper", "Harborth: s((Z_k)^n) <= (k-1)k^n + 1", {{"k", str(k)}, {"n", str(n)}},
                         harborth_upper_value(k, n)));
}

std::pair<BoundValue, BoundValue> harborth_exact_pow2(std::uint64_t k, unsigned n) {
  if (prime_power_base(k) != 2) throw Error(ErrorCode::Domain, std::to_string(k) + " is not a power of 2");
  require_rank(n);
  auto d = leaf("harborth_exact_pow2", "Harborth: s((Z_k)^n) = (k-1)2^n + 1 for k = 2^a", {{"k", str(k)}, {"n", str(n)}},
                harborth_lower_value(k, n));
  d.notes.push_back("known exact value, emitted as matching lower and upper bounds");
  const auto g = FiniteAbelianGroup::homocyclic(k, n);
  return {make_bound(Quantity::S, g, Direction::Lower, d), make_bound(Quantity::S, g, Direction::Upper, d)};
}

BoundValue elsholtz_lower(std::uint64_t k, unsigned n) {
  require_odd(k, "elsholtz_lower");
  require_rank(n);
  auto d = leaf("elsholtz_lower", "Elsholtz: s((Z_k)^n) >= 1.125^floor(n/3) (k-1)2^n + 1, k odd",
                {{"k", str(k)}, {"n", str(n)}}, elsholtz_value(k, n));
  d.notes.push_back("evaluated exactly over the rationals; ceiling taken before adding 1");
  return make_bound(Quantity::S, FiniteAbelianGroup::homocyclic(k, n), Direction::Lower, std::move(d));
}

BoundValue rank3_lower(std::uint64_t k, Quantity q) {
  if (k % 2 == 0 || k < 3) throw Error(ErrorCode::Domain, "rank3_lower needs an odd k >= 3, got " + std::to_string(k));
  return make_bound(q, FiniteAbelianGroup::homocyclic(k, 3), Direction::Lower,
                    leaf("rank3_lower", "rank-3 constructions: eta((Z_k)^3) >= 8k-7, s((Z_k)^3) >= 9k-8, k odd",
                         {{"k", str(k)}, {"quantity", to_string(q)}}, rank3_lower_value(k, q)));
}

BoundValue rank4_lower(std::uint64_t k, Quantity q) {
  require_odd(k, "rank4_lower");
  return make_bound(q, FiniteAbelianGroup::homocyclic(k, 4), Direction::Lower,
                    leaf("rank4_lower", "rank-4 constructions: eta((Z_k)^4) >= 19k-18, s((Z_k)^4) >= 20k-19, k odd",
                         {{"k", str(k)}, {"quantity", to_string(q)}}, rank4_lower_value(k, q)));
}

BoundValue slice_rank_binomial_bound(std::uint64_t p, unsigned n) {
  require_prime(p);
  require_rank(n);
  auto d = leaf("slice_rank_binomial",
                "slice-rank cap on the set underlying a Property D extremal sequence: s((Z_p)^n) <= p(p-1) C(n(2p-1)/p, n) + 1",
                {{"p", str(p)}, {"n", str(n)}, {"degree_cap", str(n * (p - 1) / p)}}, slice_rank_binomial_value(p, n));
  d.notes.push_back("binomial top n(2p-1)/p integerized as n + floor(n(p-1)/p), the exact range of the degree count");
  d.notes.push_back("the counting argument concludes with +1; the headline statement omits it");
  d.assumptions.insert(property_d_key(p, n));
  return make_bound(Quantity::S, FiniteAbelianGroup::homocyclic(p, n), Direction::Upper, std::move(d));
}

Interval entropy_base(std::uint64_t p, long precision) {
  const Interval base(Rational(2 * p - 1, p - 1), precision);
  const Interval expo(Rational(p - 1, p), precision);
  return pow(base, expo) * Interval(Rational(2 * p - 1, p), precision);
}

BoundValue slice_rank_entropy_bound(std::uint64_t p, unsigned n) {
  require_prime(p);
  require_rank(n);
  auto d = leaf("slice_rank_entropy",
                "slice-rank cap with the binomial entropy estimate and amplification: "
                "s((Z_p)^n) <= (p-1)((2 + 1/(p-1))^((p-1)/p)(2 - 1/p))^n + 1",
                {{"p", str(p)}, {"n", str(n)}, {"base_upper", entropy_base(p, 128).upper_exact()}},
                slice_rank_entropy_value(p, n));
  d.notes.push_back("interval evaluation, floor of the upper endpoint once both endpoints agree");
  d.assumptions.insert(property_d_key(p, n));
  return make_bound(Quantity::S, FiniteAbelianGroup::homocyclic(p, n), Direction::Upper, std::move(d));
}

BoundValue central_binomial_bound(std::uint64_t p, unsigned n) {
  require_prime(p);
  require_rank(n);
  auto d = leaf("central_binomial", "slice-rank cap relaxed to the central binomial: s((Z_p)^n) <= p(p-1) C(2n, n) + 1",
                {{"p", str(p)}, {"n", str(n)}}, central_binomial_value(p, n));
  d.assumptions.insert(property_d_key(p, n));
  return make_bound(Quantity::S, FiniteAbelianGroup::homocyclic(p, n), Direction::Upper, std::move(d));
}

BoundValue prime_power_bound(std::uint64_t q, unsigned n) {
  const auto p = prime_power_base(q);
  if (p == 0 || p == 2) throw Error(ErrorCode::Domain, std::to_string(q) + " is not an odd prime power");
  require_rank(n);

  // Composition chain Z_p^n < Z_{p^a}^n, one prime factor at a time.
  BoundValue chain = central_binomial_bound(p, n);
  for (std::uint64_t sub = p * p; sub <= q; sub *= p) {
    chain = compose_subgroup(central_binomial_bound(p, n), chain, sub / p, FiniteAbelianGroup::homocyclic(sub, n));
    if (sub > q / p) break;
  }

  auto d = leaf("prime_power", "subgroup composition over Z_p^n < Z_q^n: s((Z_q)^n) <= p(q-1) C(2n, n) + 1",
                {{"p", str(p)}, {"q", str(q)}, {"n", str(n)}}, prime_power_value(p, q, n));
  d.children.push_back(chain.derivation);
  return make_bound(Quantity::S, FiniteAbelianGroup::homocyclic(q, n), Direction::Upper, std::move(d));
}

BoundValue odd_modulus_bound(std::uint64_t k, unsigned n) {
  require_odd(k, "odd_modulus_bound");
  require_rank(n);
  auto d = leaf("odd_modulus", "subgroup composition over the prime factors of k: s((Z_k)^n) <= rad(k)(k-1) C(2n, n) + 1",
                {{"k", str(k)}, {"n", str(n)}, {"radical", str(radical(k))}}, odd_modulus_value(k, n));
  for (const auto& pp : factorize(k)) d.children.push_back(central_binomial_bound(pp.prime, n).derivation);
  return make_bound(Quantity::S, FiniteAbelianGroup::homocyclic(k, n), Direction::Upper, std::move(d));
}

BoundValue primary_sum_bound(const FiniteAbelianGroup& g) {
  if (g.is_trivial()) throw Error(ErrorCode::Domain, "primary_sum_bound needs a nontrivial group");
  std::vector<std::uint64_t> primes, ranks;
  for (const auto& c : g.primary_decomposition()) {
    primes.push_back(c.prime);
    ranks.push_back(c.rank);
  }
  auto d = leaf("primary_sum",
                "primary-decomposition composition with the central binomial cap: "
                "s(A) < exp(A)(sum_j p_j C(2n_j, n_j) + sum_j 1/(p_j - 1))",
                {{"group", g.to_string()}, {"exponent", str(g.exponent())}, {"primes", join(primes)}, {"ranks", join(ranks)}},
                primary_sum_value(g));
  d.notes.push_back("strict inequality integerized: X - 1 when X is an integer, floor(X) otherwise");
  for (const auto& c : g.primary_decomposition()) d.assumptions.insert(property_d_key(c.prime, c.rank));
  return make_bound(Quantity::S, g, Direction::Upper, std::move(d));
}

BoundValue rank3_linear_upper(std::uint64_t k, Quantity q) {
  auto f = factorize(k);
  const bool ok = k >= 3 && std::all_of(f.begin(), f.end(), [](const PrimePower& pp) { return pp.prime == 3 || pp.prime == 5; });
  if (!ok) throw Error(ErrorCode::Domain, std::to_string(k) + " is not of the form 3^a 5^b");
  auto d = leaf("rank3_linear_upper",
                q == Quantity::S ? "odd modulus bound at rank 3: s((Z_k)^3) <= 300k - 299, k = 3^a 5^b"
                                 : "stated companion: eta((Z_k)^3) <= 299k - 298, k = 3^a 5^b",
                {{"k", str(k)}, {"quantity", to_string(q)}}, rank3_linear_value(k, q));
  if (q == Quantity::S) {
    auto support = odd_modulus_bound(k, 3).derivation;
    for (const auto& pp : f) {
      const auto key = property_d_key(pp.prime, 3);
      const auto reg = known_property_d(FiniteAbelianGroup::homocyclic(pp.prime, 3));
      d.notes.push_back("PropertyD(" + key + ") discharged by registry " + reg.citation);
    }
    // The registry discharges every assumption of the supporting bound.
    std::function<void(Derivation&)> clear = [&](Derivation& n) {
      n.assumptions.clear();
      for (auto& c : n.children) clear(c);
    };
    clear(support);
    d.children.push_back(std::move(support));
  } else {
    d.notes.push_back("emitted as stated; no derivation from the s bound is certified");
  }
  return make_bound(q, FiniteAbelianGroup::homocyclic(k, 3), Direction::Upper, std::move(d));
}

BoundValue naslund_bound(std::uint64_t k, unsigned n, double tol) {
  if (k < 2) throw Error(ErrorCode::Domain, "k must be >= 2");
  require_rank(n);
  const auto q = largest_prime_power_divisor(k);
  const auto gamma = naslund_gamma(k, q, tol);
  auto d = leaf("naslund", "Naslund: s((Z_k)^n) <= (k-1) gamma_{k,q}^n + 1, q the largest prime power dividing k",
                {{"k", str(k)}, {"n", str(n)}, {"q", str(q)}, {"gamma_upper", gamma.gamma_upper_exact},
                 {"minimizer_x", gamma.minimizer_x == 1 ? std::string("1") : Interval::point(gamma.minimizer_x, 64).upper_exact()}},
                naslund_value(k, n, gamma.gamma_upper_exact));
  d.notes.push_back("uses the upper enclosure of gamma; floor of the upper-rounded value");
  d.assumptions.insert(property_d_key(k, n));
  return make_bound(Quantity::S, FiniteAbelianGroup::homocyclic(k, n), Direction::Upper, std::move(d));
}

BinomialEntropyCheck sondow_zudilin(std::uint64_t m, const Rational& r) {
  if (m == 0) throw Error(ErrorCode::Domain, "m must be >= 1");
  if (r <= 0) throw Error(ErrorCode::Domain, "r must be > 0");
  BinomialEntropyCheck out;
  const Rational top = (r + 1) * m;
  const long prec = 128;
  const Interval rr(r, prec), r1(r + 1, prec);
  const Interval per = pow(r1, r1) / pow(rr, rr);
  const Interval rhs = pow(per, static_cast<unsigned long>(m));
  out.rhs_upper = rhs.upper_double();
  if (boost::multiprecision::denominator(top) == 1) {
    out.lhs = binomial(boost::multiprecision::numerator(top).convert_to<std::uint64_t>(), m);
    out.holds = !rhs.upper_less_than(Interval(Rational(*out.lhs), prec));
  }
  return out;
}

// ---- composition ----

BoundValue compose_subgroup(const BoundValue& s_sub, const BoundValue& s_quotient, std::uint64_t exp_quotient,
                            const FiniteAbelianGroup& composed) {
  if (s_sub.direction != Direction::Upper || s_quotient.direction != Direction::Upper)
    throw Error(ErrorCode::Direction, "compose_subgroup needs upper bounds");
  if (exp_quotient == 0) throw Error(ErrorCode::Domain, "exp(G/H) must be >= 1");
  auto d = leaf("compose_subgroup", "s(G) <= exp(G/H)(s(H) - 1) + s(G/H) when exp(G) = exp(H) exp(G/H)",
                {{"subgroup", s_sub.group.to_string()}, {"quotient", s_quotient.group.to_string()},
                 {"exp_quotient", str(exp_quotient)}, {"composed", composed.to_string()}},
                compose_subgroup_value(exp_quotient, s_sub.value, s_quotient.value));
  d.notes.push_back("exponent split exp(G) = exp(H) exp(G/H) asserted by the caller");
  d.children.push_back(s_sub.derivation);
  d.children.push_back(s_quotient.derivation);
  return make_bound(Quantity::S, composed, Direction::Upper, std::move(d));
}

BoundValue compose_primary(const FiniteAbelianGroup& g, const std::map<std::uint64_t, BoundValue>& per_prime) {
  if (g.is_trivial()) throw Error(ErrorCode::Domain, "compose_primary needs a nontrivial group");
  std::vector<std::uint64_t> primes;
  std::vector<BigInt> values;
  auto d = leaf("compose_primary", "Fox-Sauermann: s(A) < exp(A) sum_j s((Z_{p_j})^{n_j}) / (p_j - 1)", {}, 0);
  for (const auto& c : g.primary_decomposition()) {
    auto it = per_prime.find(c.prime);
    if (it == per_prime.end())
      throw Error(ErrorCode::IncompleteInput, "no bound for prime " + std::to_string(c.prime));
    const auto& b = it->second;
    if (b.direction != Direction::Upper) throw Error(ErrorCode::Direction, "compose_primary needs upper bounds");
    if (b.group != FiniteAbelianGroup::homocyclic(c.prime, c.rank))
      throw Error(ErrorCode::IncompleteInput, "bound for prime " + std::to_string(c.prime) + " is on " +
                                                  b.group.to_string() + ", expected " +
                                                  FiniteAbelianGroup::homocyclic(c.prime, c.rank).to_string());
    primes.push_back(c.prime);
    values.push_back(b.value);
    d.children.push_back(b.derivation);
  }
  d.inputs = {{"group", g.to_string()}, {"exponent", str(g.exponent())}, {"primes", join(primes)}};
  d.value = compose_primary_value(g.exponent(), primes, values);
  d.notes.push_back("strict inequality integerized: X - 1 when X is an integer, floor(X) otherwise");
  return make_bound(Quantity::S, g, Direction::Upper, std::move(d));
}

}  // namespace zsum
