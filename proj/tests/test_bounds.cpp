#include <doctest.h>

#include "zsum/bounds.hpp"
#include "zsum/errors.hpp"

using namespace zsum;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Parse;
}

std::set<std::string> keys(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("slice-rank binomial form") {
    CHECK(slice_rank_binomial_bound(3, 3).value == 61);
    CHECK(slice_rank_binomial_bound(2, 1).value == 3);
    CHECK(slice_rank_binomial_bound(5, 2).value == 61);
    auto b = slice_rank_binomial_bound(3, 3);
    CHECK(b.direction == Direction::Upper);
    CHECK(b.assumptions == keys({"Z3^3"}));
    CHECK(code_of([] { slice_rank_binomial_bound(9, 2); }) == ErrorCode::InvalidPrime);
  }

  TEST_CASE("entropy form") {
    CHECK(slice_rank_entropy_bound(3, 3).value == 58);
    CHECK(slice_rank_entropy_bound(2, 1).value == 3);
    const auto b = entropy_base(3, 128);
    CHECK(b.lower_double() > 3.069);
    CHECK(b.upper_double() < 3.071);
  }

  TEST_CASE("central binomial form") {
    CHECK(central_binomial_bound(3, 3).value == 121);
    CHECK(central_binomial_bound(2, 1).value == 5);
    CHECK(central_binomial_bound(5, 2).value == 121);
  }

  TEST_CASE("prime power and odd modulus") {
    CHECK(prime_power_bound(9, 2).value == 145);
    CHECK(prime_power_bound(3, 1).value == 13);
    CHECK(prime_power_bound(27, 1).value == 157);
    CHECK(prime_power_bound(9, 2).assumptions == keys({"Z3^2"}));
    CHECK(code_of([] { prime_power_bound(8, 2); }) == ErrorCode::Domain);
    CHECK(code_of([] { prime_power_bound(15, 2); }) == ErrorCode::Domain);

    CHECK(odd_modulus_bound(15, 3).value == 4201);
    CHECK(odd_modulus_bound(9, 2).value == 145);
    CHECK(odd_modulus_bound(3, 1).value == 13);
    CHECK(odd_modulus_bound(15, 3).assumptions == keys({"Z3^3", "Z5^3"}));
    CHECK(code_of([] { odd_modulus_bound(6, 2); }) == ErrorCode::Domain);
  }

  TEST_CASE("prime power and odd modulus agree on prime powers") {
    for (std::uint64_t q : {3, 5, 7, 9, 25, 27, 49, 81, 121, 125})
      for (unsigned n = 1; n <= 6; ++n) CHECK(prime_power_bound(q, n).value == odd_modulus_bound(q, n).value);
  }

  TEST_CASE("primary-sum bound") {
    CHECK(primary_sum_bound(parse_group("Z6^2")).value == 188);
    CHECK(primary_sum_bound(parse_group("Z3^2")).value == 55);
    CHECK(primary_sum_bound(parse_group("Z2")).value == 9);
    CHECK(primary_sum_bound(parse_group("Z6^2")).assumptions == keys({"Z2^2", "Z3^2"}));
    CHECK(code_of([] { primary_sum_bound(FiniteAbelianGroup::trivial()); }) == ErrorCode::Domain);
  }

  TEST_CASE("rank-3 linear upper bound") {
    CHECK(rank3_linear_upper(15, Quantity::S).value == 4201);
    CHECK(rank3_linear_upper(3, Quantity::S).value == 601);
    CHECK(rank3_linear_upper(3, Quantity::Eta).value == 599);
    CHECK(rank3_linear_upper(15, Quantity::S).assumptions.empty());
    CHECK(code_of([] { rank3_linear_upper(21, Quantity::S); }) == ErrorCode::Domain);
    CHECK(code_of([] { rank3_linear_upper(1, Quantity::S); }) == ErrorCode::Domain);
    // coincides with the odd-modulus bound exactly when both 3 and 5 divide k
    for (std::uint64_t k : {3, 5, 9, 15, 25, 27, 45, 75, 135, 225, 243, 375}) {
      const auto linear = rank3_linear_upper(k, Quantity::S).value;
      const auto odd = odd_modulus_bound(k, 3).value;
      if (k % 15 == 0) CHECK(linear == odd);
      else CHECK(odd <= linear);
    }
  }

  TEST_CASE("classical bounds") {
    CHECK(harborth_lower(3, 2).value == 9);
    CHECK(harborth_upper(3, 2).value == 19);
    auto [lo, hi] = harborth_exact_pow2(4, 2);
    CHECK(lo.value == 13);
    CHECK(hi.value == 13);
    CHECK(lo.direction == Direction::Lower);
    CHECK(hi.direction == Direction::Upper);
    CHECK(code_of([] { harborth_exact_pow2(6, 2); }) == ErrorCode::Domain);
    CHECK(harborth_upper(10, 30).value == BigInt(9) * pow_big(10, 30) + 1);

    CHECK(elsholtz_lower(3, 3).value == 19);
    CHECK(elsholtz_lower(3, 1).value == 5);
    CHECK(elsholtz_lower(5, 6).value == 325);
    CHECK(code_of([] { elsholtz_lower(4, 3); }) == ErrorCode::Domain);

    CHECK(rank3_lower(3, Quantity::S).value == 19);
    CHECK(rank3_lower(3, Quantity::Eta).value == 17);
    CHECK(rank4_lower(3, Quantity::S).value == 41);
    CHECK(rank4_lower(3, Quantity::Eta).value == 39);
    CHECK(code_of([] { rank3_lower(4, Quantity::S); }) == ErrorCode::Domain);
    CHECK(harborth_lower(3, 2).assumptions.empty());
  }

  TEST_CASE("subgroup composition") {
    auto h = harborth_lower(3, 2);  // value 9, but a Lower bound
    h.direction = Direction::Upper;
    auto z = compose_subgroup(h, h, 3, parse_group("Z9^2"));
    CHECK(z.value == 33);
    auto two = harborth_upper(2, 2);
    CHECK(two.value == 5);
    CHECK(compose_subgroup(two, two, 2, parse_group("Z4^2")).value == 13);
    auto one = two;
    one.value = 1;
    CHECK(compose_subgroup(two, one, 1, parse_group("Z2^2")).value == two.value);
    CHECK(code_of([] { compose_subgroup(harborth_lower(3, 2), harborth_upper(3, 2), 3, parse_group("Z9^2")); }) ==
          ErrorCode::Direction);
    auto with_assumption = compose_subgroup(central_binomial_bound(3, 2), slice_rank_binomial_bound(5, 2), 5,
                                            parse_group("Z15^2"));
    CHECK(with_assumption.assumptions == keys({"Z3^2", "Z5^2"}));
  }

  TEST_CASE("primary composition") {
    auto z2 = harborth_upper(2, 2);
    auto z3 = harborth_upper(3, 2);
    z3.value = 9;
    z3.derivation.value = 9;
    CHECK(compose_primary(parse_group("Z6^2"), {{2, z2}, {3, z3}}).value == 56);
    CHECK(compose_primary(parse_group("Z3^2"), {{3, z3}}).value == 13);
    auto c = harborth_upper(2, 1);
    CHECK(c.value == 3);
    CHECK(compose_primary(parse_group("Z2"), {{2, c}}).value == 5);
    CHECK(code_of([&] { compose_primary(parse_group("Z6^2"), {{2, z2}}); }) == ErrorCode::IncompleteInput);
    CHECK(code_of([&] { compose_primary(parse_group("Z6^2"), {{2, z2}, {3, harborth_upper(3, 3)}}); }) ==
          ErrorCode::IncompleteInput);
  }

  TEST_CASE("binomial entropy inequality") {
    auto a = sondow_zudilin(2, Rational(1));
    REQUIRE(a.lhs);
    CHECK(*a.lhs == 6);
    CHECK(a.rhs_upper == doctest::Approx(16));
    CHECK(a.holds);
    auto b = sondow_zudilin(1, Rational(1));
    CHECK(*b.lhs == 2);
    CHECK(b.rhs_upper == doctest::Approx(4));
    auto c = sondow_zudilin(3, Rational(2));
    CHECK(*c.lhs == 84);
    CHECK(c.rhs_upper == doctest::Approx(307.546875));
    auto d = sondow_zudilin(3, Rational(1, 2));
    CHECK_FALSE(d.lhs);
    CHECK(d.rhs_upper > 0);
    CHECK(code_of([] { sondow_zudilin(2, Rational(0)); }) == ErrorCode::Domain);
    for (std::uint64_t m = 1; m <= 20; ++m)
      for (int r = 1; r <= 5; ++r) CHECK(sondow_zudilin(m, Rational(r)).holds);
  }

  TEST_CASE("policies") {
    CHECK(parse_policy("none") == PropertyDPolicy::None);
    CHECK(parse_policy("Registry-Only") == PropertyDPolicy::RegistryOnly);
    CHECK(parse_policy("assume_all") == PropertyDPolicy::AssumeAll);
    CHECK(code_of([] { parse_policy("maybe"); }) == ErrorCode::Parse);
    CHECK(assumptions_granted({}, PropertyDPolicy::None));
    CHECK_FALSE(assumptions_granted(keys({"Z3^2"}), PropertyDPolicy::None));
    CHECK(assumptions_granted(keys({"Z3^2"}), PropertyDPolicy::RegistryOnly));
    CHECK_FALSE(assumptions_granted(keys({"Z11^3"}), PropertyDPolicy::RegistryOnly));
    CHECK(assumptions_granted(keys({"Z11^3"}), PropertyDPolicy::AssumeAll));
  }

  TEST_CASE("best bounds") {
    auto z32 = best_bounds(parse_group("Z3^2"), Quantity::S, PropertyDPolicy::RegistryOnly);
    REQUIRE(z32.best_lower);
    REQUIRE(z32.best_upper);
    CHECK(z32.best_lower->value >= 9);
    CHECK(z32.best_upper->value <= 19);

    for (unsigned n = 1; n <= 6; ++n)
      for (auto policy : {PropertyDPolicy::None, PropertyDPolicy::RegistryOnly, PropertyDPolicy::AssumeAll}) {
        auto b = best_bounds(FiniteAbelianGroup::homocyclic(2, n), Quantity::S, policy);
        CHECK(b.best_lower->value == pow_big(2, n) + 1);
        CHECK(b.best_upper->value == pow_big(2, n) + 1);
      }

    auto z15 = best_bounds(parse_group("Z15^3"), Quantity::S, PropertyDPolicy::RegistryOnly);
    CHECK(z15.best_upper->value <= 4201);
    bool has_linear = false;
    for (const auto& b : z15.all) has_linear |= b.derivation.rule == "rank3_linear_upper" && b.value == 4201;
    CHECK(has_linear);

    auto eta = best_bounds(parse_group("Z3^3"), Quantity::Eta, PropertyDPolicy::RegistryOnly);
    CHECK(eta.best_lower->value == 17);
    CHECK(eta.best_upper->value == 599);

    CHECK(best_bounds(parse_group("Z4^2"), Quantity::Eta, PropertyDPolicy::AssumeAll).all.empty());
  }

  TEST_CASE("best bounds respect the policy and stay sorted") {
    for (const char* spec : {"Z3^2", "Z6^2", "Z4xZ2", "Z11^3", "Z5^4", "Z12"}) {
      auto none = best_bounds(parse_group(spec), Quantity::S, PropertyDPolicy::None);
      auto all = best_bounds(parse_group(spec), Quantity::S, PropertyDPolicy::AssumeAll);
      CHECK(std::is_sorted(none.all.begin(), none.all.end(), [](const BoundValue& a, const BoundValue& b) {
        return a.derivation.rule < b.derivation.rule;
      }));
      for (std::size_t i = 0; i < none.all.size(); ++i) CHECK(none.granted[i] == none.all[i].assumptions.empty());
      if (none.best_upper) CHECK(none.best_upper->assumptions.empty());
      if (none.best_upper && all.best_upper) CHECK(all.best_upper->value <= none.best_upper->value);
    }
  }

  TEST_CASE("composition through the primary decomposition is offered") {
    auto b = best_bounds(parse_group("Z6^2"), Quantity::S, PropertyDPolicy::RegistryOnly);
    bool found = false;
    for (const auto& x : b.all)
      if (x.derivation.rule == "compose_primary") {
        found = true;
        CHECK(x.derivation.children.size() == 2);
      }
    CHECK(found);
    auto e = best_bounds(parse_group("Z5^2"), Quantity::S, PropertyDPolicy::RegistryOnly);
    for (const auto& x : e.all) CHECK(x.derivation.rule != "compose_primary");
  }

  TEST_CASE("upper bounds survive doubled precision") {
    for (std::uint64_t p : {2, 3, 5, 7, 11, 101})
      for (unsigned n : {1u, 2u, 5u, 17u, 40u}) {
        const auto v = slice_rank_entropy_bound(p, n).value;
        const auto hi = Interval(Rational(p - 1), 512) * pow(entropy_base(p, 512), static_cast<unsigned long>(n));
        CHECK(v == hi.floor_upper() + 1);
        CHECK(v == hi.floor_lower() + 1);
      }
  }
}
