#include <doctest.h>

#include <random>

#include "zsum/errors.hpp"
#include "zsum/oracle.hpp"

using namespace zsum;

namespace {
Sequence cyclic_seq(std::uint64_t k, std::initializer_list<std::uint64_t> xs) {
  Sequence s(FiniteAbelianGroup::make({k}));
  for (auto x : xs) s.add(GroupElement{{x}});
  return s;
}
}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("oracle zero-sum examples") {
    CHECK(oracle_find_zero_sum(cyclic_seq(3, {1, 1, 1}), LengthSpec::exactly(3)));
    CHECK_FALSE(oracle_find_zero_sum(cyclic_seq(4, {1, 2}), LengthSpec::at_most(4)));
    auto w = oracle_find_zero_sum(cyclic_seq(4, {2, 2}), LengthSpec::at_most(4));
    REQUIRE(w);
    CHECK(w->length == 2);
  }

  TEST_CASE("oracle refuses large inputs") {
    Sequence s(FiniteAbelianGroup::make({3}));
    s.add(GroupElement{{1}}, 25);
    try {
      oracle_find_zero_sum(s, LengthSpec::exactly(3));
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OracleScale);
    }
    CHECK_THROWS_AS(oracle_exact_s(parse_group("Z11")), Error);
    CHECK_THROWS_AS(oracle_exact_s(parse_group("Z2^4")), Error);
    // Z7 has extremal length 12 > 10
    CHECK_THROWS_AS(oracle_exact_s(parse_group("Z7")), Error);
    CHECK_THROWS_AS(oracle_count_monomials({8, 9, 3}), Error);
    // refusal is a function of size only
    for (int i = 0; i < 3; ++i) CHECK_THROWS_AS(oracle_exact_s(parse_group("Z11")), Error);
  }

  TEST_CASE("oracle exact constants") {
    CHECK(oracle_exact_s(parse_group("Z2")) == 3);
    CHECK(oracle_exact_s(parse_group("Z3")) == 5);
    CHECK(oracle_exact_eta(parse_group("Z3")) == 3);
    CHECK(oracle_exact_eta(parse_group("Z2^2")) == 4);
    CHECK(oracle_exact_s(parse_group("Z2^2")) == 5);
  }

  TEST_CASE("oracle agrees with the search where both finish") {
    for (const char* spec : {"Z2", "Z3", "Z4", "Z5", "Z6", "Z2^2", "Z2^3", "Z4xZ2", "Z8", "Z9", "Z3^2"}) {
      auto g = parse_group(spec);
      for (auto q : {Quantity::S, Quantity::Eta}) {
        std::uint64_t expect = 0;
        try {
          expect = oracle_exact(g, q);
        } catch (const Error& e) {
          REQUIRE(e.code() == ErrorCode::OracleScale);
          continue;
        }
        CHECK_MESSAGE(exact_constant(g, q).value == expect, spec << " " << to_string(q));
      }
    }
  }

  TEST_CASE("oracle monomial counts") {
    CHECK(oracle_count_monomials({3, 2, 2}) == 10);
    CHECK(oracle_count_monomials({2, 1, 2}) == 4);
    CHECK(oracle_count_monomials({1, 0, 5}) == 1);
  }

  TEST_CASE("randomized DP/oracle equivalence") {
    std::mt19937_64 rng(2024);
    const char* groups[] = {"Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2^2", "Z3^2", "Z2^3", "Z4xZ2"};
    for (int t = 0; t < 1000; ++t) {
      auto g = parse_group(groups[rng() % std::size(groups)]);
      const auto n = *g.small_order();
      Sequence s(g);
      const auto len = 1 + rng() % 12;
      for (std::uint64_t i = 0; i < len; ++i) s.add(g.element_at(rng() % n));
      const auto e = g.small_exponent();
      const auto target = rng() % 2 ? LengthSpec::exactly(e) : LengthSpec::at_most(e);
      auto fast = find_zero_sum(s, target);
      auto slow = oracle_find_zero_sum(s, target);
      REQUIRE(fast.has_value() == slow.has_value());
      if (fast && target.kind == LengthSpec::Kind::AtMost) CHECK(fast->length == slow->length);
    }
  }
}
