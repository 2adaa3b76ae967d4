#include <doctest.h>

#include <random>
#include <set>

#include "zsum/errors.hpp"
#include "zsum/group.hpp"

using namespace zsum;

namespace {
GroupElement el(std::initializer_list<std::uint64_t> c) { return GroupElement{std::vector<std::uint64_t>(c)}; }
}

TEST_SUITE("group") {
  TEST_CASE("make_group canonicalizes") {
    auto g = FiniteAbelianGroup::make({3, 3});
    CHECK(g.order() == 9);
    CHECK(g.exponent() == 3);
    CHECK(FiniteAbelianGroup::make({6}) == FiniteAbelianGroup::make({2, 3}));
    CHECK(FiniteAbelianGroup::make({2, 4}) == FiniteAbelianGroup::make({4, 2}));

    auto h = FiniteAbelianGroup::make({4, 2});
    CHECK(h.order() == 8);
    CHECK(h.exponent() == 4);
    REQUIRE(h.primary_decomposition().size() == 1);
    CHECK(h.primary_decomposition()[0].prime == 2);
    CHECK(h.primary_decomposition()[0].rank == 2);
  }

  TEST_CASE("invalid orders are rejected") {
    CHECK_THROWS_AS(FiniteAbelianGroup::make({1, 3}), Error);
    try {
      FiniteAbelianGroup::make({0});
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidOrder);
    }
    CHECK_THROWS_AS(FiniteAbelianGroup::make(std::span<const std::uint64_t>{}), Error);
  }

  TEST_CASE("primary decomposition") {
    auto g = FiniteAbelianGroup::make({12, 2});
    const auto& pd = g.primary_decomposition();
    REQUIRE(pd.size() == 2);
    CHECK(pd[0] == PrimaryComponent{2, 2, {4, 2}});
    CHECK(pd[1] == PrimaryComponent{3, 1, {3}});

    auto z = parse_group("Z15^3").primary_decomposition();
    REQUIRE(z.size() == 2);
    CHECK(z[0].prime == 3);
    CHECK(z[0].rank == 3);
    CHECK(z[1].prime == 5);
    CHECK(z[1].rank == 3);

    CHECK(parse_group("Z3^2").primary_decomposition() == std::vector<PrimaryComponent>{{3, 2, {3, 3}}});
  }

  TEST_CASE("element arithmetic") {
    auto g = parse_group("Z3^2");
    CHECK(g.add(el({1, 2}), el({2, 2})) == el({0, 1}));
    CHECK(g.negate(el({0, 0})) == el({0, 0}));
    CHECK(g.negate(el({1, 2})) == el({2, 1}));
    CHECK(g.scalar_multiple(el({1, 2}), 2) == el({2, 1}));
    CHECK(g.scalar_multiple(el({1, 2}), -1) == el({2, 1}));
    CHECK(g.zero() == el({0, 0}));
    CHECK_THROWS_AS(g.add(el({1}), el({1, 1})), Error);
    try {
      g.add(el({3, 0}), el({0, 0}));
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GroupMismatch);
    }
  }

  TEST_CASE("enumeration and indexing") {
    std::set<GroupElement> seen;
    auto g = parse_group("Z2^3");
    g.enumerate_elements([&](const GroupElement& e) { seen.insert(e); });
    CHECK(seen.size() == 8);

    auto h = parse_group("Z4xZ6");
    std::size_t i = 0;
    h.enumerate_elements([&](const GroupElement& e) {
      CHECK(h.index_of(e) == i);
      CHECK(h.element_at(i) == e);
      ++i;
    });
    CHECK(i == 24);
    CHECK(h.index_of(h.zero()) == 0);
  }

  TEST_CASE("exponent equals the largest element order") {
    for (const char* spec : {"Z2", "Z6", "Z4xZ2", "Z3^2", "Z12xZ2", "Z2^4", "Z8xZ4", "Z15", "Z5xZ10", "Z16^2"}) {
      auto g = parse_group(spec);
      REQUIRE(g.small_order(256));
      std::uint64_t m = 0;
      BigInt total = 0;
      g.enumerate_elements([&](const GroupElement& e) {
        m = std::max(m, g.element_order(e));
        ++total;
      });
      CHECK(BigInt(m) == g.exponent());
      CHECK(total == g.order());
      BigInt prod = 1;
      for (const auto& c : g.primary_decomposition())
        for (auto o : c.orders) prod *= o;
      CHECK(prod == g.order());
      CHECK(g.order() % g.exponent() == 0);
    }
  }

  TEST_CASE("canonicalization is idempotent") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> order(2, 30), count(1, 4);
    for (int t = 0; t < 200; ++t) {
      std::vector<std::uint64_t> fs(count(rng));
      for (auto& f : fs) f = order(rng);
      auto g = FiniteAbelianGroup::make(fs);
      auto again = FiniteAbelianGroup::make(g.factors());
      CHECK(again == g);
      CHECK(again.factors() == g.factors());
      CHECK(parse_group(g.to_string()) == g);
      std::shuffle(fs.begin(), fs.end(), rng);
      CHECK(FiniteAbelianGroup::make(fs) == g);
    }
  }

  TEST_CASE("spec grammar") {
    CHECK(parse_group("z3^2") == FiniteAbelianGroup::homocyclic(3, 2));
    CHECK(parse_group("Z4xZ2").to_string() == "Z4xZ2");
    CHECK(parse_group("Z2xZ4").to_string() == "Z4xZ2");
    CHECK(parse_group("Z6^2").to_string() == "Z2^2xZ3^2");
    CHECK(parse_group("Z6^2").homocyclic_shape() == HomocyclicShape{6, 2});
    CHECK(parse_group("Z4xZ2").homocyclic_shape() == std::nullopt);
    CHECK(parse_group("Z5^3").elementary_shape() == HomocyclicShape{5, 3});
    CHECK(parse_group("Z9").elementary_shape() == std::nullopt);
    for (const char* bad : {"", "Z", "3^2", "Z3^", "Z3x", "Y3", "Z3^0", "Z-3"}) {
      try {
        parse_group(bad);
        FAIL("accepted " << bad);
      } catch (const Error& e) {
        CHECK((e.code() == ErrorCode::Parse || e.code() == ErrorCode::InvalidOrder));
      }
    }
    CHECK_THROWS_AS(parse_group("Z1"), Error);
  }

  TEST_CASE("input coordinates map through CRT") {
    auto g = parse_group("Z6");
    REQUIRE(g.factors() == std::vector<std::uint64_t>{2, 3});
    std::int64_t one[] = {1};
    CHECK(g.from_input_coords(one) == el({1, 1}));
    std::int64_t five[] = {5};
    CHECK(g.from_input_coords(five) == el({1, 2}));
    std::int64_t canon[] = {1, 2};
    CHECK(g.from_canonical_coords(canon) == el({1, 2}));
  }

  TEST_CASE("big exponents stay exact") {
    auto g = parse_group("Z1000003^3xZ999983");
    CHECK(g.order() == BigInt(1000003) * 1000003 * 1000003 * 999983);
    CHECK(g.exponent() == BigInt(1000003) * 999983);
  }
}
