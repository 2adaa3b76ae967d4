#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "zsum/bounds.hpp"
#include "zsum/cache.hpp"
#include "zsum/errors.hpp"
#include "zsum/property_d.hpp"
#include "zsum/search.hpp"
#include "zsum/symmetry.hpp"

using namespace zsum;

namespace {

SearchOptions serial() {
  SearchOptions o;
  o.execution = Execution::Serial;
  return o;
}

SearchOptions no_symmetry() {
  SearchOptions o;
  o.use_symmetry = false;
  return o;
}

bool avoids(const Sequence& s, Quantity q) {
  const auto e = s.group().small_exponent();
  return !find_zero_sum(s, q == Quantity::S ? LengthSpec::exactly(e) : LengthSpec::at_most(e));
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("exact values") {
    CHECK(exact_s(parse_group("Z2^2")).value == 5);
    CHECK(exact_s(parse_group("Z3")).value == 5);
    CHECK(exact_s(parse_group("Z3^2")).value == 9);
    CHECK(exact_eta(parse_group("Z3")).value == 3);
    CHECK(exact_eta(parse_group("Z2^2")).value == 4);
    CHECK(exact_eta(parse_group("Z3^2")).value == 7);
    CHECK(exact_s(parse_group("Z4xZ2")).value == 9);
    CHECK(exact_eta(parse_group("Z4xZ2")).value == 6);
  }

  TEST_CASE("outcome invariants") {
    for (const char* spec : {"Z2", "Z4", "Z6", "Z2^3", "Z3^2", "Z4xZ2", "Z9"}) {
      for (auto q : {Quantity::S, Quantity::Eta}) {
        auto g = parse_group(spec);
        auto out = exact_constant(g, q);
        REQUIRE(out.status == SearchStatus::Exact);
        REQUIRE(out.extremal_example);
        CHECK(out.extremal_example->length() == out.value - 1);
        CHECK(avoids(*out.extremal_example, q));
        CHECK_FALSE(out.extremal_sequences.empty());
        CHECK(std::is_sorted(out.extremal_sequences.begin(), out.extremal_sequences.end(),
                             [](const Sequence& a, const Sequence& b) { return a.elements() < b.elements(); }));
        for (const auto& s : out.extremal_sequences) {
          CHECK(s.length() == out.value - 1);
          CHECK(avoids(s, q));
          for (const auto& [e, m] : s.multiplicities()) CHECK(m < g.small_exponent());
        }
      }
    }
  }

  TEST_CASE("serial and parallel agree") {
    for (const char* spec : {"Z5", "Z7", "Z2^3", "Z3^2", "Z4xZ2", "Z4^2", "Z2^4"}) {
      for (auto q : {Quantity::S, Quantity::Eta}) {
        auto g = parse_group(spec);
        auto par = exact_constant(g, q);
        auto ser = exact_constant(g, q, serial());
        CHECK(par.status == ser.status);
        CHECK(par.value == ser.value);
        CHECK(par.extremal_sequences == ser.extremal_sequences);
        CHECK(par.nodes_explored == ser.nodes_explored);
      }
    }
  }

  TEST_CASE("symmetry reduction does not change the answer") {
    for (const char* spec : {"Z2", "Z3", "Z5", "Z6", "Z2^2", "Z2^3", "Z3^2", "Z4xZ2", "Z8"}) {
      for (auto q : {Quantity::S, Quantity::Eta}) {
        auto g = parse_group(spec);
        auto with = exact_constant(g, q);
        auto without = exact_constant(g, q, no_symmetry());
        CHECK(with.value == without.value);
        // orbit representatives are genuine extremal sequences
        for (const auto& s : with.extremal_sequences)
          CHECK(std::find(without.extremal_sequences.begin(), without.extremal_sequences.end(), s) !=
                without.extremal_sequences.end());
        CHECK(with.extremal_sequences.size() <= without.extremal_sequences.size());
      }
    }
  }

  TEST_CASE("orbits cover every extremal sequence") {
    // Every sequence found without symmetry is a translate of a linear image
    // of some representative; here checked for translations on cyclic groups.
    for (const char* spec : {"Z4", "Z5", "Z6"}) {
      auto g = parse_group(spec);
      auto reps = exact_s(g).extremal_sequences;
      auto all = exact_s(g, no_symmetry()).extremal_sequences;
      const auto k = g.small_exponent();
      for (const auto& s : all) {
        bool covered = false;
        g.enumerate_elements([&](const GroupElement& c) {
          for (std::uint64_t a = 1; a < k; ++a) {
            if (std::gcd(a, k) != 1) continue;
            Sequence img(g);
            for (const auto& [e, m] : s.multiplicities()) img.add(g.add(g.scalar_multiple(e, a), c), m);
            if (std::find(reps.begin(), reps.end(), img) != reps.end()) covered = true;
          }
        });
        CHECK(covered);
      }
    }
  }

  TEST_CASE("s is at least eta and sits inside the Harborth range") {
    for (const char* spec : {"Z2", "Z3", "Z4", "Z5", "Z2^2", "Z2^3", "Z3^2", "Z4^2"}) {
      auto g = parse_group(spec);
      const auto s = exact_s(g).value;
      CHECK(s >= exact_eta(g).value);
      auto shape = *g.homocyclic_shape();
      CHECK(harborth_lower(shape.k, shape.n).value <= s);
      CHECK(s <= harborth_upper(shape.k, shape.n).value);
    }
  }

  TEST_CASE("enumerate_extremal") {
    auto z3 = parse_group("Z3");
    auto four = enumerate_extremal(z3, 4);
    CHECK(four.complete);
    Sequence t(z3, {GroupElement{{0}}, GroupElement{{0}}, GroupElement{{1}}, GroupElement{{1}}});
    CHECK(std::find(four.sequences.begin(), four.sequences.end(), t) != four.sequences.end());
    CHECK(enumerate_extremal(z3, 5).sequences.empty());

    auto z2 = parse_group("Z2");
    auto one = enumerate_extremal(z2, 1, no_symmetry());
    CHECK(std::find(one.sequences.begin(), one.sequences.end(), Sequence(z2, {GroupElement{{1}}})) != one.sequences.end());
    CHECK(enumerate_extremal(z2, 1).sequences.size() == 1);

    try {
      enumerate_extremal(z3, 0);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Domain);
    }
  }

  TEST_CASE("budgets") {
    SearchOptions tiny;
    tiny.budget.max_nodes = 50;
    auto out = exact_s(parse_group("Z5^2"), tiny);
    CHECK(out.status == SearchStatus::LowerBoundOnly);
    CHECK(out.value <= 17);
    CHECK(out.value >= 1);

    SearchOptions quick;
    quick.budget.wall = std::chrono::milliseconds(1);
    quick.budget.max_nodes = ~std::uint64_t(0);
    auto slow = exact_s(parse_group("Z3^4"), quick);
    CHECK(slow.status != SearchStatus::Exact);

    auto huge = exact_s(parse_group("Z101^3"));
    CHECK(huge.status == SearchStatus::BudgetExhausted);
    CHECK(huge.value == 0);
  }

  TEST_CASE("symmetry groups") {
    auto s = build_symmetry(parse_group("Z3^2"), Quantity::S, true);
    CHECK(s.translations);
    CHECK(s.linear.size() == 48);
    CHECK(general_linear_order(3, 2) == 48);
    auto e = build_symmetry(parse_group("Z3^2"), Quantity::Eta, true);
    CHECK_FALSE(e.translations);
    auto off = build_symmetry(parse_group("Z3^2"), Quantity::S, false);
    CHECK(off.linear.size() == 1);
    CHECK_FALSE(off.translations);
    // every linear map is a bijection fixing zero
    for (const auto& m : s.linear) {
      CHECK(m[0] == 0);
      auto sorted = m;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
    }
  }

  TEST_CASE("Property D") {
    for (const char* spec : {"Z2", "Z3", "Z4", "Z5", "Z2^2", "Z3^2", "Z2^3"}) {
      auto v = check_property_d(parse_group(spec));
      CHECK_MESSAGE(v.status == PropertyDStatus::Holds, spec);
      CHECK_FALSE(v.extremal_sequences.empty());
    }
    try {
      check_property_d(parse_group("Z4xZ2"));
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Shape);
    }
    SearchOptions tiny;
    tiny.budget.max_nodes = 10;
    CHECK(check_property_d(parse_group("Z7^2"), tiny).status == PropertyDStatus::Unknown);
  }

  TEST_CASE("Property D registry") {
    auto r = known_property_d(parse_group("Z8^5"));
    CHECK(r.known);
    CHECK(r.citation.find("(i)") != std::string::npos);
    r = known_property_d(parse_group("Z25^3"));
    CHECK(r.citation.find("(v)") != std::string::npos);
    CHECK_FALSE(known_property_d(parse_group("Z7^4")).known);
    CHECK(known_property_d(parse_group("Z3")).citation.find("(iii)") != std::string::npos);
    CHECK(known_property_d(parse_group("Z4")).citation.find("(i)") != std::string::npos);
    CHECK(known_property_d(parse_group("Z3^5")).citation.find("(ii)") != std::string::npos);
    CHECK(known_property_d(parse_group("Z210^2")).known);
    CHECK_FALSE(known_property_d(parse_group("Z11^2")).known);
    CHECK(known_property_d(parse_group("Z27^3")).citation.find("(vi)") != std::string::npos);
    CHECK_FALSE(known_property_d(parse_group("Z15^3")).known);
    CHECK_FALSE(known_property_d(parse_group("Z4xZ2")).known);
  }

  TEST_CASE("cache round trip feeds Property D") {
    const auto path = std::filesystem::temp_directory_path() / "zsum_test_cache.json";
    std::filesystem::remove(path);
    auto g = parse_group("Z3^2");
    {
      ResultCache cache = ResultCache::load_or_empty(path);
      auto v = check_property_d(g, {}, &cache);
      CHECK(v.status == PropertyDStatus::Holds);
      CHECK_FALSE(v.from_cache);
      cache.record(g, exact_eta(g));
      cache.save(path);
    }
    auto cache = ResultCache::load(path);
    REQUIRE(cache.find(g));
    CHECK(cache.find(g)->s == 9);
    CHECK(cache.find(g)->eta == 7);
    auto v = check_property_d(g, {}, &cache);
    CHECK(v.from_cache);
    CHECK(v.status == PropertyDStatus::Holds);
    CHECK(v.s_value == 9);
    CHECK(ResultCache::from_json(cache.to_json()).to_json() == cache.to_json());
    std::filesystem::remove(path);
    CHECK_THROWS_AS(ResultCache::load(path), Error);
  }
}
