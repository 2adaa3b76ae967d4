#include <doctest.h>

#include "zsum/bounds.hpp"
#include "zsum/errors.hpp"
#include "zsum/oracle.hpp"

using namespace zsum;

TEST_SUITE("counting") {
  TEST_CASE("total degree counts") {
    CHECK(count_monomials_total(1, 5) == 6);
    CHECK(count_monomials_total(3, 5) == 56);
    CHECK(count_monomials_total(2, 0) == 1);
    CHECK(count_monomials_total(40, 40) == binomial(80, 40));
  }

  TEST_CASE("box-capped counts") {
    CHECK(count_monomials_box_capped({2, 2, 2}) == 6);
    CHECK(count_monomials_box_capped({1, 4, 0}) == 1);
    CHECK(count_monomials_box_capped({2, 1, 1}) == 3);
    CHECK_THROWS_AS(count_monomials_box_capped({0, 1, 1}), Error);
  }

  TEST_CASE("box cap is inactive when it exceeds the total cap") {
    for (std::uint64_t n = 1; n <= 7; ++n)
      for (std::uint64_t c = 0; c <= 10; ++c)
        for (std::uint64_t d = 0; d <= 12; ++d) {
          const auto box = count_monomials_box_capped({n, d, c});
          const auto total = count_monomials_total(n, c);
          CHECK(box <= total);
          if (d >= c) CHECK(box == total);
        }
  }

  TEST_CASE("box-capped DP matches the oracle") {
    for (std::uint64_t n = 1; n <= 5; ++n)
      for (std::uint64_t d = 0; d <= 5; ++d)
        for (std::uint64_t c = 0; c <= 12; ++c)
          CHECK(count_monomials_box_capped({n, d, c}) == oracle_count_monomials({n, d, c}));
  }

  TEST_CASE("slice-rank cap") {
    auto a = slice_rank_cap(3, 3);
    CHECK(a.box_count == 10);
    CHECK(a.exact == 30);
    CHECK(a.binomial_form == 30);
    auto b = slice_rank_cap(2, 2);
    CHECK(b.box_count == 3);
    CHECK(b.exact == 6);
    try {
      slice_rank_cap(4, 2);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidPrime);
    }
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
      for (std::uint64_t n = 1; n <= 12; ++n) {
        auto c = slice_rank_cap(p, n);
        CHECK(c.exact <= c.binomial_form);
      }
  }
}
