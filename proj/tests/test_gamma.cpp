#include <doctest.h>

#include <cmath>

#include "zsum/bounds.hpp"
#include "zsum/errors.hpp"

using namespace zsum;

namespace {

double objective(double k, double q, double x) { return k / q * (1 - std::pow(x, q)) / (1 - x) * std::pow(x, -(q - 1) / k); }

double gamma33() {
  const double x = (-1 + std::sqrt(33.0)) / 8;
  return objective(3, 3, x);
}

}  // namespace

TEST_SUITE("gamma") {
  TEST_CASE("boundary infimum for q = 2") {
    auto g = naslund_gamma(2, 2);
    CHECK(g.gamma_upper == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g.minimizer_x == 1);
    CHECK(g.gamma_upper >= 2.0);
  }

  TEST_CASE("stationary point for q = 3") {
    auto g = naslund_gamma(3, 3);
    CHECK(std::abs(g.gamma_upper - gamma33()) < 1e-6);
    CHECK(g.gamma_upper >= gamma33() - 1e-12);
    CHECK(std::abs(g.minimizer_x - (-1 + std::sqrt(33.0)) / 8) < 1e-4);
    CHECK(4 * g.minimizer_x * g.minimizer_x + g.minimizer_x - 2 == doctest::Approx(0).epsilon(1e-6));
  }

  TEST_CASE("objective at the minimizer is within tolerance of the enclosure") {
    for (auto [k, q] : {std::pair<std::uint64_t, std::uint64_t>{6, 3}, {12, 4}, {10, 5}, {9, 9}, {30, 5}, {7, 7}}) {
      auto g = naslund_gamma(k, q);
      const double at = g.minimizer_x == 1 ? double(k) : objective(double(k), double(q), g.minimizer_x);
      CHECK(g.gamma_upper >= at - 1e-12);
      CHECK(g.gamma_upper - at < 1e-9);
      // no grid point does better
      for (int i = 1; i < 2000; ++i) CHECK(objective(double(k), double(q), i / 2000.0) >= g.gamma_upper - 1e-7);
    }
  }

  TEST_CASE("prime powers up to 64 stay below 4") {
    for (std::uint64_t q = 2; q <= 64; ++q) {
      if (prime_power_base(q) == 0) continue;
      CHECK(naslund_gamma(q, q).gamma_upper <= 4.0);
    }
  }

  TEST_CASE("domain checks") {
    CHECK_THROWS_AS(naslund_gamma(6, 4), Error);
    CHECK_THROWS_AS(naslund_gamma(12, 6), Error);
    CHECK_THROWS_AS(naslund_gamma(1, 1), Error);
    CHECK_NOTHROW(naslund_gamma(12, 4));
  }

  TEST_CASE("asymptotic ratio") {
    CHECK(naslund_asymptotic_ratio(2) == doctest::Approx(2.0 / (0.75 * std::pow(2.0, 1.5))));
    CHECK(std::abs(naslund_asymptotic_ratio(50) - 1) < 0.02);
    for (std::uint64_t q = 2; q <= 200; ++q) {
      const double r = naslund_asymptotic_ratio(q);
      CHECK(r >= 0.5);
      CHECK(r <= 2);
    }
  }

  TEST_CASE("Naslund bound") {
    for (unsigned n = 1; n <= 8; ++n) CHECK(naslund_bound(2, n).value == pow_big(2, n) + 1);
    CHECK(naslund_bound(3, 3).value == 42);
    CHECK(naslund_bound(4, 1).value >= 7);
    CHECK(naslund_bound(3, 3).assumptions == std::set<std::string>{"Z3^3"});
    CHECK(naslund_bound(12, 2).derivation.input("q") == "4");
  }

  TEST_CASE("entropy base tends to 4 from below") {
    double prev = 0;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 101, 1009, 9973}) {
      const double b = entropy_base(p, 128).upper_double();
      CHECK(b < 4);
      CHECK(b > prev);
      prev = b;
    }
    CHECK(prev > 3.99);
  }
}
