#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <vector>

namespace zsum {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

bool is_prime(std::uint64_t n);

// Prime factorization by trial division, primes ascending.
struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  std::uint64_t value;  // prime^exponent
};
std::vector<PrimePower> factorize(std::uint64_t n);

// Returns the base prime if n = p^a with a >= 1.
std::uint64_t prime_power_base(std::uint64_t n);

// Product of the distinct primes dividing n.
std::uint64_t radical(std::uint64_t n);

// Largest prime power p^{v_p(n)} over primes p | n.
std::uint64_t largest_prime_power_divisor(std::uint64_t n);

BigInt binomial(std::uint64_t top, std::uint64_t bottom);
BigInt pow_big(std::uint64_t base, unsigned exponent);

BigInt floor_of(const Rational& x);
BigInt ceil_of(const Rational& x);

// Integerization of a strict upper bound s < x: x - 1 when x is integral,
// floor(x) otherwise.
BigInt strict_upper(const Rational& x);

}  // namespace zsum
