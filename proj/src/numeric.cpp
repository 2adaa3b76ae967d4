#include "zsum/numeric.hpp"

#include "zsum/errors.hpp"

namespace zsum {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidOrder: return "invalid-order";
    case ErrorCode::GroupMismatch: return "group-mismatch";
    case ErrorCode::InvalidTarget: return "invalid-target";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::InvalidPrime: return "invalid-prime";
    case ErrorCode::Direction: return "direction";
    case ErrorCode::IncompleteInput: return "incomplete-input";
    case ErrorCode::OracleScale: return "oracle-scale";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

std::uint64_t prime_power_base(std::uint64_t n) {
  auto f = factorize(n);
  return f.size() == 1 ? f.front().prime : 0;
}

std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (const auto& pp : factorize(n)) r *= pp.prime;
  return r;
}

std::uint64_t largest_prime_power_divisor(std::uint64_t n) {
  std::uint64_t best = 1;
  for (const auto& pp : factorize(n)) best = std::max(best, pp.value);
  return best;
}

BigInt binomial(std::uint64_t top, std::uint64_t bottom) {
  if (bottom > top) return 0;
  bottom = std::min(bottom, top - bottom);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= bottom; ++i) {
    r *= top - bottom + i;
    r /= i;
  }
  return r;
}

BigInt pow_big(std::uint64_t base, unsigned exponent) {
  return boost::multiprecision::pow(BigInt(base), exponent);
}

BigInt floor_of(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& x) { return -floor_of(-x); }

BigInt strict_upper(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1) return boost::multiprecision::numerator(x) - 1;
  return floor_of(x);
}

}  // namespace zsum
