#pragma once

#include <mpfr.h>

#include <string>

#include "zsum/numeric.hpp"

namespace zsum {

/// Closed interval with MPFR endpoints; every operation rounds the lower
/// endpoint down and the upper endpoint up, so the true value stays enclosed.
/// Only the operations the bound formulas need are provided; multiplication,
/// division, log and pow assume positive operands.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec);
  Interval(const Rational& value, mpfr_prec_t prec);
  // An exactly representable point, e.g. a double or a hex-float string.
  static Interval point(double value, mpfr_prec_t prec);
  static Interval point_from_string(const std::string& exact, mpfr_prec_t prec);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return prec_; }
  double lower_double() const;  // rounded down
  double upper_double() const;  // rounded up
  // Exact hex-float rendering of the upper endpoint.
  std::string upper_exact() const;
  Interval upper_point() const;

  BigInt floor_lower() const;
  BigInt floor_upper() const;
  BigInt ceil_lower() const;
  BigInt ceil_upper() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval log(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval pow(const Interval& base, const Interval& exponent);
  friend Interval pow(const Interval& base, unsigned long exponent);

  bool upper_less_than(const Interval& other) const;  // hi < other.lo

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace zsum
