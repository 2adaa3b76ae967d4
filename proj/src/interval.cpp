#include "zsum/interval.hpp"

#include <algorithm>
#include <stdexcept>

#include "zsum/errors.hpp"

namespace zsum {

namespace {

BigInt to_big(const mpfr_t x, mpfr_rnd_t rnd) {
  BigInt out;
  mpfr_get_z(out.backend().data(), x, rnd);
  return out;
}

mpfr_prec_t common(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& value, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_q(lo_, value.backend().data(), MPFR_RNDD);
  mpfr_set_q(hi_, value.backend().data(), MPFR_RNDU);
}

Interval Interval::point(double value, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_, value, MPFR_RNDD);
  mpfr_set_d(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::point_from_string(const std::string& exact, mpfr_prec_t prec) {
  Interval r(prec);
  if (mpfr_set_str(r.lo_, exact.c_str(), 0, MPFR_RNDD) != 0 || mpfr_set_str(r.hi_, exact.c_str(), 0, MPFR_RNDU) != 0) {
    // Inexact conversion still yields a valid enclosure; only reject garbage.
    if (mpfr_nan_p(r.lo_) || mpfr_nan_p(r.hi_)) throw Error(ErrorCode::Parse, "bad real literal '" + exact + "'");
  }
  return r;
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other) {}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  prec_ = other.prec_;
  mpfr_set_prec(lo_, prec_);
  mpfr_set_prec(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this != &other) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    std::swap(prec_, other.prec_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double Interval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string Interval::upper_exact() const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%Ra", hi_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Interval Interval::upper_point() const {
  Interval r(prec_);
  mpfr_set(r.lo_, hi_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

BigInt Interval::floor_lower() const { return to_big(lo_, MPFR_RNDD); }
BigInt Interval::floor_upper() const { return to_big(hi_, MPFR_RNDD); }
BigInt Interval::ceil_lower() const { return to_big(lo_, MPFR_RNDU); }
BigInt Interval::ceil_upper() const { return to_big(hi_, MPFR_RNDU); }

bool Interval::upper_less_than(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(common(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(common(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  if (mpfr_sgn(a.lo_) < 0 || mpfr_sgn(b.lo_) < 0) throw std::domain_error("interval product expects nonnegative operands");
  Interval r(common(a, b));
  mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(a.lo_) < 0 || mpfr_sgn(b.lo_) <= 0) throw std::domain_error("interval quotient expects positive operands");
  Interval r(common(a, b));
  mpfr_div(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_div(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo_) <= 0) throw std::domain_error("interval log expects a positive operand");
  Interval r(a.prec_);
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.prec_);
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

// Signed products for y * log(x), where log(x) may be negative.
Interval pow(const Interval& base, const Interval& exponent) {
  const Interval l = log(base);
  const mpfr_prec_t prec = common(base, exponent);
  mpfr_t cand;
  mpfr_init2(cand, prec);
  Interval prod(prec);
  bool first = true;
  for (const auto* y : {&exponent.lo_, &exponent.hi_}) {
    for (const auto* x : {&l.lo_, &l.hi_}) {
      mpfr_mul(cand, *y, *x, MPFR_RNDD);
      if (first || mpfr_less_p(cand, prod.lo_)) mpfr_set(prod.lo_, cand, MPFR_RNDD);
      mpfr_mul(cand, *y, *x, MPFR_RNDU);
      if (first || mpfr_greater_p(cand, prod.hi_)) mpfr_set(prod.hi_, cand, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(cand);
  return exp(prod);
}

Interval pow(const Interval& base, unsigned long exponent) {
  if (mpfr_sgn(base.lo_) < 0) throw std::domain_error("interval power expects a nonnegative base");
  Interval r(base.prec_);
  mpfr_pow_ui(r.lo_, base.lo_, exponent, MPFR_RNDD);
  mpfr_pow_ui(r.hi_, base.hi_, exponent, MPFR_RNDU);
  return r;
}

}  // namespace zsum
