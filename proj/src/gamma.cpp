#include <algorithm>
#include <cmath>
#include <limits>

#include "zsum/bounds.hpp"
#include "zsum/errors.hpp"

namespace zsum {

namespace {

// The objective is minimized over t = -log x in (0, inf); t -> 0 is the
// boundary x -> 1, where the objective tends to k.
struct Objective {
  double k, q;
  double log_value(double t) const {
    const double ratio = std::expm1(-q * t) / std::expm1(-t);  // (1 - x^q)/(1 - x)
    return std::log(k / q) + std::log(ratio) + (q - 1) / k * t;
  }
};

constexpr double kTMin = 1e-9;
constexpr double kTMax = 60.0;
constexpr int kGridPoints = 2000;
constexpr int kDensePoints = 100000;

double grid_t(int i, int count) {
  return kTMin * std::pow(kTMax / kTMin, static_cast<double>(i) / (count - 1));
}

// Golden section on log t over [a, b]; returns the best abscissa found.
double golden(const Objective& f, double a, double b, double tol) {
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double la = std::log(a), lb = std::log(b);
  double l1 = lb - phi * (lb - la), l2 = la + phi * (lb - la);
  double f1 = f.log_value(std::exp(l1)), f2 = f.log_value(std::exp(l2));
  while (std::exp(lb) - std::exp(la) > tol * std::max(1.0, std::exp(la)) && lb - la > 1e-15) {
    if (f1 <= f2) {
      lb = l2;
      l2 = l1;
      f2 = f1;
      l1 = lb - phi * (lb - la);
      f1 = f.log_value(std::exp(l1));
    } else {
      la = l1;
      l1 = l2;
      f1 = f2;
      l2 = la + phi * (lb - la);
      f2 = f.log_value(std::exp(l2));
    }
  }
  return std::exp(f1 <= f2 ? l1 : l2);
}

// Oversample the bracket; a unimodal function decreases then increases.
bool unimodal_on(const Objective& f, double a, double b) {
  constexpr int samples = 400;
  const double slack = 1e-12;
  bool rising = false;
  double prev = f.log_value(a);
  for (int i = 1; i <= samples; ++i) {
    const double t = a * std::pow(b / a, static_cast<double>(i) / samples);
    const double v = f.log_value(t);
    if (v > prev + slack) rising = true;
    else if (rising && v < prev - slack) return false;
    prev = v;
  }
  return true;
}

int argmin_grid(const Objective& f, int count) {
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const double v = f.log_value(grid_t(i, count));
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  return best;
}

// Upward-safe enclosure of the objective at the double point x.
Interval enclose(std::uint64_t k, std::uint64_t q, double x, long prec) {
  const Interval xi = Interval::point(x, prec);
  const Interval one(Rational(1), prec);
  const Interval ratio = (one - pow(xi, static_cast<unsigned long>(q))) / (one - xi);
  const Interval power = pow(xi, Interval(Rational(-static_cast<long long>(q - 1), static_cast<long long>(k)), prec));
  return ratio * power * Interval(Rational(k, q), prec);
}

}  // namespace

GammaResult gamma_infimum(std::uint64_t k, std::uint64_t q, double tol) {
  if (k < 2 || q < 2) throw Error(ErrorCode::Domain, "gamma needs k, q >= 2");
  if (!(tol > 0)) throw Error(ErrorCode::Domain, "tolerance must be positive");
  const Objective f{static_cast<double>(k), static_cast<double>(q)};

  GammaResult r;
  r.k = k;
  r.q = q;
  r.tolerance = tol;

  int i = argmin_grid(f, kGridPoints);
  double lo = grid_t(std::max(i - 1, 0), kGridPoints), hi = grid_t(std::min(i + 1, kGridPoints - 1), kGridPoints);
  if (!unimodal_on(f, lo, hi)) {
    r.used_dense_fallback = true;
    i = argmin_grid(f, kDensePoints);
    lo = grid_t(std::max(i - 1, 0), kDensePoints);
    hi = grid_t(std::min(i + 1, kDensePoints - 1), kDensePoints);
  }
  const double t_star = golden(f, lo, hi, tol);
  const double x_star = std::exp(-t_star);

  constexpr long prec = 128;
  const Interval boundary(Rational(k), prec);
  std::optional<Interval> interior;
  if (x_star > 0 && x_star < 1) interior = enclose(k, q, x_star, prec);

  if (!interior || !interior->upper_less_than(boundary)) {
    r.minimizer_x = 1;
    r.gamma_upper = static_cast<double>(k);
    r.gamma_upper_exact = boundary.upper_exact();
  } else {
    r.minimizer_x = x_star;
    r.gamma_upper = interior->upper_double();
    r.gamma_upper_exact = interior->upper_exact();
  }
  return r;
}

GammaResult naslund_gamma(std::uint64_t k, std::uint64_t q, double tol) {
  if (k < 2) throw Error(ErrorCode::Domain, "k must be >= 2");
  if (q < 2 || prime_power_base(q) == 0) throw Error(ErrorCode::Domain, std::to_string(q) + " is not a prime power");
  if (k % q != 0) throw Error(ErrorCode::Domain, std::to_string(q) + " does not divide " + std::to_string(k));
  return gamma_infimum(k, q, tol);
}

double naslund_asymptotic_ratio(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::Domain, "q must be >= 2");
  const double g = gamma_infimum(q, q).gamma_upper;
  const double qd = static_cast<double>(q);
  const double predicted = -std::expm1(-qd * std::log(2.0)) * std::pow(2.0, (2 * qd - 1) / qd);
  return g / predicted;
}

}  // namespace zsum
