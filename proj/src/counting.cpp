#include "zsum/bounds.hpp"
#include "zsum/errors.hpp"

namespace zsum {

BigInt count_monomials_total(std::uint64_t n, std::uint64_t k) { return binomial(n + k, n); }

BigInt count_monomials_box_capped(const MonomialConstraint& c) {
  if (c.n_vars == 0) throw Error(ErrorCode::Domain, "monomial constraint needs at least one variable");
  const std::uint64_t cap = std::min(c.total_cap, c.n_vars * c.per_var_cap);
  // ways[t]: vectors over the variables seen so far with sum exactly t
  std::vector<BigInt> ways(cap + 1, 0), next(cap + 1);
  ways[0] = 1;
  for (std::uint64_t v = 0; v < c.n_vars; ++v) {
    BigInt window = 0;  // sum of ways[t - per_var_cap .. t]
    for (std::uint64_t t = 0; t <= cap; ++t) {
      window += ways[t];
      if (t > c.per_var_cap) window -= ways[t - c.per_var_cap - 1];
      next[t] = window;
    }
    ways.swap(next);
  }
  BigInt total = 0;
  for (const auto& w : ways) total += w;
  return total;
}

SliceRankCap slice_rank_cap(std::uint64_t p, std::uint64_t n) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
  if (n == 0) throw Error(ErrorCode::Domain, "n must be >= 1");
  const std::uint64_t degree_cap = n * (p - 1) / p;
  SliceRankCap r;
  r.box_count = count_monomials_box_capped({n, p - 1, degree_cap});
  r.exact = r.box_count * p;
  r.binomial_form = count_monomials_total(n, degree_cap) * p;
  return r;
}

}  // namespace zsum
