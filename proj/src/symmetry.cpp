#include "zsum/symmetry.hpp"

#include <algorithm>
#include <numeric>

namespace zsum {

BigInt general_linear_order(std::uint64_t p, unsigned n) {
  BigInt order = 1;
  const BigInt pn = pow_big(p, n);
  for (unsigned i = 0; i < n; ++i) order *= pn - pow_big(p, i);
  return order;
}

namespace {

// Linear map of (Z_p)^n given by the images of the unit vectors.
IndexMap linear_map(const FiniteAbelianGroup& g, const std::vector<GroupElement>& basis_images, std::size_t size) {
  IndexMap out(size);
  for (std::size_t idx = 0; idx < size; ++idx) {
    const auto e = g.element_at(idx);
    GroupElement img = g.zero();
    for (std::size_t i = 0; i < basis_images.size(); ++i)
      img = g.add(img, g.scalar_multiple(basis_images[i], static_cast<std::int64_t>(e.coords[i])));
    out[idx] = static_cast<std::uint16_t>(g.index_of(img));
  }
  return out;
}

void enumerate_gl(const FiniteAbelianGroup& g, std::size_t size, std::uint64_t p, unsigned n,
                  std::vector<GroupElement>& chosen, std::vector<IndexMap>& out) {
  if (chosen.size() == n) {
    out.push_back(linear_map(g, chosen, size));
    return;
  }
  // span of the chosen vectors
  std::vector<bool> in_span(size, false);
  std::vector<std::size_t> span{0};
  in_span[0] = true;
  for (const auto& v : chosen) {
    std::vector<std::size_t> grown;
    for (auto s : span) {
      GroupElement cur = g.element_at(s);
      for (std::uint64_t c = 1; c < p; ++c) {
        cur = g.add(cur, v);
        const auto ci = g.index_of(cur);
        if (!in_span[ci]) {
          in_span[ci] = true;
          grown.push_back(ci);
        }
      }
    }
    span.insert(span.end(), grown.begin(), grown.end());
  }
  for (std::size_t idx = 0; idx < size; ++idx) {
    if (in_span[idx]) continue;
    chosen.push_back(g.element_at(idx));
    enumerate_gl(g, size, p, n, chosen, out);
    chosen.pop_back();
  }
}

std::vector<IndexMap> monomial_maps(const FiniteAbelianGroup& g, std::size_t size, std::uint64_t p, unsigned n) {
  std::vector<IndexMap> out;
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  do {
    std::vector<std::uint64_t> scale(n, 1);
    while (true) {
      std::vector<GroupElement> images;
      for (unsigned i = 0; i < n; ++i) {
        GroupElement v = g.zero();
        v.coords[perm[i]] = scale[i];
        images.push_back(v);
      }
      out.push_back(linear_map(g, images, size));
      unsigned i = 0;
      while (i < n && ++scale[i] == p) scale[i++] = 1;
      if (i == n) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

SymmetryGroup build_symmetry(const FiniteAbelianGroup& g, Quantity q, bool enabled) {
  SymmetryGroup sym;
  const std::size_t size = g.small_order(kMaxSearchOrder).value_or(0);
  IndexMap identity(size);
  std::iota(identity.begin(), identity.end(), std::uint16_t{0});
  sym.linear.push_back(identity);
  sym.translations = enabled && q == Quantity::S;

  const auto elem = g.elementary_shape();
  std::string linear_name;
  if (enabled && elem && size > 0 && size <= 81) {
    const auto [p, n] = *elem;
    std::vector<IndexMap> maps;
    if (general_linear_order(p, n) <= kMaxEnumeratedLinear) {
      std::vector<GroupElement> chosen;
      enumerate_gl(g, size, p, n, chosen, maps);
      linear_name = "GL(" + std::to_string(n) + "," + std::to_string(p) + ")";
    } else {
      maps = monomial_maps(g, size, p, n);
      linear_name = "monomial(" + std::to_string(n) + "," + std::to_string(p) + ")";
    }
    for (auto& m : maps)
      if (m != identity) sym.linear.push_back(std::move(m));
  }

  if (sym.translations && !linear_name.empty()) {
    sym.description = "translations x " + linear_name;
  } else if (sym.translations) {
    sym.description = "translations";
  } else if (!linear_name.empty()) {
    sym.description = linear_name;
  } else {
    sym.description = "none";
  }
  return sym;
}

}  // namespace zsum
