#include "zsum/sequence.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "zsum/errors.hpp"

namespace zsum {

Sequence::Sequence(FiniteAbelianGroup group, const std::vector<GroupElement>& elements) : group_(std::move(group)) {
  for (const auto& e : elements) add(e);
}

void Sequence::add(const GroupElement& e, std::uint64_t count) {
  if (!group_.contains(e)) throw Error(ErrorCode::GroupMismatch, "element (" + format_element(e) + ") not in " + group_.to_string());
  if (count == 0) return;
  mult_[e] += count;
  length_ += count;
}

std::uint64_t Sequence::multiplicity(const GroupElement& e) const {
  auto it = mult_.find(e);
  return it == mult_.end() ? 0 : it->second;
}

std::vector<GroupElement> Sequence::elements() const {
  std::vector<GroupElement> out;
  out.reserve(length_);
  for (const auto& [e, m] : mult_) out.insert(out.end(), m, e);
  return out;
}

Sequence Sequence::translated(const GroupElement& c) const {
  Sequence out(group_);
  for (const auto& [e, m] : mult_) out.add(group_.add(e, c), m);
  return out;
}

std::optional<ZeroSumWitness> find_zero_sum(const Sequence& s, LengthSpec target) {
  if (target.length == 0) throw Error(ErrorCode::InvalidTarget, "target length must be >= 1");
  const auto& g = s.group();
  const auto order = g.small_order();
  if (!order) throw Error(ErrorCode::Domain, "group too large for zero-sum DP: " + g.to_string());
  const std::size_t n = *order;
  const std::uint64_t ell = std::min<std::uint64_t>(target.length, s.length());
  if (target.kind == LengthSpec::Kind::Exactly && target.length > s.length()) return std::nullopt;

  std::vector<std::size_t> idx;
  std::vector<std::uint64_t> mult;
  std::vector<GroupElement> elems;
  for (const auto& [e, m] : s.multiplicities()) {
    idx.push_back(g.index_of(e));
    mult.push_back(m);
    elems.push_back(e);
  }
  // Per-element translation tables: shift[i][h] = index of h + elems[i].
  std::vector<std::vector<std::size_t>> shift(elems.size(), std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t h = 0; h < n; ++h) shift[i][h] = g.index_of(g.add(g.element_at(h), elems[i]));

  const std::size_t width = (ell + 1) * n;
  // layers[i] = reachable (count, sum) pairs using the first i distinct elements.
  std::vector<std::vector<std::uint8_t>> layers(elems.size() + 1, std::vector<std::uint8_t>(width, 0));
  layers[0][0] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const auto& prev = layers[i];
    auto& next = layers[i + 1];
    for (std::uint64_t c = 0; c <= ell; ++c) {
      for (std::size_t h = 0; h < n; ++h) {
        if (!prev[c * n + h]) continue;
        std::size_t cur = h;
        for (std::uint64_t j = 0; j <= mult[i] && c + j <= ell; ++j) {
          next[(c + j) * n + cur] = 1;
          cur = shift[i][cur];
        }
      }
    }
  }

  const auto& last = layers.back();
  std::optional<std::uint64_t> found;
  if (target.kind == LengthSpec::Kind::Exactly) {
    if (last[ell * n]) found = ell;
  } else {
    for (std::uint64_t c = 1; c <= ell && !found; ++c)
      if (last[c * n]) found = c;
  }
  if (!found) return std::nullopt;

  ZeroSumWitness w;
  w.length = *found;
  std::uint64_t c = *found;
  std::size_t h = 0;
  for (std::size_t i = elems.size(); i > 0; --i) {
    const auto& prev = layers[i - 1];
    // Try j copies of element i-1: predecessor sum is h - j*e.
    std::size_t pre = h;
    const std::size_t neg = g.index_of(g.negate(elems[i - 1]));
    const auto neg_shift = [&](std::size_t x) { return g.index_of(g.add(g.element_at(x), g.element_at(neg))); };
    for (std::uint64_t j = 0; j <= mult[i - 1] && j <= c; ++j) {
      if (prev[(c - j) * n + pre]) {
        if (j > 0) w.sub_multiplicities[elems[i - 1]] = j;
        c -= j;
        h = pre;
        break;
      }
      pre = neg_shift(pre);
    }
  }
  return w;
}

bool verify_witness(const Sequence& s, const ZeroSumWitness& w, LengthSpec target) {
  const auto& g = s.group();
  std::uint64_t len = 0;
  GroupElement sum = g.zero();
  for (const auto& [e, m] : w.sub_multiplicities) {
    if (m == 0 || m > s.multiplicity(e)) return false;
    len += m;
    sum = g.add(sum, g.scalar_multiple(e, static_cast<std::int64_t>(m)));
  }
  if (len != w.length || len == 0 || sum != g.zero()) return false;
  return target.kind == LengthSpec::Kind::Exactly ? len == target.length : len >= 1 && len <= target.length;
}

Sequence read_sequence(std::istream& in, const FiniteAbelianGroup& group, bool input_coords) {
  Sequence seq(group);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<std::int64_t> residues;
    std::size_t pos = 0;
    bool any = false;
    while (pos <= line.size()) {
      auto comma = line.find(',', pos);
      std::string tok = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      auto b = tok.find_first_not_of(" \t\r");
      auto e = tok.find_last_not_of(" \t\r");
      if (b == std::string::npos) {
        if (comma != std::string::npos || any)
          throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": empty residue");
        break;
      }
      tok = tok.substr(b, e - b + 1);
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad residue '" + tok + "'");
      residues.push_back(v);
      any = true;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (residues.empty()) continue;
    try {
      seq.add(input_coords ? group.from_input_coords(residues) : group.from_canonical_coords(residues));
    } catch (const Error& err) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + err.what());
    }
  }
  return seq;
}

void write_sequence(std::ostream& out, const Multiplicities& mult) {
  for (const auto& [e, m] : mult)
    for (std::uint64_t i = 0; i < m; ++i) out << format_element(e) << '\n';
}

}  // namespace zsum
