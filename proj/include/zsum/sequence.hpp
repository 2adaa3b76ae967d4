#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

using Multiplicities = std::map<GroupElement, std::uint64_t>;

/// A multiset over a group. Order of insertion is irrelevant.
class Sequence {
 public:
  explicit Sequence(FiniteAbelianGroup group) : group_(std::move(group)) {}
  Sequence(FiniteAbelianGroup group, const std::vector<GroupElement>& elements);

  // Throws Error(GroupMismatch) if `e` is not in the group.
  void add(const GroupElement& e, std::uint64_t count = 1);

  const FiniteAbelianGroup& group() const { return group_; }
  const Multiplicities& multiplicities() const { return mult_; }
  std::uint64_t length() const { return length_; }
  std::uint64_t multiplicity(const GroupElement& e) const;

  // Elements with repetition, ascending.
  std::vector<GroupElement> elements() const;
  // Every element shifted by c.
  Sequence translated(const GroupElement& c) const;

  bool operator==(const Sequence& other) const { return group_ == other.group_ && mult_ == other.mult_; }

 private:
  FiniteAbelianGroup group_;
  Multiplicities mult_;
  std::uint64_t length_ = 0;
};

struct LengthSpec {
  enum class Kind { Exactly, AtMost };
  Kind kind = Kind::Exactly;
  std::uint64_t length = 0;

  static LengthSpec exactly(std::uint64_t l) { return {Kind::Exactly, l}; }
  static LengthSpec at_most(std::uint64_t l) { return {Kind::AtMost, l}; }
};

struct ZeroSumWitness {
  Multiplicities sub_multiplicities;
  std::uint64_t length = 0;
};

/// Finds a zero-sum sub-multiset of S whose length satisfies `target`.
///
/// Dynamic programming over (sum, count) states with count <= target length,
/// one layer per distinct element taking 0..m copies; the witness is recovered
/// by walking the layers backwards. For AtMost the shortest witness is returned.
/// Throws Error(InvalidTarget) for a zero target length.
std::optional<ZeroSumWitness> find_zero_sum(const Sequence& s, LengthSpec target);

// Independent re-check used by tests and the CLI: containment, zero sum, length.
bool verify_witness(const Sequence& s, const ZeroSumWitness& w, LengthSpec target);

/// Reads the sequence file format: one element per line as comma-separated
/// residues, '#' starts a comment, blank lines are skipped. Residues are
/// against the canonical factor list unless `input_coords` is set, in which
/// case they are against the factor list the group was specified with.
/// Throws Error(Parse) naming the offending line.
Sequence read_sequence(std::istream& in, const FiniteAbelianGroup& group, bool input_coords = false);
void write_sequence(std::ostream& out, const Multiplicities& mult);

}  // namespace zsum
