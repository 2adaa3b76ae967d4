#include "zsum/search.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <span>

#include "zsum/errors.hpp"
#include "zsum/symmetry.hpp"

namespace zsum {

const char* to_string(Quantity q) { return q == Quantity::S ? "s" : "eta"; }

Quantity parse_quantity(const std::string& text) {
  if (text == "s") return Quantity::S;
  if (text == "eta" || text == "η") return Quantity::Eta;
  throw Error(ErrorCode::Parse, "unknown quantity '" + text + "' (expected s or eta)");
}

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Exact: return "Exact";
    case SearchStatus::LowerBoundOnly: return "LowerBoundOnly";
    case SearchStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;
using Index = std::uint16_t;
using Word = std::uint64_t;

struct Space {
  std::size_t n = 0;
  std::uint64_t k = 0;  // exp(G)
  std::size_t words = 0;
  Quantity q = Quantity::S;
  std::vector<Index> add;  // add[a * n + b]
  std::vector<Index> neg;
  SymmetryGroup sym;

  Space(const FiniteAbelianGroup& g, std::size_t order, Quantity quantity, bool symmetry)
      : n(order), k(g.small_exponent()), words((order + 63) / 64), q(quantity), add(order * order), neg(order) {
    std::vector<GroupElement> elems(n);
    for (std::size_t i = 0; i < n; ++i) elems[i] = g.element_at(i);
    for (std::size_t a = 0; a < n; ++a) {
      neg[a] = static_cast<Index>(g.index_of(g.negate(elems[a])));
      for (std::size_t b = 0; b < n; ++b) add[a * n + b] = static_cast<Index>(g.index_of(g.add(elems[a], elems[b])));
    }
    sym = build_symmetry(g, quantity, symmetry);
  }
};

struct Shared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> abort{false};
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  Clock::time_point deadline = Clock::time_point::max();
};

enum class Mode { Maximum, ExactLength };

struct Found {
  bool any = false;
  std::uint64_t best = 0;
  std::vector<std::vector<Index>> sequences;
  std::uint64_t nodes = 0;

  void record(std::uint64_t depth, const std::vector<Index>& seq, Mode mode, std::uint64_t target) {
    if (mode == Mode::ExactLength) {
      if (depth != target) return;
      any = true;
      best = depth;
      sequences.push_back(seq);
      return;
    }
    if (!any || depth > best) {
      any = true;
      best = depth;
      sequences.clear();
    }
    if (depth == best) sequences.push_back(seq);
  }
};

constexpr std::size_t kNoFrontier = std::numeric_limits<std::size_t>::max();

/// Depth-first orderly generation of multisets (nondecreasing element index),
/// keeping only zero-sum-free nodes that are lexicographically minimal in
/// their symmetry orbit. Minimality is inherited by the parent obtained by
/// dropping the largest element, so every orbit is reached exactly once.
class Worker {
 public:
  Worker(const Space& space, Shared& shared, Mode mode, std::uint64_t target, std::size_t frontier_depth)
      : sp_(space),
        shared_(shared),
        mode_(mode),
        target_(target),
        frontier_depth_(frontier_depth),
        mult_(space.n, 0),
        img_(space.n, 0) {
    reach_.assign(layer_size(), 0);
    set_bit(layer(0, 0), 0);
  }

  void run_from(std::span<const Index> prefix) {
    for (auto x : prefix) {
      mark(x);
      extend_reach(x);
    }
    visit();
    flush();
  }

  Found found;
  std::vector<std::vector<Index>> frontier;

 private:
  std::size_t layer_size() const { return sp_.k * sp_.words; }
  Word* layer(std::size_t depth, std::uint64_t c) { return reach_.data() + (depth * sp_.k + c) * sp_.words; }
  const Word* layer(std::size_t depth, std::uint64_t c) const {
    return reach_.data() + (depth * sp_.k + c) * sp_.words;
  }
  static void set_bit(Word* w, std::size_t i) { w[i >> 6] |= Word{1} << (i & 63); }
  static bool test_bit(const Word* w, std::size_t i) { return (w[i >> 6] >> (i & 63)) & 1U; }

  // A zero-sum of the forbidden length would need a sub-multiset summing to -x
  // with one element fewer.
  bool forbidden(Index x) const {
    const std::size_t d = seq_.size();
    const Index target = sp_.neg[x];
    if (sp_.q == Quantity::S) return test_bit(layer(d, sp_.k - 1), target);
    for (std::uint64_t c = 0; c < sp_.k; ++c)
      if (test_bit(layer(d, c), target)) return true;
    return false;
  }

  void mark(Index x) {
    ++mult_[x];
    seq_.push_back(x);
  }

  void unmark() {
    --mult_[seq_.back()];
    seq_.pop_back();
  }

  // Reachable (count, sum) states after appending x; seq_ already holds x.
  void extend_reach(Index x) {
    const std::size_t d = seq_.size() - 1;
    if (reach_.size() < (d + 2) * layer_size()) reach_.resize((d + 2) * layer_size(), 0);
    std::fill(layer(d + 1, 0), layer(d + 1, 0) + layer_size(), Word{0});
    set_bit(layer(d + 1, 0), 0);
    const std::size_t n = sp_.n;
    for (std::uint64_t c = 1; c < sp_.k; ++c) {
      const Word* src_same = layer(d, c);
      const Word* src_prev = layer(d, c - 1);
      Word* dst = layer(d + 1, c);
      for (std::size_t w = 0; w < sp_.words; ++w) dst[w] |= src_same[w];
      for (std::size_t w = 0; w < sp_.words; ++w) {
        Word bits = src_prev[w];
        while (bits) {
          const std::size_t y = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
          bits &= bits - 1;
          set_bit(dst, sp_.add[y * n + x]);
        }
      }
    }
  }

  // True when mapping the multiset gives a lexicographically smaller multiset.
  // In multiplicity-vector form: the first differing entry is larger in the image.
  bool image_smaller() {
    bool smaller = false;
    for (std::size_t i = 0; i < sp_.n; ++i) {
      if (img_[i] != mult_[i]) {
        smaller = img_[i] > mult_[i];
        break;
      }
    }
    std::fill(img_.begin(), img_.end(), std::uint16_t{0});
    return smaller;
  }

  bool canonical() {
    const auto& sym = sp_.sym;
    if (sym.linear.size() == 1 && !sym.translations) return true;
    std::vector<Index> support;
    for (auto x : seq_)
      if (support.empty() || support.back() != x) support.push_back(x);

    if (sym.translations) {
      std::uint16_t maxm = 0;
      for (auto e : support) maxm = std::max(maxm, mult_[e]);
      // Any orbit-minimal multiset holds 0 with maximal multiplicity; only
      // maps sending a maximal-multiplicity element to 0 can do better.
      if (mult_[0] != maxm) return false;
      for (std::size_t a = 0; a < sym.linear.size(); ++a) {
        const auto& lin = sym.linear[a];
        for (auto y : support) {
          if (mult_[y] != maxm || (a == 0 && y == 0)) continue;
          const Index shift = sp_.neg[lin[y]];
          for (auto e : support) img_[sp_.add[std::size_t(lin[e]) * sp_.n + shift]] = mult_[e];
          if (image_smaller()) return false;
        }
      }
      return true;
    }
    for (std::size_t a = 1; a < sym.linear.size(); ++a) {
      const auto& lin = sym.linear[a];
      for (auto e : support) img_[lin[e]] = mult_[e];
      if (image_smaller()) return false;
    }
    return true;
  }

  bool tick() {
    ++found.nodes;
    if (++pending_ >= 64) return flush();
    return true;
  }

  bool flush() {
    const auto total = shared_.nodes.fetch_add(pending_) + pending_;
    pending_ = 0;
    if (total > shared_.max_nodes || Clock::now() > shared_.deadline) shared_.abort.store(true);
    return !shared_.abort.load(std::memory_order_relaxed);
  }

  void visit() {
    if (shared_.abort.load(std::memory_order_relaxed)) return;
    const std::size_t d = seq_.size();
    if (d == frontier_depth_) {
      frontier.push_back(seq_);
      return;
    }
    if (!tick()) return;
    found.record(d, seq_, mode_, target_);
    if (mode_ == Mode::ExactLength && d == target_) return;

    const Index start = seq_.empty() ? 0 : seq_.back();
    const auto cap = static_cast<std::uint16_t>(sp_.k - 1);
    for (std::size_t xi = start; xi < sp_.n; ++xi) {
      const auto x = static_cast<Index>(xi);
      if (mult_[x] >= cap || forbidden(x)) continue;
      mark(x);
      if (canonical()) {
        extend_reach(x);
        visit();
      }
      unmark();
      if (shared_.abort.load(std::memory_order_relaxed)) return;
    }
  }

  const Space& sp_;
  Shared& shared_;
  Mode mode_;
  std::uint64_t target_;
  std::size_t frontier_depth_;
  std::vector<std::uint16_t> mult_;
  std::vector<Index> seq_;
  std::vector<Word> reach_;
  std::vector<std::uint16_t> img_;
  std::uint64_t pending_ = 0;
};

struct RunResult {
  bool searched = false;
  bool complete = false;
  Found found;
  std::string symmetry;
};

void merge(Found& into, Found&& part, Mode mode) {
  into.nodes += part.nodes;
  if (!part.any) return;
  if (mode == Mode::Maximum && into.any && part.best < into.best) return;
  if (mode == Mode::Maximum && (!into.any || part.best > into.best)) {
    into.best = part.best;
    into.sequences.clear();
  }
  into.any = true;
  into.best = part.best;
  for (auto& s : part.sequences) into.sequences.push_back(std::move(s));
}

RunResult run_search(const FiniteAbelianGroup& g, Quantity q, Mode mode, std::uint64_t target,
                     const SearchOptions& options) {
  RunResult result;
  const auto order = g.small_order(kMaxSearchOrder);
  if (!order || g.exponent() > 4096) return result;
  const Space space(g, *order, q, options.use_symmetry);
  result.symmetry = space.sym.description;
  result.searched = true;

  Shared shared;
  shared.max_nodes = options.budget.max_nodes;
  shared.deadline = Clock::now() + options.budget.wall;

  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  std::size_t split = kNoFrontier;
  if (options.execution == Execution::Parallel) {
    // Shallowest depth whose frontier gives every thread a few subtrees.
    const std::size_t want = 16 * static_cast<std::size_t>(threads);
    const std::size_t max_split = mode == Mode::ExactLength ? (target > 1 ? target - 1 : 0) : 8;
    for (std::size_t depth = 1; depth <= max_split; ++depth) {
      Shared probe_shared;
      Worker probe(space, probe_shared, mode, target, depth);
      probe.run_from({});
      split = depth;
      if (probe.frontier.size() >= want || probe.frontier.empty()) break;
    }
  }

  Worker root(space, shared, mode, target, split);
  root.run_from({});
  result.found = std::move(root.found);

  if (!root.frontier.empty()) {
    const auto& frontier = root.frontier;
    std::vector<Found> parts(frontier.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(frontier.size()); ++i) {
      Worker w(space, shared, mode, target, kNoFrontier);
      w.run_from(frontier[static_cast<std::size_t>(i)]);
      parts[static_cast<std::size_t>(i)] = std::move(w.found);
    }
    for (auto& p : parts) merge(result.found, std::move(p), mode);
  }
  std::sort(result.found.sequences.begin(), result.found.sequences.end());
  result.complete = !shared.abort.load();
  return result;
}

Sequence to_sequence(const FiniteAbelianGroup& g, const std::vector<Index>& seq) {
  Sequence s(g);
  for (auto x : seq) s.add(g.element_at(x));
  return s;
}

}  // namespace

SearchOutcome exact_constant(const FiniteAbelianGroup& g, Quantity q, const SearchOptions& options) {
  const auto start = Clock::now();
  auto run = run_search(g, q, Mode::Maximum, 0, options);
  SearchOutcome out;
  out.quantity = q;
  out.symmetry = run.symmetry;
  out.nodes_explored = run.found.nodes;
  if (run.searched && run.found.any) {
    out.status = run.complete ? SearchStatus::Exact : SearchStatus::LowerBoundOnly;
    out.value = run.found.best + 1;
    for (const auto& s : run.found.sequences) out.extremal_sequences.push_back(to_sequence(g, s));
    if (!out.extremal_sequences.empty()) out.extremal_example = out.extremal_sequences.front();
  }
  out.elapsed = Clock::now() - start;
  return out;
}

SearchOutcome exact_s(const FiniteAbelianGroup& g, const SearchOptions& options) {
  return exact_constant(g, Quantity::S, options);
}

SearchOutcome exact_eta(const FiniteAbelianGroup& g, const SearchOptions& options) {
  return exact_constant(g, Quantity::Eta, options);
}

ExtremalEnumeration enumerate_extremal(const FiniteAbelianGroup& g, std::uint64_t length, const SearchOptions& options,
                                       Quantity q) {
  if (length == 0) throw Error(ErrorCode::Domain, "length must be >= 1");
  auto run = run_search(g, q, Mode::ExactLength, length, options);
  ExtremalEnumeration out;
  out.symmetry = run.symmetry;
  out.nodes_explored = run.found.nodes;
  out.complete = run.searched && run.complete;
  if (run.found.any && run.found.best == length)
    for (const auto& s : run.found.sequences) out.sequences.push_back(to_sequence(g, s));
  return out;
}

}  // namespace zsum
