// Serial vs OpenMP search on the same instances; the outcomes must match,
// only the wall time may differ.
#include <benchmark/benchmark.h>

#include "zsum/search.hpp"

using namespace zsum;

namespace {

const char* const kGroups[] = {"Z2^4", "Z4^2", "Z5^2", "Z3^3"};

void run_search(benchmark::State& state, Execution mode, Quantity q) {
  const auto g = parse_group(kGroups[state.range(0)]);
  SearchOptions opts;
  opts.execution = mode;
  std::uint64_t nodes = 0, value = 0;
  for (auto _ : state) {
    const auto out = exact_constant(g, q, opts);
    nodes = out.nodes_explored;
    value = out.value;
    benchmark::DoNotOptimize(value);
  }
  state.SetLabel(g.to_string());
  state.counters["value"] = static_cast<double>(value);
  state.counters["nodes"] = static_cast<double>(nodes);
}

void BM_SerialS(benchmark::State& s) { run_search(s, Execution::Serial, Quantity::S); }
void BM_ParallelS(benchmark::State& s) { run_search(s, Execution::Parallel, Quantity::S); }
void BM_SerialEta(benchmark::State& s) { run_search(s, Execution::Serial, Quantity::Eta); }
void BM_ParallelEta(benchmark::State& s) { run_search(s, Execution::Parallel, Quantity::Eta); }

}  // namespace

BENCHMARK(BM_SerialS)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelS)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SerialEta)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelEta)->DenseRange(0, 3)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
