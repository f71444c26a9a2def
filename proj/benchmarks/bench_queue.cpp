#include <benchmark/benchmark.h>

#include <queue>
#include <random>

#include "tfpq/tf_queue.hpp"
#include "tfpq/trace.hpp"

namespace {

void bm_insert(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  for (auto _ : state) {
    tfpq::tf_queue q;
    for (std::size_t i = 0; i < n; ++i) benchmark::DoNotOptimize(q.insert(std::int64_t(i * 7 % 1009)));
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n));
}
BENCHMARK(bm_insert)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

// hot pairs at the newest end of a large queue: the working-set case the
// structure is built for (deletes touch rank-0 trees regardless of n)
void bm_insert_delete_newest(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  tfpq::tf_queue q;
  for (std::size_t i = 0; i < n; ++i) q.insert(std::int64_t(i % 1009));
  std::size_t k = 0;
  for (auto _ : state) {
    auto h = q.insert(std::int64_t(k++ % 1009));
    benchmark::DoNotOptimize(q.erase(h));
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * 2);
}
BENCHMARK(bm_insert_delete_newest)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

void bm_delete_min_drain(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  std::mt19937_64 rng(11);
  for (auto _ : state) {
    state.PauseTiming();
    tfpq::tf_queue q;
    for (std::size_t i = 0; i < n; ++i) q.insert(std::int64_t(rng() % 100000));
    state.ResumeTiming();
    while (!q.empty()) benchmark::DoNotOptimize(q.delete_min());
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n));
}
BENCHMARK(bm_delete_min_drain)->Arg(1 << 10)->Arg(1 << 14);

void bm_std_priority_queue_drain(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  std::mt19937_64 rng(11);
  for (auto _ : state) {
    state.PauseTiming();
    std::priority_queue<std::int64_t, std::vector<std::int64_t>, std::greater<>> q;
    for (std::size_t i = 0; i < n; ++i) q.push(std::int64_t(rng() % 100000));
    state.ResumeTiming();
    while (!q.empty()) {
      benchmark::DoNotOptimize(q.top());
      q.pop();
    }
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n));
}
BENCHMARK(bm_std_priority_queue_drain)->Arg(1 << 10)->Arg(1 << 14);

void bm_trace_replay(benchmark::State& state) {
  const auto ops = tfpq::trace::generate("random", std::size_t(state.range(0)), 99);
  tfpq::trace::run_options opt;
  opt.oracle = false;
  for (auto _ : state) {
    auto res = tfpq::trace::run(ops, opt);
    benchmark::DoNotOptimize(res.summary.total_cost);
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(ops.size()));
}
BENCHMARK(bm_trace_replay)->Arg(1 << 12)->Arg(1 << 15);

}  // namespace

BENCHMARK_MAIN();
