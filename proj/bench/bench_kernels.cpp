#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "slt/charfn.hpp"
#include "slt/integrate.hpp"
#include "slt/problem_io.hpp"

namespace {

void char_grid_bench(benchmark::State& state, slt::Exec exec) {
  const auto p = slt::load_problem("desk-benchmark");
  std::vector<double> lambdas(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double mu = 40.0 * static_cast<double>(i) / static_cast<double>(lambdas.size());
    lambdas[i] = mu * mu;
  }
  for (auto _ : state) benchmark::DoNotOptimize(slt::char_grid(p, lambdas, {}, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CharGridSerial(benchmark::State& s) { char_grid_bench(s, slt::Exec::serial); }
void BM_CharGridParallel(benchmark::State& s) { char_grid_bench(s, slt::Exec::parallel); }

void sweep_bench(benchmark::State& state, bool parallel) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> base(n), kernel(n), f(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    base[i] = std::cos(1e-3 * i);
    kernel[i] = std::sin(2e-3 * i);
    f[i] = 1.0 + 1e-4 * i;
  }
  for (auto _ : state) {
    if (parallel) slt::detail::picard_sweep_parallel(base, kernel, f, 1e-3, out);
    else slt::detail::picard_sweep_serial(base, kernel, f, 1e-3, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_PicardSweepSerial(benchmark::State& s) { sweep_bench(s, false); }
void BM_PicardSweepParallel(benchmark::State& s) { sweep_bench(s, true); }

}  // namespace

BENCHMARK(BM_CharGridSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharGridParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PicardSweepSerial)->Arg(2001)->Arg(8001)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PicardSweepParallel)->Arg(2001)->Arg(8001)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
