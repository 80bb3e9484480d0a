#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "cubicfe/cubicfe.hpp"

namespace {

std::vector<cubicfe::Cubic> corpus(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  std::vector<cubicfe::Cubic> out;
  out.reserve(n);
  while (out.size() < n) {
    const double a = dist(rng);
    if (a != 0.0) out.emplace_back(a, dist(rng), dist(rng), dist(rng));
  }
  return out;
}

const std::vector<cubicfe::Cubic>& shared_corpus() {
  static const auto c = corpus(4096);
  return c;
}

void BM_FeSolve(benchmark::State& state) {
  const auto& cs = shared_corpus();
  cubicfe::SolveOptions opts;
  opts.polish = state.range(0) != 0;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cubicfe::solve(cs[i++ % cs.size()], opts));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FeSolve)->Arg(0)->Arg(1)->ArgName("polish");

void BM_ClassicSolve(benchmark::State& state) {
  const auto& cs = shared_corpus();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cubicfe::solve_classic(cs[i++ % cs.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ClassicSolve);

void BM_DurandKerner(benchmark::State& state) {
  const auto& cs = shared_corpus();
  std::size_t i = 0;
  for (auto _ : state) {
    const auto coeffs = cs[i++ % cs.size()].descending();
    try {
      benchmark::DoNotOptimize(cubicfe::durand_kerner(coeffs));
    } catch (const cubicfe::NonConvergence&) {
    }
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DurandKerner);

void BM_Parse(benchmark::State& state) {
  const std::string text = "2.5x^3 - 6x^2 + 88/27 x - 6e-1";
  for (auto _ : state) {
    benchmark::DoNotOptimize(cubicfe::parse(text));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Parse);

}  // namespace

BENCHMARK_MAIN();
