#include <benchmark/benchmark.h>

#include <random>

#include "clusim/record_clustering.hpp"

namespace {

clusim::SimilarityMatrix random_matrix(std::size_t n) {
  std::mt19937_64 rng(n);
  clusim::SimilarityMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, static_cast<double>(rng() % 1000) / 1000.0);
  return m;
}

void BM_SingleLinkage(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(clusim::single_linkage(m, 0.995));
}
BENCHMARK(BM_SingleLinkage)->Arg(100)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ThresholdComponents(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(clusim::threshold_components(m, 0.995));
}
BENCHMARK(BM_ThresholdComponents)->Arg(100)->Arg(400)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
