#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "clusim/string_metrics.hpp"

namespace {

std::vector<std::string> words(std::size_t count, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out(count);
  for (auto& w : out)
    for (std::size_t i = 0; i < length; ++i) w += static_cast<char>('A' + rng() % 26);
  return out;
}

void BM_Jaro(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  const auto a = words(256, len, 1);
  const auto b = words(256, len, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(clusim::jaro(a[i & 255], b[i & 255]));
    ++i;
  }
}
BENCHMARK(BM_Jaro)->Arg(6)->Arg(16)->Arg(64);

void BM_JaroWinkler(benchmark::State& state) {
  const auto a = words(256, 12, 3);
  const auto b = words(256, 12, 4);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(clusim::jaro_winkler(a[i & 255], b[i & 255], 0.1));
    ++i;
  }
}
BENCHMARK(BM_JaroWinkler);

}  // namespace
