#include <benchmark/benchmark.h>

#include "clusim/corpus.hpp"
#include "clusim/pipeline.hpp"
#include "clusim/table_io.hpp"

namespace {

struct Fixture {
  clusim::Corpus corpus;
  std::vector<clusim::Record> records;

  explicit Fixture(std::size_t entities) {
    clusim::CorpusSpec spec;
    spec.entity_count = entities;
    spec.min_records = 2;
    spec.max_records = 4;
    spec.corruption.truncate = 0.3;
    spec.corruption.typo = 0.2;
    spec.corruption.blank = 0.1;
    corpus = clusim::generate_corpus(spec);
    records = clusim::select_records(corpus.table, corpus.schema, "bench");
  }
};

void BM_Dedup(benchmark::State& state, clusim::Method method) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(clusim::run_dedup(f.records, f.corpus.schema, method, 0.8, 1));
  state.counters["records"] = static_cast<double>(f.records.size());
}
BENCHMARK_CAPTURE(BM_Dedup, cluster, clusim::Method::cluster_similarity)
    ->Arg(50)
    ->Arg(200)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Dedup, direct, clusim::Method::direct)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_FieldClustering(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(clusim::cluster_fields(f.records, f.corpus.schema));
}
BENCHMARK(BM_FieldClustering)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
