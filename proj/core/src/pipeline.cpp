#include "clusim/pipeline.hpp"

#include <fmt/format.h>

#include "clusim/errors.hpp"

namespace clusim {

Method parse_method(std::string_view name) {
  if (name == "cluster" || name == "cluster_similarity") return Method::cluster_similarity;
  if (name == "direct") return Method::direct;
  throw ConfigError(fmt::format("unknown method '{}' (expected cluster or direct)", name));
}

std::string_view to_string(Method method) noexcept {
  return method == Method::direct ? "direct" : "cluster";
}

namespace {

void check_records(std::span<const Record> records, const Schema& schema) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].id != i) {
      throw ContractViolation(fmt::format("record at position {} has id {}", i, records[i].id));
    }
    if (records[i].values.size() != schema.field_count()) {
      throw ContractViolation(fmt::format("record {} has {} values, schema has {} fields", i,
                                          records[i].values.size(), schema.field_count()));
    }
  }
}

}  // namespace

std::vector<FieldPartition> cluster_fields(std::span<const Record> records, const Schema& schema,
                                           unsigned threads) {
  check_records(records, schema);
  FieldClusteringOptions options;
  options.case_fold = schema.case_fold();
  options.keep_cluster_links = schema.sc_mode == ScMode::graded;
  options.threads = threads;

  const FieldMetric metric = schema.metric;
  std::vector<FieldPartition> partitions;
  partitions.reserve(schema.field_count());
  for (std::size_t f = 0; f < schema.field_count(); ++f) {
    std::map<RecordId, std::string> column;
    for (const auto& r : records) column.emplace(r.id, r.values[f]);
    const auto& spec = schema.fields[f];
    partitions.push_back(cluster_field(f, column, spec.rule, metric, spec.t_field, options));
  }
  return partitions;
}

RecordScorer::RecordScorer(std::span<const Record> records, const Schema& schema, Method method,
                           unsigned threads)
    : records_(records), schema_(&schema), method_(method) {
  schema.validate();
  check_records(records, schema);
  if (method == Method::cluster_similarity) partitions_ = cluster_fields(records, schema, threads);
}

PairContext RecordScorer::context(RecordId a, RecordId b) const {
  if (method_ == Method::cluster_similarity) return cluster_pair_context(partitions_, *schema_, a, b);
  if (a >= records_.size() || b >= records_.size()) {
    throw LookupError(fmt::format("record pair ({}, {}) out of range", a, b));
  }
  return direct_pair_context(records_[a], records_[b], *schema_, schema_->metric);
}

SimilarityMatrix score_records(const RecordScorer& scorer, std::size_t record_count, unsigned threads) {
  return build_similarity_matrix(
      record_count, [&](ItemId a, ItemId b) { return scorer(a, b); }, threads);
}

std::vector<AuditEntry> audit_merges(const RecordScorer& scorer, std::span<const Merge> merges) {
  std::vector<AuditEntry> audit;
  audit.reserve(merges.size());
  for (const auto& m : merges) {
    auto pair = scorer.context(m.witness_a, m.witness_b);
    const double sr = record_similarity(pair);
    audit.push_back({m.witness_a, m.witness_b, std::move(pair), sr});
  }
  return audit;
}

DedupResult run_dedup(std::span<const Record> records, const Schema& schema, Method method, double t_e,
                      unsigned threads) {
  if (!(t_e >= 0.0 && t_e <= 1.0)) throw ConfigError(fmt::format("t_e {} outside [0, 1]", t_e));
  const RecordScorer scorer(records, schema, method, threads);
  const auto matrix = score_records(scorer, records.size(), threads);
  auto linkage = single_linkage_merges(matrix, t_e);
  return {std::move(linkage.clustering), audit_merges(scorer, linkage.merges)};
}

}  // namespace clusim
