#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "clusim/field_clustering.hpp"
#include "clusim/record.hpp"
#include "clusim/record_clustering.hpp"
#include "clusim/record_similarity.hpp"
#include "clusim/schema.hpp"

namespace clusim {

enum class Method {
  cluster_similarity,  ///< Sc from field-value cluster co-membership
  direct,              ///< Sc = metric on the raw pair of values
};

/// "cluster" / "direct". Throws ConfigError otherwise.
Method parse_method(std::string_view name);
std::string_view to_string(Method method) noexcept;

/// Builds one partition per schema field over all records.
std::vector<FieldPartition> cluster_fields(std::span<const Record> records, const Schema& schema,
                                           unsigned threads = 1);

/// Pairwise record scorer for one method. Record ids must equal their
/// position in `records`. Holds references; keep the inputs alive.
class RecordScorer {
 public:
  RecordScorer(std::span<const Record> records, const Schema& schema, Method method, unsigned threads = 1);

  PairContext context(RecordId a, RecordId b) const;
  double operator()(RecordId a, RecordId b) const { return record_similarity(context(a, b)); }

  Method method() const noexcept { return method_; }
  const std::vector<FieldPartition>& partitions() const noexcept { return partitions_; }

 private:
  std::span<const Record> records_;
  const Schema* schema_;
  Method method_;
  std::vector<FieldPartition> partitions_;
};

/// Sr matrix over all records.
SimilarityMatrix score_records(const RecordScorer& scorer, std::size_t record_count, unsigned threads = 0);

struct AuditEntry {
  RecordId a = 0;
  RecordId b = 0;
  PairContext pair;
  double similarity = 0.0;
};

struct DedupResult {
  Clustering clustering;
  std::vector<AuditEntry> audit;  ///< one entry per merge, witness pair
};

/// Full run: field clustering (cluster method only), pairwise Sr, single
/// linkage at t_e. Throws ContractViolation if a record's id is not its
/// index or its arity differs from the schema.
DedupResult run_dedup(std::span<const Record> records, const Schema& schema, Method method, double t_e,
                      unsigned threads = 0);

/// Audit entries for the merges of an existing linkage.
std::vector<AuditEntry> audit_merges(const RecordScorer& scorer, std::span<const Merge> merges);

}  // namespace clusim
