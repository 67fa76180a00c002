#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clusim/field_clustering.hpp"
#include "clusim/record.hpp"
#include "clusim/schema.hpp"

namespace clusim {

/// Pair validity of one field: 1 iff both values are valid.
int field_validity(ValueClass a, ValueClass b) noexcept;

/// Df = k * v.
double field_importance(int k, double weight) noexcept;

/// K = sum of k_i * v_i, accumulated in field order. Throws
/// ContractViolation when the spans differ in length.
double normalizer(std::span<const int> ks, std::span<const double> weights);

struct FieldTerm {
  double sc = 0.0;          ///< field similarity in [0, 1]
  int k = 0;                ///< pair validity, 0 or 1
  double weight = 0.0;      ///< v_i
  double importance = 0.0;  ///< Df_i = k_i * v_i
};

/// Per-field inputs to Sr for one record pair, plus the pair's K.
struct PairContext {
  std::vector<FieldTerm> fields;
  double normalizer = 0.0;

  /// Derives Df and K from (Sc, k, v). Throws ContractViolation on length
  /// mismatch, k outside {0, 1}, Sc outside [0, 1], or a negative weight.
  static PairContext make(std::span<const double> sc, std::span<const int> ks,
                          std::span<const double> weights);
};

/// Sr = (sum_i Sc_i * Df_i) / K, or 0 when K == 0.
double record_similarity(const PairContext& pair) noexcept;

/// Pair context for the cluster-similarity method. `partitions[i]` is the
/// partition of schema field i.
PairContext cluster_pair_context(std::span<const FieldPartition> partitions, const Schema& schema,
                                 RecordId a, RecordId b);

/// Pair context for the direct method: Sc_i = metric(value_a, value_b) on
/// the normalized values, k_i from the schema rules as in the cluster
/// method. Throws ContractViolation if either record's arity differs
/// from the schema.
PairContext direct_pair_context(const Record& a, const Record& b, const Schema& schema,
                                const FieldMetric& metric);

double direct_record_similarity(const Record& a, const Record& b, const Schema& schema,
                                const FieldMetric& metric);

}  // namespace clusim
