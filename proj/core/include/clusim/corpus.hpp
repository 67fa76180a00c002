#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clusim/record_clustering.hpp"
#include "clusim/schema.hpp"
#include "clusim/table_io.hpp"

namespace clusim {

/// Per-field, per-duplicate corruption probabilities. Applied in the order
/// blank, garble, truncate, typo, transpose; blanking or garbling a value
/// ends its corruption chain.
struct CorruptionProfile {
  double truncate = 0.0;   ///< two-token value keeps only one of its tokens
  double typo = 0.0;       ///< one letter replaced by a different letter
  double transpose = 0.0;  ///< two adjacent, different letters swapped
  double blank = 0.0;      ///< value erased
  double garble = 0.0;     ///< value replaced by digits (invalid for the rule)
};

/// One generated column: values are `tokens` space-separated words.
struct ColumnShape {
  std::string name;
  std::size_t tokens = 1;
};

/// first_name:2, last_name:2, father_name:1, mother_name:1, city:1, street:2
std::vector<ColumnShape> default_columns();

/// Parses "name:tokens,name:tokens,...". Throws ConfigError.
std::vector<ColumnShape> parse_columns(std::string_view text);

struct CorpusSpec {
  std::size_t entity_count = 100;
  std::vector<ColumnShape> columns = default_columns();
  std::size_t min_records = 1;  ///< rows per entity, canonical row included
  std::size_t max_records = 3;
  CorruptionProfile corruption;
  std::uint64_t seed = 1;

  /// Throws ConfigError: entity_count == 0, no columns, a column with
  /// zero tokens or a duplicate name, min_records == 0,
  /// min_records > max_records, or a probability outside [0, 1].
  void validate() const;
};

/// Synthetic person table: every entity contributes one canonical row
/// plus corrupted copies; rows are shuffled. Distinct entities never
/// share a token, and every pair of tokens (and of full values) in a
/// column has Jaro similarity at most `kMaxCrossEntityJaro`.
///
/// The table's first column, entity_ref, names the source entity and is
/// not part of the schema. The schema lists every generated column with
/// the alphabetic rule, weight 1, t_field 0.8, Jaro (literal
/// transpositions), graded Sc and t_e 0.8.
struct Corpus {
  Table table;
  Clustering gold;
  Schema schema;
};

inline constexpr double kMaxCrossEntityJaro = 0.7;

/// Deterministic in `spec` (including the seed). Throws ConfigError if
/// the token pools cannot be built under the distance constraint.
Corpus generate_corpus(const CorpusSpec& spec);

}  // namespace clusim
