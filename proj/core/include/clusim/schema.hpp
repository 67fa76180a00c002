#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "clusim/field_clustering.hpp"
#include "clusim/string_metrics.hpp"
#include "clusim/validity.hpp"

namespace clusim {

struct FieldSpec {
  std::string name;
  double weight = 1.0;
  ValidityRule rule;
  double t_field = 0.8;
};

/// Column inventory plus the run-wide knobs.
struct Schema {
  std::vector<FieldSpec> fields;
  StringMetric metric;
  ScMode sc_mode = ScMode::binary;
  double t_e = 0.8;

  std::size_t field_count() const noexcept { return fields.size(); }
  bool case_fold() const noexcept { return metric.options().case_fold; }

  /// Throws ConfigError: no fields, duplicate names, a negative or
  /// non-finite weight, all weights zero, or a threshold outside [0, 1].
  void validate() const;
};

/// Parses the JSON schema document. `source` is used in error messages.
///
///   {
///     "metric": "jaro" | "jaro_winkler",        default "jaro"
///     "prefix_scale": 0.1,                      jaro_winkler only
///     "transpositions": "literal" | "half",     default "literal"
///     "case_fold": true,
///     "sc_mode": "binary" | "graded",           default "binary"
///     "t_e": 0.8,
///     "fields": [ { "name": "...", "weight": 1.0,
///                   "rule": "alphabetic", "t_field": 0.8 }, ... ]
///   }
Schema parse_schema(std::string_view json_text, std::string_view source = "<schema>");

Schema load_schema(const std::filesystem::path& path);

/// Inverse of parse_schema; stable key order, two-space indent.
std::string schema_to_json(const Schema& schema);

std::string_view to_string(ScMode mode) noexcept;
std::string_view to_string(TranspositionMode mode) noexcept;

}  // namespace clusim
