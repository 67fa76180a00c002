#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "clusim/record_clustering.hpp"
#include "clusim/validity.hpp"

namespace clusim {

using RecordId = std::size_t;

/// Field-level similarity in [0, 1] between two normalized values.
using FieldMetric = std::function<double(std::string_view, std::string_view)>;

/// How Sc treats two valid values sitting in different clusters.
enum class ScMode {
  binary,  ///< 0
  graded,  ///< max metric similarity across the two clusters' values
};

struct FieldClusteringOptions {
  bool case_fold = true;
  /// Keep the cluster-to-cluster similarity table needed by ScMode::graded.
  /// Costs clusters^2 doubles.
  bool keep_cluster_links = false;
  unsigned threads = 1;
};

/// Every record's value of one field, sorted into Invalid, Empty, and
/// similarity clusters of valid values. Immutable once built.
class FieldPartition {
 public:
  struct Assignment {
    ValueClass value_class = ValueClass::empty;
    std::optional<std::size_t> cluster;  ///< set iff value_class == valid
  };

  std::size_t field_index() const noexcept { return field_index_; }

  /// Throws LookupError for ids not in the partition.
  const Assignment& at(RecordId id) const;
  bool contains(RecordId id) const noexcept { return assignment_.contains(id); }
  std::size_t record_count() const noexcept { return assignment_.size(); }

  /// Valid clusters; index = cluster id. Members ascending, clusters
  /// ordered by smallest member.
  const std::vector<std::vector<RecordId>>& clusters() const noexcept { return clusters_; }
  const std::vector<RecordId>& invalid_ids() const noexcept { return invalid_; }
  const std::vector<RecordId>& empty_ids() const noexcept { return empty_; }

  bool has_cluster_links() const noexcept { return !links_.empty() || clusters_.size() < 2; }

  /// Max metric similarity between any value of cluster a and any of b
  /// (1 for a == b). Throws ContractViolation if links were not kept.
  double cluster_link(std::size_t a, std::size_t b) const;

 private:
  friend FieldPartition cluster_field(std::size_t, const std::map<RecordId, std::string>&,
                                      const ValidityRule&, const FieldMetric&, double,
                                      const FieldClusteringOptions&);

  std::size_t field_index_ = 0;
  std::unordered_map<RecordId, Assignment> assignment_;
  std::vector<std::vector<RecordId>> clusters_;
  std::vector<RecordId> invalid_;
  std::vector<RecordId> empty_;
  std::vector<double> links_;  // clusters x clusters, row-major
};

/// Classifies every value, then single-links the distinct valid values
/// (after normalization) with stop threshold `t_field`. Identical
/// normalized values always share a cluster. Throws ConfigError when
/// t_field is outside [0, 1].
FieldPartition cluster_field(std::size_t field_index, const std::map<RecordId, std::string>& values,
                             const ValidityRule& rule, const FieldMetric& metric, double t_field,
                             const FieldClusteringOptions& options = {});

/// Sc for one field of a record pair: 0 if either value is invalid or
/// empty, 1 if both are valid and co-clustered, otherwise 0 (binary) or
/// the clusters' link similarity (graded).
double cluster_similarity(const FieldPartition& partition, RecordId a, RecordId b, ScMode mode);

}  // namespace clusim
