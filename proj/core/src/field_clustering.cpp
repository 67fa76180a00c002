#include "clusim/field_clustering.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "clusim/errors.hpp"

namespace clusim {

const FieldPartition::Assignment& FieldPartition::at(RecordId id) const {
  auto it = assignment_.find(id);
  if (it == assignment_.end()) {
    throw LookupError(fmt::format("field {}: record {} is not in the partition", field_index_, id));
  }
  return it->second;
}

double FieldPartition::cluster_link(std::size_t a, std::size_t b) const {
  if (a >= clusters_.size() || b >= clusters_.size()) {
    throw LookupError(fmt::format("field {}: cluster id out of range", field_index_));
  }
  if (a == b) return 1.0;
  if (links_.empty()) {
    throw ContractViolation(
        fmt::format("field {}: graded cluster similarity needs a partition built with cluster links",
                    field_index_));
  }
  return links_[a * clusters_.size() + b];
}

FieldPartition cluster_field(std::size_t field_index, const std::map<RecordId, std::string>& values,
                             const ValidityRule& rule, const FieldMetric& metric, double t_field,
                             const FieldClusteringOptions& options) {
  if (!(t_field >= 0.0 && t_field <= 1.0)) {
    throw ConfigError(fmt::format("field {}: t_field must lie in [0, 1], got {}", field_index, t_field));
  }

  FieldPartition out;
  out.field_index_ = field_index;
  out.assignment_.reserve(values.size());

  // Distinct normalized valid values, and which records hold each.
  std::map<std::string, std::vector<RecordId>> holders;
  for (const auto& [id, raw] : values) {
    auto value = normalize_value(raw, options.case_fold);
    FieldPartition::Assignment a;
    if (value.empty()) {
      a.value_class = ValueClass::empty;
      out.empty_.push_back(id);
    } else if (!rule.accepts(value)) {
      a.value_class = ValueClass::invalid;
      out.invalid_.push_back(id);
    } else {
      a.value_class = ValueClass::valid;
      holders[std::move(value)].push_back(id);
    }
    out.assignment_.emplace(id, a);
  }

  std::vector<const std::string*> distinct;
  std::vector<const std::vector<RecordId>*> distinct_holders;
  distinct.reserve(holders.size());
  for (const auto& [value, ids] : holders) {
    distinct.push_back(&value);
    distinct_holders.push_back(&ids);
  }

  const auto matrix = build_similarity_matrix(
      distinct.size(),
      [&](ItemId i, ItemId j) { return metric(*distinct[i], *distinct[j]); },
      options.threads);
  const auto value_clusters = single_linkage(matrix, t_field);

  // Value clusters -> record clusters, then canonical order by smallest record id.
  std::vector<std::pair<std::vector<RecordId>, std::vector<ItemId>>> record_clusters;
  for (const auto& vc : value_clusters.clusters()) {
    std::vector<RecordId> ids;
    for (ItemId v : vc) ids.insert(ids.end(), distinct_holders[v]->begin(), distinct_holders[v]->end());
    std::sort(ids.begin(), ids.end());
    record_clusters.emplace_back(std::move(ids), vc);
  }
  std::sort(record_clusters.begin(), record_clusters.end(),
            [](const auto& a, const auto& b) { return a.first.front() < b.first.front(); });

  const std::size_t k = record_clusters.size();
  out.clusters_.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (RecordId id : record_clusters[c].first) out.assignment_[id].cluster = c;
    out.clusters_.push_back(record_clusters[c].first);
  }

  if (options.keep_cluster_links && k > 1) {
    out.links_.assign(k * k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      out.links_[a * k + a] = 1.0;
      for (std::size_t b = a + 1; b < k; ++b) {
        double link = 0.0;
        for (ItemId va : record_clusters[a].second) {
          for (ItemId vb : record_clusters[b].second) link = std::max(link, matrix(va, vb));
        }
        out.links_[a * k + b] = link;
        out.links_[b * k + a] = link;
      }
    }
  }
  return out;
}

double cluster_similarity(const FieldPartition& partition, RecordId a, RecordId b, ScMode mode) {
  const auto& pa = partition.at(a);
  const auto& pb = partition.at(b);
  if (pa.value_class != ValueClass::valid || pb.value_class != ValueClass::valid) return 0.0;
  if (*pa.cluster == *pb.cluster) return 1.0;
  if (mode == ScMode::binary) return 0.0;
  return std::clamp(partition.cluster_link(*pa.cluster, *pb.cluster), 0.0, 1.0);
}

}  // namespace clusim
