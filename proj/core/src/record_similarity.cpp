#include "clusim/record_similarity.hpp"

#include <fmt/format.h>

#include "clusim/errors.hpp"

namespace clusim {

int field_validity(ValueClass a, ValueClass b) noexcept {
  return (a == ValueClass::valid && b == ValueClass::valid) ? 1 : 0;
}

double field_importance(int k, double weight) noexcept { return static_cast<double>(k) * weight; }

double normalizer(std::span<const int> ks, std::span<const double> weights) {
  if (ks.size() != weights.size()) {
    throw ContractViolation(fmt::format("normalizer: {} validity flags but {} weights", ks.size(), weights.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) total += field_importance(ks[i], weights[i]);
  return total;
}

PairContext PairContext::make(std::span<const double> sc, std::span<const int> ks,
                              std::span<const double> weights) {
  if (sc.size() != ks.size() || ks.size() != weights.size()) {
    throw ContractViolation(fmt::format("PairContext: field counts differ (Sc {}, k {}, v {})", sc.size(),
                                        ks.size(), weights.size()));
  }
  PairContext pair;
  pair.fields.reserve(sc.size());
  for (std::size_t i = 0; i < sc.size(); ++i) {
    if (ks[i] != 0 && ks[i] != 1) throw ContractViolation(fmt::format("PairContext: k[{}] = {}", i, ks[i]));
    if (!(sc[i] >= 0.0 && sc[i] <= 1.0)) throw ContractViolation(fmt::format("PairContext: Sc[{}] = {}", i, sc[i]));
    if (!(weights[i] >= 0.0)) throw ContractViolation(fmt::format("PairContext: v[{}] = {}", i, weights[i]));
    pair.fields.push_back({sc[i], ks[i], weights[i], field_importance(ks[i], weights[i])});
  }
  pair.normalizer = clusim::normalizer(ks, weights);
  return pair;
}

double record_similarity(const PairContext& pair) noexcept {
  if (pair.normalizer <= 0.0) return 0.0;
  double numerator = 0.0;
  for (const auto& f : pair.fields) numerator += f.sc * f.importance;
  return numerator / pair.normalizer;
}

PairContext cluster_pair_context(std::span<const FieldPartition> partitions, const Schema& schema,
                                 RecordId a, RecordId b) {
  if (partitions.size() != schema.field_count()) {
    throw ContractViolation(fmt::format("cluster_pair_context: {} partitions for {} schema fields",
                                        partitions.size(), schema.field_count()));
  }
  const std::size_t f = schema.field_count();
  std::vector<double> sc(f);
  std::vector<int> ks(f);
  std::vector<double> weights(f);
  for (std::size_t i = 0; i < f; ++i) {
    const auto& p = partitions[i];
    ks[i] = field_validity(p.at(a).value_class, p.at(b).value_class);
    sc[i] = cluster_similarity(p, a, b, schema.sc_mode);
    weights[i] = schema.fields[i].weight;
  }
  return PairContext::make(sc, ks, weights);
}

PairContext direct_pair_context(const Record& a, const Record& b, const Schema& schema,
                                const FieldMetric& metric) {
  const std::size_t f = schema.field_count();
  if (a.values.size() != f || b.values.size() != f) {
    throw ContractViolation(fmt::format("direct similarity: records {} and {} have {} and {} values, schema has {}",
                                        a.id, b.id, a.values.size(), b.values.size(), f));
  }
  std::vector<double> sc(f);
  std::vector<int> ks(f);
  std::vector<double> weights(f);
  const bool fold = schema.case_fold();
  for (std::size_t i = 0; i < f; ++i) {
    const auto& rule = schema.fields[i].rule;
    const auto va = normalize_value(a.values[i], fold);
    const auto vb = normalize_value(b.values[i], fold);
    const auto ca = va.empty() ? ValueClass::empty : (rule.accepts(va) ? ValueClass::valid : ValueClass::invalid);
    const auto cb = vb.empty() ? ValueClass::empty : (rule.accepts(vb) ? ValueClass::valid : ValueClass::invalid);
    ks[i] = field_validity(ca, cb);
    sc[i] = ks[i] ? metric(va, vb) : 0.0;
    weights[i] = schema.fields[i].weight;
  }
  return PairContext::make(sc, ks, weights);
}

double direct_record_similarity(const Record& a, const Record& b, const Schema& schema,
                                const FieldMetric& metric) {
  return record_similarity(direct_pair_context(a, b, schema, metric));
}

}  // namespace clusim
