#include "clusim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "clusim/errors.hpp"

namespace clusim {

namespace {

std::string id_list(const std::vector<ItemId>& ids) {
  constexpr std::size_t kShown = 10;
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < kShown; ++i) {
    if (i) out += ' ';
    out += std::to_string(ids[i]);
  }
  if (ids.size() > kShown) out += fmt::format(" ... ({} total)", ids.size());
  return out;
}

}  // namespace

std::size_t count_common_clusters(const Clustering& program, const Clustering& manual) {
  const auto pu = program.universe();
  const auto mu = manual.universe();
  if (pu != mu) {
    std::vector<ItemId> missing, extra;
    std::set_difference(mu.begin(), mu.end(), pu.begin(), pu.end(), std::back_inserter(missing));
    std::set_difference(pu.begin(), pu.end(), mu.begin(), mu.end(), std::back_inserter(extra));
    throw ContractViolation(fmt::format("clusterings cover different items; missing from program: [{}]; "
                                        "extra in program: [{}]",
                                        id_list(missing), id_list(extra)));
  }
  // Both are canonical: clusters sorted by first member, members sorted.
  // Over the same universe a shared cluster starts at the same item.
  const auto& p = program.clusters();
  const auto& m = manual.clusters();
  std::size_t common = 0;
  std::size_t i = 0, j = 0;
  while (i < p.size() && j < m.size()) {
    if (p[i].front() < m[j].front()) {
      ++i;
    } else if (m[j].front() < p[i].front()) {
      ++j;
    } else {
      if (p[i] == m[j]) ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

double f1_score(double precision, double recall) noexcept {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

EvalReport make_report(std::size_t common, std::size_t manual, std::size_t program) {
  EvalReport r;
  r.common_clusters = common;
  r.manual_clusters = manual;
  r.program_clusters = program;
  r.recall = manual ? static_cast<double>(common) / static_cast<double>(manual) : 0.0;
  r.precision = program ? static_cast<double>(common) / static_cast<double>(program) : 0.0;
  r.f1 = f1_score(r.precision, r.recall);
  return r;
}

EvalReport evaluate(const Clustering& program, const Clustering& manual) {
  return make_report(count_common_clusters(program, manual), manual.size(), program.size());
}

std::string format_report(const EvalReport& r) {
  return fmt::format("R={:.2f} P={:.2f} F1={:.2f} (common={}, manual={}, program={})", r.recall, r.precision,
                     r.f1, r.common_clusters, r.manual_clusters, r.program_clusters);
}

SweepResult threshold_sweep(std::span<const Record> records, const Schema& schema, Method method,
                            std::span<const double> grid, const Clustering& gold, unsigned threads) {
  if (grid.empty()) throw ConfigError("threshold sweep: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
      throw ConfigError(fmt::format("threshold sweep: grid value {} outside [0, 1]", grid[i]));
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("threshold sweep: grid must be strictly increasing");
  }

  const RecordScorer scorer(records, schema, method, threads);
  const auto matrix = score_records(scorer, records.size(), threads);

  SweepResult out;
  out.method = method;
  out.points.reserve(grid.size());
  for (double t : grid) {
    out.points.push_back({t, evaluate(single_linkage(matrix, t), gold)});
  }
  const auto best = std::max_element(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) {
    return a.report.f1 < b.report.f1;
  });
  out.best_t_e = best->t_e;
  out.best_f1 = best->report.f1;
  return out;
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  if (!(start <= stop)) throw ConfigError("grid start must not exceed stop");
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double raw = start + static_cast<double>(k) * step;
    if (raw > stop + 1e-9) break;
    grid.push_back(std::round(raw * 1e9) / 1e9);
  }
  return grid;
}

void write_sweep_table(std::ostream& out, const SweepResult& sweep) {
  out << "t_e,R,P,F1,program_clusters\n";
  for (const auto& p : sweep.points) {
    out << fmt::format("{:.6f},{:.6f},{:.6f},{:.6f},{}\n", p.t_e, p.report.recall, p.report.precision, p.report.f1,
                       p.report.program_clusters);
  }
}

}  // namespace clusim
