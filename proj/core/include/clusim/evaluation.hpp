#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "clusim/pipeline.hpp"
#include "clusim/record_clustering.hpp"

namespace clusim {

/// Cluster-level recall / precision / F1 of a program clustering against
/// a manual one. A cluster counts as common only when the identical
/// member set appears in both.
struct EvalReport {
  std::size_t common_clusters = 0;
  std::size_t manual_clusters = 0;
  std::size_t program_clusters = 0;
  double recall = 0.0;     ///< common / manual
  double precision = 0.0;  ///< common / program
  double f1 = 0.0;         ///< 2PR / (P + R), 0 when P + R == 0
};

/// Throws ContractViolation when the two clusterings cover different
/// items; the message lists (a prefix of) the missing and extra ids.
std::size_t count_common_clusters(const Clustering& program, const Clustering& manual);

EvalReport evaluate(const Clustering& program, const Clustering& manual);

/// Report from raw counts. Ratios with a zero denominator are 0.
EvalReport make_report(std::size_t common, std::size_t manual, std::size_t program);

/// F1 from precision and recall; 0 when both are 0.
double f1_score(double precision, double recall) noexcept;

/// "R=0.94 P=0.89 F1=0.91 (common=..., manual=..., program=...)"
std::string format_report(const EvalReport& report);

struct SweepPoint {
  double t_e = 0.0;
  EvalReport report;
};

struct SweepResult {
  Method method = Method::cluster_similarity;
  std::vector<SweepPoint> points;
  double best_t_e = 0.0;  ///< smallest t_e attaining the highest F1
  double best_f1 = 0.0;
};

/// Scores the records once, then clusters and evaluates at every grid
/// value. Throws ConfigError unless the grid is non-empty, within [0, 1]
/// and strictly increasing.
SweepResult threshold_sweep(std::span<const Record> records, const Schema& schema, Method method,
                            std::span<const double> grid, const Clustering& gold, unsigned threads = 0);

/// Grid start, start+step, ... up to stop (inclusive, with 1e-9 slack).
/// Values are rounded to 1e-9 so 0.1-steps print cleanly.
std::vector<double> make_grid(double start, double stop, double step);

/// Comma-separated: header "t_e,R,P,F1,program_clusters", one row per
/// grid point, 6 decimals.
void write_sweep_table(std::ostream& out, const SweepResult& sweep);

}  // namespace clusim
