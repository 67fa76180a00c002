// clusim: duplicate-record detection from the command line.
//
//   clusim dedup --input people.csv --schema schema.json [--method cluster|direct]
//                [--te 0.8] [--out clusters.txt] [--audit audit.csv] [--gold gold.txt]
//   clusim eval  --input clusters.txt --gold gold.txt
//   clusim sweep --input people.csv --schema schema.json --gold gold.txt
//                [--method ...] [--out sweep.csv] [--grid-start 0.1 --grid-stop 1 --grid-step 0.1]
//   clusim gen   --out corpus.csv --gold gold.txt [--schema schema.json] [--seed 1] ...

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "clusim/corpus.hpp"
#include "clusim/errors.hpp"
#include "clusim/evaluation.hpp"
#include "clusim/pipeline.hpp"
#include "clusim/table_io.hpp"

namespace {

using namespace clusim;

// Writes via a temporary string so a failed run leaves no partial file.
void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError(fmt::format("{}: cannot open for writing", path));
  out << content;
  if (!out) throw LoadError(fmt::format("{}: write failed", path));
}

struct CommonOptions {
  std::string input;
  std::string schema;
  std::string method = "cluster";
  std::string delimiter = ",";
  std::optional<double> te;
  unsigned threads = 0;
};

void add_data_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--input", o.input, "Delimited input table with a header row")->required();
  cmd->add_option("--schema", o.schema, "JSON schema file")->required();
  cmd->add_option("--method", o.method, "cluster | direct")->check(CLI::IsMember({"cluster", "direct"}));
  cmd->add_option("--delimiter", o.delimiter, "comma | tab | semicolon | pipe");
  cmd->add_option("--threads", o.threads, "Worker threads for pair scoring (0 = all cores)");
}

int run_dedup_command(const CommonOptions& o, const std::string& out_path, const std::string& audit_path,
                      const std::string& gold_path) {
  const auto ds = ingest(o.input, o.schema, parse_delimiter(o.delimiter));
  const double te = o.te.value_or(ds.schema.t_e);
  const auto result = run_dedup(ds.records, ds.schema, parse_method(o.method), te, o.threads);

  std::ostringstream clusters;
  write_clusters(clusters, result.clustering);
  if (out_path.empty()) {
    std::cout << clusters.str();
  } else {
    write_file(out_path, clusters.str());
  }
  if (!audit_path.empty()) {
    std::ostringstream audit;
    write_audit(audit, ds.schema, result.audit);
    write_file(audit_path, audit.str());
  }
  std::cerr << fmt::format("{} records -> {} clusters (method={}, t_e={})\n", ds.records.size(),
                           result.clustering.size(), o.method, te);
  if (!gold_path.empty()) {
    const auto report = evaluate(result.clustering, load_clusters(gold_path));
    std::cerr << format_report(report) << "\n";
  }
  return 0;
}

int run_sweep_command(const CommonOptions& o, const std::string& gold_path, const std::string& out_path,
                      double start, double stop, double step) {
  const auto ds = ingest(o.input, o.schema, parse_delimiter(o.delimiter));
  const auto gold = load_clusters(gold_path);
  const auto grid = make_grid(start, stop, step);
  const auto sweep = threshold_sweep(ds.records, ds.schema, parse_method(o.method), grid, gold, o.threads);

  std::ostringstream table;
  write_sweep_table(table, sweep);
  if (out_path.empty()) {
    std::cout << table.str();
  } else {
    write_file(out_path, table.str());
  }
  std::cerr << fmt::format("method={} best t_e={:.2f} F1={:.4f}\n", o.method, sweep.best_t_e, sweep.best_f1);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clusim - duplicate record detection by field-cluster similarity"};
  app.require_subcommand(1);

  CommonOptions dedup_opts;
  std::string dedup_out, dedup_audit, dedup_gold;
  auto* dedup = app.add_subcommand("dedup", "Cluster the records of a table");
  add_data_options(dedup, dedup_opts);
  dedup->add_option("--te", dedup_opts.te, "Stop threshold (overrides the schema's t_e)")
      ->check(CLI::Range(0.0, 1.0));
  dedup->add_option("--out", dedup_out, "Cluster file (default: stdout)");
  dedup->add_option("--audit", dedup_audit, "Per-merge audit log (CSV)");
  dedup->add_option("--gold", dedup_gold, "Manual clustering; prints R/P/F1 to stderr");

  std::string eval_input, eval_gold;
  auto* eval = app.add_subcommand("eval", "Score a cluster file against a manual clustering");
  eval->add_option("--input", eval_input, "Program cluster file")->required();
  eval->add_option("--gold", eval_gold, "Manual cluster file")->required();

  CommonOptions sweep_opts;
  std::string sweep_gold, sweep_out;
  double grid_start = 0.1, grid_stop = 1.0, grid_step = 0.1;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a grid of stop thresholds");
  add_data_options(sweep, sweep_opts);
  sweep->add_option("--gold", sweep_gold, "Manual cluster file")->required();
  sweep->add_option("--out", sweep_out, "Sweep table (default: stdout)");
  sweep->add_option("--grid-start", grid_start)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--grid-stop", grid_stop)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--grid-step", grid_step);

  CorpusSpec corpus;
  std::string gen_out, gen_gold, gen_schema, gen_delim = ",";
  auto* gen = app.add_subcommand("gen", "Generate a synthetic corpus with known duplicates");
  gen->add_option("--out", gen_out, "Records file")->required();
  gen->add_option("--gold", gen_gold, "Gold cluster file")->required();
  gen->add_option("--schema", gen_schema, "Also write a matching schema file");
  gen->add_option("--seed", corpus.seed, "Random seed");
  gen->add_option("--entities", corpus.entity_count, "Distinct entities")->check(CLI::PositiveNumber);
  gen->add_option("--min-records", corpus.min_records, "Rows per entity, lower bound");
  gen->add_option("--max-records", corpus.max_records, "Rows per entity, upper bound");
  gen->add_option("--p-truncate", corpus.corruption.truncate)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--p-typo", corpus.corruption.typo)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--p-transpose", corpus.corruption.transpose)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--p-blank", corpus.corruption.blank)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--p-garble", corpus.corruption.garble)->check(CLI::Range(0.0, 1.0));
  std::string gen_columns;
  gen->add_option("--columns", gen_columns, "Column inventory, e.g. first_name:2,city:1");
  gen->add_option("--delimiter", gen_delim, "comma | tab | semicolon | pipe");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dedup) return run_dedup_command(dedup_opts, dedup_out, dedup_audit, dedup_gold);
    if (*eval) {
      const auto report = evaluate(load_clusters(eval_input), load_clusters(eval_gold));
      std::cout << format_report(report) << "\n";
      std::cout << fmt::format("full precision: R={:.6f} P={:.6f} F1={:.6f}\n", report.recall, report.precision,
                               report.f1);
      return 0;
    }
    if (*sweep) return run_sweep_command(sweep_opts, sweep_gold, sweep_out, grid_start, grid_stop, grid_step);
    if (*gen) {
      if (!gen_columns.empty()) corpus.columns = parse_columns(gen_columns);
      const auto c = generate_corpus(corpus);
      std::ostringstream table, gold;
      write_table(table, c.table, parse_delimiter(gen_delim));
      write_clusters(gold, c.gold);
      write_file(gen_out, table.str());
      write_file(gen_gold, gold.str());
      if (!gen_schema.empty()) write_file(gen_schema, schema_to_json(c.schema));
      std::cerr << fmt::format("{} rows, {} entities\n", c.table.rows.size(), c.gold.size());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "clusim: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
