#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clusim/pipeline.hpp"
#include "clusim/record.hpp"
#include "clusim/record_clustering.hpp"
#include "clusim/schema.hpp"

namespace clusim {

/// A delimited text table: one header row, then data rows.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Reads a delimited table. Quoting follows the usual CSV conventions:
/// a field wrapped in double quotes may contain the delimiter, line
/// breaks and doubled quotes. CRLF and LF line endings are accepted; a
/// leading UTF-8 byte order mark is skipped. Every row must have as many
/// fields as the header. Errors are LoadError "source:line: message".
Table read_table(std::istream& in, char delimiter, std::string_view source);

/// Quotes a field only when it holds the delimiter, a quote, CR or LF.
void write_row(std::ostream& out, std::span<const std::string> fields, char delimiter);

void write_table(std::ostream& out, const Table& table, char delimiter);

struct Dataset {
  std::vector<Record> records;
  Schema schema;
  std::vector<std::string> header;
};

/// Loads the schema, then selects the schema's columns (in schema order)
/// from the table. Values are trimmed; record ids follow row order from
/// 0. Throws LoadError naming the file (and line) on any problem,
/// including schema columns absent from the header and duplicate header
/// names.
Dataset ingest(const std::filesystem::path& input, const std::filesystem::path& schema_path,
               char delimiter = ',');

/// Same, over an already-read table and parsed schema.
std::vector<Record> select_records(const Table& table, const Schema& schema, std::string_view source);

/// Cluster file: one cluster per line, member ids ascending and separated
/// by single spaces, clusters ordered by smallest member, '\n' endings.
void write_clusters(std::ostream& out, const Clustering& clustering);

/// Accepts any whitespace between ids; blank lines are skipped.
Clustering read_clusters(std::istream& in, std::string_view source);

Clustering load_clusters(const std::filesystem::path& path);

/// Audit log, comma-separated. Header:
///   rid_a,rid_b,<f>.sc,<f>.k,<f>.df,...,K,Sr
/// one row per entry, reals with 17 significant digits so rows can be
/// re-checked exactly.
void write_audit(std::ostream& out, const Schema& schema, std::span<const AuditEntry> audit);

/// Parses "," / "comma" / "tab" / "\t" / ";" / "semicolon" / "|" / "pipe".
char parse_delimiter(std::string_view name);

}  // namespace clusim
