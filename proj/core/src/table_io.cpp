#include "clusim/table_io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "clusim/errors.hpp"
#include "clusim/validity.hpp"

namespace clusim {

namespace {

[[noreturn]] void fail_at(std::string_view source, std::size_t line, const std::string& what) {
  throw LoadError(fmt::format("{}:{}: {}", source, line, what));
}

// Reads one logical row. Returns false at end of input. `line` tracks the
// physical line the row started on and is advanced past it.
bool read_row(std::istream& in, char delim, std::string_view source, std::size_t& line,
              std::vector<std::string>& row, std::size_t& row_line) {
  row.clear();
  row_line = line;
  int ch = in.get();
  if (ch == std::char_traits<char>::eof()) return false;

  std::string field;
  bool quoted = false;       // inside quotes
  bool was_quoted = false;   // current field started with a quote
  bool after_quote = false;  // quote just closed
  for (;; ch = in.get()) {
    if (ch == std::char_traits<char>::eof()) {
      if (quoted) fail_at(source, row_line, "unterminated quoted field");
      row.push_back(std::move(field));
      return true;
    }
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == delim) {
      row.push_back(std::move(field));
      field.clear();
      was_quoted = after_quote = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in.peek() == '\n') in.get();
      ++line;
      row.push_back(std::move(field));
      return true;
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (after_quote) {
      fail_at(source, row_line, fmt::format("unexpected character '{}' after closing quote", c));
    } else {
      field.push_back(c);
    }
  }
}

}  // namespace

Table read_table(std::istream& in, char delimiter, std::string_view source) {
  // Skip a UTF-8 BOM.
  if (in.peek() == 0xEF) {
    char bom[3];
    in.read(bom, 3);
    if (!(in.gcount() == 3 && static_cast<unsigned char>(bom[1]) == 0xBB &&
          static_cast<unsigned char>(bom[2]) == 0xBF)) {
      in.clear();
      in.seekg(0);
    }
  }

  Table table;
  std::size_t line = 1;
  std::size_t row_line = 1;
  std::vector<std::string> row;
  if (!read_row(in, delimiter, source, line, row, row_line)) fail_at(source, 1, "missing header row");
  table.header = row;
  while (read_row(in, delimiter, source, line, row, row_line)) {
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    if (row.size() != table.header.size()) {
      fail_at(source, row_line,
              fmt::format("expected {} fields, found {}", table.header.size(), row.size()));
    }
    table.rows.push_back(row);
  }
  return table;
}

void write_row(std::ostream& out, std::span<const std::string> fields, char delimiter) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(delimiter);
    const auto& f = fields[i];
    if (f.find_first_of(std::string{delimiter, '"', '\r', '\n'}) == std::string::npos) {
      out << f;
      continue;
    }
    out.put('"');
    for (char c : f) {
      if (c == '"') out.put('"');
      out.put(c);
    }
    out.put('"');
  }
  out.put('\n');
}

void write_table(std::ostream& out, const Table& table, char delimiter) {
  write_row(out, table.header, delimiter);
  for (const auto& r : table.rows) write_row(out, r, delimiter);
}

std::vector<Record> select_records(const Table& table, const Schema& schema, std::string_view source) {
  std::map<std::string_view, std::size_t> columns;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const auto name = std::string_view(table.header[c]);
    if (!columns.emplace(name, c).second) fail_at(source, 1, fmt::format("duplicate column '{}'", name));
  }
  std::vector<std::size_t> picks;
  for (const auto& f : schema.fields) {
    auto it = columns.find(f.name);
    if (it == columns.end()) fail_at(source, 1, fmt::format("schema column '{}' not found in header", f.name));
    picks.push_back(it->second);
  }
  std::vector<Record> records;
  records.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    Record rec;
    rec.id = r;
    rec.values.reserve(picks.size());
    for (auto c : picks) rec.values.push_back(normalize_value(table.rows[r][c], false));
    records.push_back(std::move(rec));
  }
  return records;
}

Dataset ingest(const std::filesystem::path& input, const std::filesystem::path& schema_path, char delimiter) {
  Dataset ds;
  ds.schema = load_schema(schema_path);
  std::ifstream in(input, std::ios::binary);
  if (!in) throw LoadError(fmt::format("{}: cannot open input file", input.string()));
  const auto table = read_table(in, delimiter, input.string());
  ds.records = select_records(table, ds.schema, input.string());
  ds.header = table.header;
  return ds;
}

void write_clusters(std::ostream& out, const Clustering& clustering) {
  for (const auto& c : clustering.clusters()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out.put(' ');
      out << c[i];
    }
    out.put('\n');
  }
}

Clustering read_clusters(std::istream& in, std::string_view source) {
  std::vector<std::vector<ItemId>> clusters;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream ss(text);
    std::vector<ItemId> cluster;
    std::string token;
    while (ss >> token) {
      ItemId id = 0;
      std::size_t used = 0;
      try {
        if (token.front() == '-') throw std::invalid_argument(token);
        id = std::stoull(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) fail_at(source, line, fmt::format("'{}' is not a record id", token));
      cluster.push_back(id);
    }
    if (!cluster.empty()) clusters.push_back(std::move(cluster));
  }
  try {
    return Clustering(std::move(clusters));
  } catch (const ContractViolation& e) {
    throw LoadError(fmt::format("{}: {}", source, e.what()));
  }
}

Clustering load_clusters(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(fmt::format("{}: cannot open cluster file", path.string()));
  return read_clusters(in, path.string());
}

void write_audit(std::ostream& out, const Schema& schema, std::span<const AuditEntry> audit) {
  std::vector<std::string> header = {"rid_a", "rid_b"};
  for (const auto& f : schema.fields) {
    header.push_back(f.name + ".sc");
    header.push_back(f.name + ".k");
    header.push_back(f.name + ".df");
  }
  header.push_back("K");
  header.push_back("Sr");
  write_row(out, header, ',');

  std::vector<std::string> row;
  for (const auto& e : audit) {
    row.clear();
    row.push_back(std::to_string(e.a));
    row.push_back(std::to_string(e.b));
    for (const auto& t : e.pair.fields) {
      row.push_back(fmt::format("{:.17g}", t.sc));
      row.push_back(std::to_string(t.k));
      row.push_back(fmt::format("{:.17g}", t.importance));
    }
    row.push_back(fmt::format("{:.17g}", e.pair.normalizer));
    row.push_back(fmt::format("{:.17g}", e.similarity));
    write_row(out, row, ',');
  }
}

char parse_delimiter(std::string_view name) {
  if (name == "," || name == "comma") return ',';
  if (name == "tab" || name == "\t" || name == "\\t") return '\t';
  if (name == ";" || name == "semicolon") return ';';
  if (name == "|" || name == "pipe") return '|';
  throw ConfigError(fmt::format("unsupported delimiter '{}'", name));
}

}  // namespace clusim
