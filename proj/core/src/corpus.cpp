#include "clusim/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <random>
#include <string_view>

#include <fmt/format.h>

#include "clusim/errors.hpp"
#include "clusim/string_metrics.hpp"

namespace clusim {

std::vector<ColumnShape> default_columns() {
  return {{"first_name", 2}, {"last_name", 2}, {"father_name", 1},
          {"mother_name", 1}, {"city", 1}, {"street", 2}};
}

std::vector<ColumnShape> parse_columns(std::string_view text) {
  std::vector<ColumnShape> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto colon = item.find(':');
    ColumnShape c;
    c.name = std::string(item.substr(0, colon));
    if (colon != std::string_view::npos) {
      const auto count = item.substr(colon + 1);
      auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), c.tokens);
      if (count.empty() || ec != std::errc{} || ptr != count.data() + count.size()) {
        throw ConfigError(fmt::format("corpus: bad token count in column spec '{}'", item));
      }
    }
    out.push_back(std::move(c));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void CorpusSpec::validate() const {
  if (entity_count == 0) throw ConfigError("corpus: entity_count must be positive");
  if (columns.empty()) throw ConfigError("corpus: at least one column is required");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name.empty() || columns[i].tokens == 0) {
      throw ConfigError(fmt::format("corpus: column {} needs a name and at least one token", i));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (columns[j].name == columns[i].name) {
        throw ConfigError(fmt::format("corpus: duplicate column '{}'", columns[i].name));
      }
    }
  }
  if (min_records == 0) throw ConfigError("corpus: min_records must be at least 1");
  if (min_records > max_records) throw ConfigError("corpus: min_records exceeds max_records");
  const std::array<std::pair<const char*, double>, 5> probs = {{{"truncate", corruption.truncate},
                                                                {"typo", corruption.typo},
                                                                {"transpose", corruption.transpose},
                                                                {"blank", corruption.blank},
                                                                {"garble", corruption.garble}}};
  for (const auto& [name, p] : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(fmt::format("corpus: {} probability {} outside [0, 1]", name, p));
  }
}

namespace {

// std::mt19937_64's output sequence is fixed by the standard; the
// distributions are not, so bounded draws are done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n), n > 0, by rejection.
  std::size_t below(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return p > 0.0 && unit() < p; }

 private:
  std::mt19937_64 engine_;
};

constexpr std::string_view kVowels = "AEIOU";
constexpr std::string_view kLetters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";

std::string random_token(Rng& rng) {
  const std::size_t len = rng.between(5, 8);
  std::string t;
  for (std::size_t i = 0; i < len; ++i) {
    // Vowel-leaning odd positions keep tokens vaguely pronounceable.
    t.push_back(i % 2 == 1 && rng.chance(0.5) ? kVowels[rng.below(kVowels.size())]
                                              : kLetters[rng.below(kLetters.size())]);
  }
  return t;
}

bool far_from_all(const std::string& candidate, const std::vector<std::string>& pool) {
  return std::all_of(pool.begin(), pool.end(),
                     [&](const std::string& other) { return jaro(candidate, other) <= kMaxCrossEntityJaro; });
}

// Values for one column: entity_count entries of `tokens` tokens each.
// No token is reused, and tokens as well as whole values are pairwise at
// most kMaxCrossEntityJaro apart.
std::vector<std::string> column_values(Rng& rng, std::size_t entity_count, std::size_t tokens,
                                       std::string_view column) {
  constexpr std::size_t kAttempts = 20000;
  std::vector<std::string> token_pool;
  std::vector<std::string> values;
  values.reserve(entity_count);
  for (std::size_t e = 0; e < entity_count; ++e) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < kAttempts && !placed; ++attempt) {
      std::vector<std::string> parts;
      bool ok = true;
      for (std::size_t k = 0; k < tokens && ok; ++k) {
        auto t = random_token(rng);
        ok = far_from_all(t, token_pool) && far_from_all(t, parts);
        parts.push_back(std::move(t));
      }
      if (!ok) continue;
      std::string value = parts.front();
      for (std::size_t k = 1; k < parts.size(); ++k) value += " " + parts[k];
      if (tokens > 1 && !far_from_all(value, values)) continue;
      token_pool.insert(token_pool.end(), parts.begin(), parts.end());
      values.push_back(std::move(value));
      placed = true;
    }
    if (!placed) {
      throw ConfigError(fmt::format("corpus: could not place {} distinct values in column '{}'", entity_count, column));
    }
  }
  return values;
}

std::vector<std::string> split_tokens(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto end = value.find(' ', start);
    const auto stop = end == std::string::npos ? value.size() : end;
    if (stop > start) out.push_back(value.substr(start, stop - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

std::string corrupt(Rng& rng, const std::string& value, const CorruptionProfile& p) {
  if (rng.chance(p.blank)) return "";
  if (rng.chance(p.garble)) {
    std::string digits;
    const std::size_t len = rng.between(3, 6);
    for (std::size_t i = 0; i < len; ++i) digits.push_back(static_cast<char>('0' + rng.below(10)));
    return digits;
  }
  std::string out = value;
  if (rng.chance(p.truncate)) {
    const auto tokens = split_tokens(out);
    if (tokens.size() > 1) out = tokens[rng.below(tokens.size())];
  }
  if (rng.chance(p.typo)) {
    std::vector<std::size_t> letters;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i] != ' ') letters.push_back(i);
    }
    if (!letters.empty()) {
      const auto pos = letters[rng.below(letters.size())];
      char replacement;
      do {
        replacement = kLetters[rng.below(kLetters.size())];
      } while (replacement == out[pos]);
      out[pos] = replacement;
    }
  }
  if (rng.chance(p.transpose)) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (out[i] != ' ' && out[i + 1] != ' ' && out[i] != out[i + 1]) spots.push_back(i);
    }
    if (!spots.empty()) {
      const auto pos = spots[rng.below(spots.size())];
      std::swap(out[pos], out[pos + 1]);
    }
  }
  return out;
}

}  // namespace

Corpus generate_corpus(const CorpusSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  std::vector<std::vector<std::string>> columns;
  for (const auto& c : spec.columns) columns.push_back(column_values(rng, spec.entity_count, c.tokens, c.name));

  struct Row {
    std::size_t entity;
    std::vector<std::string> values;
  };
  std::vector<Row> rows;
  for (std::size_t e = 0; e < spec.entity_count; ++e) {
    const std::size_t copies = rng.between(spec.min_records, spec.max_records);
    std::vector<std::string> canonical;
    for (const auto& col : columns) canonical.push_back(col[e]);
    rows.push_back({e, canonical});
    for (std::size_t d = 1; d < copies; ++d) {
      std::vector<std::string> values;
      for (const auto& v : canonical) values.push_back(corrupt(rng, v, spec.corruption));
      rows.push_back({e, std::move(values)});
    }
  }

  // Fisher-Yates
  for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.below(i)]);

  Corpus corpus;
  corpus.table.header.push_back("entity_ref");
  for (const auto& c : spec.columns) corpus.table.header.push_back(c.name);
  std::vector<std::size_t> labels;
  labels.reserve(rows.size());
  for (auto& r : rows) {
    std::vector<std::string> line;
    line.push_back(fmt::format("E{:05}", r.entity));
    for (auto& v : r.values) line.push_back(std::move(v));
    corpus.table.rows.push_back(std::move(line));
    labels.push_back(r.entity);
  }
  corpus.gold = Clustering::from_labels(labels);

  for (const auto& c : spec.columns) {
    FieldSpec f;
    f.name = c.name;
    f.rule = ValidityRule::parse("alphabetic");
    corpus.schema.fields.push_back(std::move(f));
  }
  corpus.schema.metric = StringMetric::from_name("jaro");
  corpus.schema.sc_mode = ScMode::graded;
  return corpus;
}

}  // namespace clusim
