#include "clusim/schema.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "clusim/errors.hpp"

namespace clusim {

using nlohmann::json;

std::string_view to_string(ScMode mode) noexcept {
  return mode == ScMode::graded ? "graded" : "binary";
}

std::string_view to_string(TranspositionMode mode) noexcept {
  return mode == TranspositionMode::half ? "half" : "literal";
}

void Schema::validate() const {
  if (fields.empty()) throw ConfigError("schema: at least one field is required");
  std::set<std::string_view> names;
  bool any_positive = false;
  for (const auto& f : fields) {
    if (f.name.empty()) throw ConfigError("schema: field with empty name");
    if (!names.insert(f.name).second) throw ConfigError(fmt::format("schema: duplicate field '{}'", f.name));
    if (!std::isfinite(f.weight) || f.weight < 0.0) {
      throw ConfigError(fmt::format("schema: field '{}' has invalid weight {}", f.name, f.weight));
    }
    if (!(f.t_field >= 0.0 && f.t_field <= 1.0)) {
      throw ConfigError(fmt::format("schema: field '{}' t_field {} outside [0, 1]", f.name, f.t_field));
    }
    any_positive = any_positive || f.weight > 0.0;
  }
  if (!any_positive) throw ConfigError("schema: at least one field weight must be positive");
  if (!(t_e >= 0.0 && t_e <= 1.0)) throw ConfigError(fmt::format("schema: t_e {} outside [0, 1]", t_e));
}

namespace {

[[noreturn]] void fail(std::string_view source, const std::string& what) {
  throw ConfigError(fmt::format("{}: {}", source, what));
}

double number_at(const json& obj, const char* key, double fallback, std::string_view source,
                 std::string_view where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(source, fmt::format("{}: '{}' must be a number", where, key));
  return v.get<double>();
}

std::string string_at(const json& obj, const char* key, std::string fallback, std::string_view source,
                      std::string_view where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) fail(source, fmt::format("{}: '{}' must be a string", where, key));
  return v.get<std::string>();
}

}  // namespace

Schema parse_schema(std::string_view json_text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(source, fmt::format("malformed JSON ({})", e.what()));
  }
  if (!doc.is_object()) fail(source, "top level must be an object");

  static const std::set<std::string> kTopKeys = {"metric", "prefix_scale", "transpositions", "case_fold",
                                                 "sc_mode", "t_e", "fields"};
  for (const auto& [key, _] : doc.items()) {
    if (!kTopKeys.contains(key)) fail(source, fmt::format("unknown key '{}'", key));
  }

  JaroOptions jaro;
  const auto transpositions = string_at(doc, "transpositions", "literal", source, "schema");
  if (transpositions == "literal") {
    jaro.transpositions = TranspositionMode::literal;
  } else if (transpositions == "half") {
    jaro.transpositions = TranspositionMode::half;
  } else {
    fail(source, fmt::format("transpositions must be 'literal' or 'half', got '{}'", transpositions));
  }
  if (doc.contains("case_fold")) {
    if (!doc["case_fold"].is_boolean()) fail(source, "'case_fold' must be true or false");
    jaro.case_fold = doc["case_fold"].get<bool>();
  }

  Schema schema;
  const auto metric = string_at(doc, "metric", "jaro", source, "schema");
  const double prefix_scale = number_at(doc, "prefix_scale", 0.1, source, "schema");
  try {
    schema.metric = StringMetric::from_name(metric, jaro, prefix_scale);
  } catch (const ConfigError& e) {
    fail(source, e.what());
  }

  const auto sc_mode = string_at(doc, "sc_mode", "binary", source, "schema");
  if (sc_mode == "binary") {
    schema.sc_mode = ScMode::binary;
  } else if (sc_mode == "graded") {
    schema.sc_mode = ScMode::graded;
  } else {
    fail(source, fmt::format("sc_mode must be 'binary' or 'graded', got '{}'", sc_mode));
  }
  schema.t_e = number_at(doc, "t_e", 0.8, source, "schema");

  if (!doc.contains("fields") || !doc["fields"].is_array()) fail(source, "'fields' must be an array");
  static const std::set<std::string> kFieldKeys = {"name", "weight", "rule", "t_field"};
  std::size_t index = 0;
  for (const auto& f : doc["fields"]) {
    const auto where = fmt::format("fields[{}]", index++);
    if (!f.is_object()) fail(source, fmt::format("{} must be an object", where));
    for (const auto& [key, _] : f.items()) {
      if (!kFieldKeys.contains(key)) fail(source, fmt::format("{}: unknown key '{}'", where, key));
    }
    FieldSpec spec;
    spec.name = string_at(f, "name", "", source, where);
    if (spec.name.empty()) fail(source, fmt::format("{}: 'name' is required", where));
    spec.weight = number_at(f, "weight", 1.0, source, where);
    spec.t_field = number_at(f, "t_field", 0.8, source, where);
    try {
      spec.rule = ValidityRule::parse(string_at(f, "rule", "nonempty", source, where));
    } catch (const ConfigError& e) {
      fail(source, fmt::format("{} ('{}'): {}", where, spec.name, e.what()));
    }
    schema.fields.push_back(std::move(spec));
  }

  try {
    schema.validate();
  } catch (const ConfigError& e) {
    fail(source, e.what());
  }
  return schema;
}

Schema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(fmt::format("{}: cannot open schema file", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_schema(buffer.str(), path.string());
  } catch (const ConfigError& e) {
    throw LoadError(e.what());
  }
}

std::string schema_to_json(const Schema& schema) {
  json doc = json::object();
  doc["metric"] = std::string(schema.metric.name());
  if (schema.metric.kind() == MetricKind::jaro_winkler) doc["prefix_scale"] = schema.metric.prefix_scale();
  doc["transpositions"] = std::string(to_string(schema.metric.options().transpositions));
  doc["case_fold"] = schema.metric.options().case_fold;
  doc["sc_mode"] = std::string(to_string(schema.sc_mode));
  doc["t_e"] = schema.t_e;
  json fields = json::array();
  for (const auto& f : schema.fields) {
    fields.push_back({{"name", f.name}, {"weight", f.weight}, {"rule", f.rule.spec()}, {"t_field", f.t_field}});
  }
  doc["fields"] = std::move(fields);
  return doc.dump(2) + "\n";
}

}  // namespace clusim
