#include "clusim/validity.hpp"

#include <charconv>

#include <fmt/format.h>

#include "clusim/errors.hpp"
#include "clusim/unicode.hpp"

namespace clusim {

std::string_view to_string(ValueClass value_class) noexcept {
  switch (value_class) {
    case ValueClass::invalid:
      return "invalid";
    case ValueClass::empty:
      return "empty";
    case ValueClass::valid:
      return "valid";
  }
  return "?";
}

namespace {

std::size_t parse_bound(std::string_view text, std::string_view spec) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError(fmt::format("rule '{}': length bound '{}' is not a non-negative integer", spec, text));
  }
  return value;
}

}  // namespace

ValidityRule ValidityRule::parse(std::string_view spec) {
  ValidityRule rule;
  rule.spec_ = std::string(spec);
  if (spec == "nonempty") {
    rule.kind_ = Kind::nonempty;
  } else if (spec == "alphabetic") {
    rule.kind_ = Kind::alphabetic;
  } else if (spec == "numeric") {
    rule.kind_ = Kind::numeric;
  } else if (spec.starts_with("regex:")) {
    rule.kind_ = Kind::regex;
    const std::string pattern(spec.substr(6));
    try {
      rule.pattern_ = std::make_shared<const std::regex>(pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw ConfigError(fmt::format("rule '{}': invalid regular expression ({})", spec, e.what()));
    }
  } else if (spec.starts_with("length:")) {
    rule.kind_ = Kind::length;
    const auto body = spec.substr(7);
    const auto dash = body.find('-');
    if (dash == std::string_view::npos) {
      throw ConfigError(fmt::format("rule '{}': expected length:<min>-<max>", spec));
    }
    rule.min_length_ = parse_bound(body.substr(0, dash), spec);
    rule.max_length_ = parse_bound(body.substr(dash + 1), spec);
    if (rule.min_length_ > rule.max_length_) {
      throw ConfigError(fmt::format("rule '{}': min exceeds max", spec));
    }
  } else {
    throw ConfigError(fmt::format(
        "unknown validity rule '{}' (expected nonempty, alphabetic, numeric, regex:<pattern>, length:<min>-<max>)",
        spec));
  }
  return rule;
}

bool ValidityRule::accepts(std::string_view value) const {
  switch (kind_) {
    case Kind::nonempty:
      return !value.empty();
    case Kind::alphabetic: {
      bool any_letter = false;
      for (char32_t c : unicode::decode_utf8(value)) {
        if (unicode::is_letter(c)) {
          any_letter = true;
        } else if (!(unicode::is_space(c) || c == U'-' || c == U'\'' || c == U'.')) {
          return false;
        }
      }
      return any_letter;
    }
    case Kind::numeric:
      if (value.empty()) return false;
      for (char c : value) {
        if (c < '0' || c > '9') return false;
      }
      return true;
    case Kind::regex:
      return std::regex_match(value.begin(), value.end(), *pattern_);
    case Kind::length: {
      const auto n = unicode::decode_utf8(value).size();
      return n >= min_length_ && n <= max_length_;
    }
  }
  return false;
}

std::string normalize_value(std::string_view raw, bool case_fold) {
  const auto decoded = unicode::decode_utf8(raw);
  auto trimmed = unicode::trim(decoded);
  if (!case_fold) return unicode::encode_utf8(trimmed);
  return unicode::encode_utf8(unicode::fold_case(trimmed));
}

ValueClass classify_value(std::string_view raw, const ValidityRule& rule, bool case_fold) {
  const auto value = normalize_value(raw, case_fold);
  if (value.empty()) return ValueClass::empty;
  return rule.accepts(value) ? ValueClass::valid : ValueClass::invalid;
}

}  // namespace clusim
