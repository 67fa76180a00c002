#pragma once

#include <cstddef>
#include <memory>
#include <regex>
#include <string>
#include <string_view>

namespace clusim {

/// Three-way taxonomy of a field value.
enum class ValueClass { invalid, empty, valid };

std::string_view to_string(ValueClass value_class) noexcept;

/// Format check applied to a field's trimmed, case-folded value.
///
/// Accepted specifications:
///   nonempty           any non-blank value
///   alphabetic         letters plus the separators space, '-', '\'', '.',
///                      with at least one letter
///   numeric            ASCII digits only
///   regex:<pattern>    ECMAScript std::regex, must match the whole value
///   length:<min>-<max> character count (scalar values) within [min, max]
class ValidityRule {
 public:
  enum class Kind { nonempty, alphabetic, numeric, regex, length };

  ValidityRule() = default;

  /// Throws ConfigError for malformed specifications (unknown kind, bad
  /// regex, min > max, non-numeric bounds).
  static ValidityRule parse(std::string_view spec);

  /// `value` is expected to be already trimmed and folded.
  bool accepts(std::string_view value) const;

  Kind kind() const noexcept { return kind_; }
  const std::string& spec() const noexcept { return spec_; }

 private:
  Kind kind_ = Kind::nonempty;
  std::string spec_ = "nonempty";
  std::shared_ptr<const std::regex> pattern_;
  std::size_t min_length_ = 0;
  std::size_t max_length_ = 0;
};

/// Trims surrounding whitespace and optionally folds case; returns UTF-8.
std::string normalize_value(std::string_view raw, bool case_fold = true);

/// Empty if nothing remains after trimming; otherwise Invalid when the
/// rule rejects the normalized value, Valid when it accepts it.
ValueClass classify_value(std::string_view raw, const ValidityRule& rule, bool case_fold = true);

}  // namespace clusim
