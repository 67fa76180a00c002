#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace clusim {

/// How mismatched positions of the matched sequences turn into t.
enum class TranspositionMode {
  literal,  ///< every mismatched position counts as one transposition
  half,     ///< classical Jaro: floor(mismatches / 2)
};

struct JaroOptions {
  TranspositionMode transpositions = TranspositionMode::literal;
  bool case_fold = true;
};

/// Outcome of the common-character scan between two strings.
struct MatchResult {
  std::size_t common_count = 0;
  std::u32string matched_s1;  ///< s1's matched characters in s1 order
  std::u32string matched_s2;  ///< s2's matched characters in s2 order
  std::size_t transpositions = 0;
};

/// Scans s1 left to right; each s1[i] takes the leftmost unmatched equal
/// s2[j] with 2*|i-j| <= min(|s1|, |s2|). The window test is done in
/// integers so there is no rounding of the half-length bound.
/// `transpositions` is left at zero.
MatchResult common_characters(std::u32string_view s1, std::u32string_view s2);

/// UTF-8 convenience overload; folds case first when `case_fold` is set.
MatchResult common_characters(std::string_view s1, std::string_view s2, bool case_fold = true);

/// Number of positions where the two matched sequences disagree.
/// Throws ContractViolation when the lengths differ.
std::size_t count_transpositions(std::u32string_view matched_s1, std::u32string_view matched_s2);

/// Jaro similarity over scalar sequences (no folding here).
/// Both empty -> 1, one empty or no common characters -> 0.
double jaro(std::u32string_view s1, std::u32string_view s2,
            TranspositionMode mode = TranspositionMode::literal);

double jaro(std::string_view s1, std::string_view s2, const JaroOptions& options = {});

/// Prefix-boosted Jaro: j + l * p * (1 - j), where l is the shared prefix
/// length capped at 4. Throws ConfigError unless 0 <= prefix_scale <= 0.25.
double jaro_winkler(std::string_view s1, std::string_view s2, double prefix_scale,
                    const JaroOptions& options = {});

double jaro_winkler(std::u32string_view s1, std::u32string_view s2, double prefix_scale,
                    TranspositionMode mode = TranspositionMode::literal);

enum class MetricKind { jaro, jaro_winkler };

/// A configured field metric, addressable by the names "jaro" and
/// "jaro_winkler". Calls are pure and thread-safe.
class StringMetric {
 public:
  StringMetric() = default;
  StringMetric(MetricKind kind, JaroOptions options, double prefix_scale = 0.1);

  /// Throws ConfigError for unknown names or an out-of-range prefix scale.
  static StringMetric from_name(std::string_view name, JaroOptions options = {},
                                double prefix_scale = 0.1);

  double operator()(std::string_view s1, std::string_view s2) const;

  MetricKind kind() const noexcept { return kind_; }
  const JaroOptions& options() const noexcept { return options_; }
  double prefix_scale() const noexcept { return prefix_scale_; }
  std::string_view name() const noexcept;

 private:
  MetricKind kind_ = MetricKind::jaro;
  JaroOptions options_{};
  double prefix_scale_ = 0.1;
};

}  // namespace clusim
