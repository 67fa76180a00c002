#include "clusim/string_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "clusim/errors.hpp"
#include "clusim/unicode.hpp"

namespace clusim {

namespace {

constexpr std::size_t kMaxPrefix = 4;

void check_prefix_scale(double prefix_scale) {
  if (!(prefix_scale >= 0.0 && prefix_scale <= 0.25)) {
    throw ConfigError(fmt::format("prefix_scale must lie in [0, 0.25], got {}", prefix_scale));
  }
}

std::u32string prepare(std::string_view s, bool case_fold) {
  auto decoded = unicode::decode_utf8(s);
  if (case_fold) {
    for (auto& c : decoded) c = unicode::fold_case(c);
  }
  return decoded;
}

}  // namespace

MatchResult common_characters(std::u32string_view s1, std::u32string_view s2) {
  MatchResult result;
  const std::size_t min_len = std::min(s1.size(), s2.size());
  std::vector<char> taken(s2.size(), 0);
  std::vector<char> s1_matched(s1.size(), 0);

  for (std::size_t i = 0; i < s1.size(); ++i) {
    // 2*|i-j| <= min_len  <=>  |i-j| <= min_len / 2 (rounded down)
    const std::size_t reach = min_len / 2;
    const std::size_t lo = i >= reach ? i - reach : 0;
    const std::size_t hi = std::min(s2.size(), i + reach + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (!taken[j] && s2[j] == s1[i]) {
        taken[j] = 1;
        s1_matched[i] = 1;
        break;
      }
    }
  }

  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (s1_matched[i]) result.matched_s1.push_back(s1[i]);
  }
  for (std::size_t j = 0; j < s2.size(); ++j) {
    if (taken[j]) result.matched_s2.push_back(s2[j]);
  }
  result.common_count = result.matched_s1.size();
  return result;
}

MatchResult common_characters(std::string_view s1, std::string_view s2, bool case_fold) {
  const auto a = prepare(s1, case_fold);
  const auto b = prepare(s2, case_fold);
  return common_characters(std::u32string_view(a), std::u32string_view(b));
}

std::size_t count_transpositions(std::u32string_view matched_s1, std::u32string_view matched_s2) {
  if (matched_s1.size() != matched_s2.size()) {
    throw ContractViolation(fmt::format("count_transpositions: sequence lengths differ ({} vs {})",
                                        matched_s1.size(), matched_s2.size()));
  }
  std::size_t t = 0;
  for (std::size_t i = 0; i < matched_s1.size(); ++i) {
    if (matched_s1[i] != matched_s2[i]) ++t;
  }
  return t;
}

double jaro(std::u32string_view s1, std::u32string_view s2, TranspositionMode mode) {
  if (s1.empty() && s2.empty()) return 1.0;
  if (s1.empty() || s2.empty()) return 0.0;

  const auto match = common_characters(s1, s2);
  if (match.common_count == 0) return 0.0;

  std::size_t t = count_transpositions(match.matched_s1, match.matched_s2);
  if (mode == TranspositionMode::half) t /= 2;

  const double c = static_cast<double>(match.common_count);
  const double l1 = static_cast<double>(s1.size());
  const double l2 = static_cast<double>(s2.size());
  return (c / l1 + c / l2 + (c - static_cast<double>(t)) / c) / 3.0;
}

double jaro(std::string_view s1, std::string_view s2, const JaroOptions& options) {
  const auto a = prepare(s1, options.case_fold);
  const auto b = prepare(s2, options.case_fold);
  return jaro(std::u32string_view(a), std::u32string_view(b), options.transpositions);
}

double jaro_winkler(std::u32string_view s1, std::u32string_view s2, double prefix_scale,
                    TranspositionMode mode) {
  check_prefix_scale(prefix_scale);
  const double j = jaro(s1, s2, mode);
  const std::size_t cap = std::min({s1.size(), s2.size(), kMaxPrefix});
  std::size_t prefix = 0;
  while (prefix < cap && s1[prefix] == s2[prefix]) ++prefix;
  return std::min(1.0, j + static_cast<double>(prefix) * prefix_scale * (1.0 - j));
}

double jaro_winkler(std::string_view s1, std::string_view s2, double prefix_scale,
                    const JaroOptions& options) {
  check_prefix_scale(prefix_scale);
  const auto a = prepare(s1, options.case_fold);
  const auto b = prepare(s2, options.case_fold);
  return jaro_winkler(std::u32string_view(a), std::u32string_view(b), prefix_scale,
                      options.transpositions);
}

StringMetric::StringMetric(MetricKind kind, JaroOptions options, double prefix_scale)
    : kind_(kind), options_(options), prefix_scale_(prefix_scale) {
  check_prefix_scale(prefix_scale);
}

StringMetric StringMetric::from_name(std::string_view name, JaroOptions options,
                                     double prefix_scale) {
  if (name == "jaro") return StringMetric(MetricKind::jaro, options, prefix_scale);
  if (name == "jaro_winkler") return StringMetric(MetricKind::jaro_winkler, options, prefix_scale);
  throw ConfigError(fmt::format("unknown metric '{}' (expected jaro or jaro_winkler)", name));
}

double StringMetric::operator()(std::string_view s1, std::string_view s2) const {
  if (kind_ == MetricKind::jaro_winkler) return jaro_winkler(s1, s2, prefix_scale_, options_);
  return jaro(s1, s2, options_);
}

std::string_view StringMetric::name() const noexcept {
  return kind_ == MetricKind::jaro_winkler ? "jaro_winkler" : "jaro";
}

}  // namespace clusim
