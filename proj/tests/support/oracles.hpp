#pragma once

// Slow, literal reference implementations used only by the tests. They
// share no code with the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// Common-character scan, transposition count and score, written straight
// from the three steps: lengths; matches with |i - j| <= min/2 on 1-based
// positions (leftmost free partner); positional mismatches of the ordered
// matched characters. `half` floors the mismatch count over two.
inline double jaro(const std::string& s1, const std::string& s2, bool half = false) {
  const std::size_t len1 = s1.size();
  const std::size_t len2 = s2.size();
  if (len1 == 0 && len2 == 0) return 1.0;
  if (len1 == 0 || len2 == 0) return 0.0;
  const std::size_t shorter = std::min(len1, len2);

  std::vector<bool> used1(len1 + 1, false), used2(len2 + 1, false);
  for (std::size_t i = 1; i <= len1; ++i) {
    for (std::size_t j = 1; j <= len2; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      // |i - j| <= min / 2  evaluated as 2 |i - j| <= min
      if (2 * gap <= shorter && !used2[j] && s1[i - 1] == s2[j - 1]) {
        used1[i] = true;
        used2[j] = true;
        break;
      }
    }
  }
  std::string m1, m2;
  for (std::size_t i = 1; i <= len1; ++i)
    if (used1[i]) m1 += s1[i - 1];
  for (std::size_t j = 1; j <= len2; ++j)
    if (used2[j]) m2 += s2[j - 1];
  const std::size_t c = m1.size();
  if (c == 0) return 0.0;
  std::size_t t = 0;
  for (std::size_t k = 0; k < c; ++k)
    if (m1[k] != m2[k]) ++t;
  if (half) t /= 2;
  const double cd = static_cast<double>(c);
  return (cd / static_cast<double>(len1) + cd / static_cast<double>(len2) + (cd - static_cast<double>(t)) / cd) /
         3.0;
}

using Dense = std::vector<std::vector<double>>;
using Partition = std::vector<std::vector<std::size_t>>;

inline Partition canonical(Partition p) {
  for (auto& c : p) std::sort(c.begin(), c.end());
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

// Agglomerative single linkage with no caching: every step recomputes the
// max-member similarity of every cluster pair from the original matrix.
inline Partition naive_single_linkage(const Dense& sim, double threshold) {
  Partition clusters;
  for (std::size_t i = 0; i < sim.size(); ++i) clusters.push_back({i});
  while (clusters.size() > 1) {
    double best = -1.0;
    std::size_t ba = 0, bb = 0;
    std::pair<std::size_t, std::size_t> best_key{SIZE_MAX, SIZE_MAX};
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        double link = -1.0;
        for (auto i : clusters[a])
          for (auto j : clusters[b]) link = std::max(link, sim[i][j]);
        const auto ida = *std::min_element(clusters[a].begin(), clusters[a].end());
        const auto idb = *std::min_element(clusters[b].begin(), clusters[b].end());
        const std::pair<std::size_t, std::size_t> key{std::min(ida, idb), std::max(ida, idb)};
        if (link > best || (link == best && key < best_key)) {
          best = link;
          best_key = key;
          ba = a;
          bb = b;
        }
      }
    }
    if (best < threshold) break;
    clusters[ba].insert(clusters[ba].end(), clusters[bb].begin(), clusters[bb].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bb));
  }
  return canonical(clusters);
}

// Weighted mean evaluated term by term in field order.
inline double naive_sr(const std::vector<double>& sc, const std::vector<int>& k, const std::vector<double>& v) {
  double K = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) K += k[i] * v[i];
  if (K == 0.0) return 0.0;
  double num = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double df = k[i] * v[i];
    num += sc[i] * df;
  }
  return num / K;
}

inline std::string random_string(std::mt19937_64& rng, const std::string& alphabet, std::size_t max_len) {
  const std::size_t len = rng() % (max_len + 1);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
  return s;
}

inline Dense random_matrix(std::mt19937_64& rng, std::size_t n, bool coarse) {
  Dense m(n, std::vector<double>(n, 1.0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Coarse values produce plenty of exact ties.
      const double x = coarse ? static_cast<double>(rng() % 11) / 10.0 : u(rng);
      m[i][j] = m[j][i] = x;
    }
  }
  return m;
}

}  // namespace oracle
