#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace clusim {

using ItemId = std::size_t;

/// Symmetric n x n similarity matrix with unit diagonal. Only the strict
/// upper triangle is stored.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  double operator()(ItemId i, ItemId j) const noexcept {
    if (i == j) return 1.0;
    return values_[index(i, j)];
  }

  /// Sets entries (i,j) and (j,i). Throws ContractViolation for i == j,
  /// out-of-range ids, or a value outside [0, 1].
  void set(ItemId i, ItemId j, double value);

 private:
  std::size_t index(ItemId i, ItemId j) const noexcept {
    if (i > j) std::swap(i, j);
    // row-major strict upper triangle
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// A partition of item ids into disjoint non-empty clusters.
///
/// Stored canonically: members ascending inside each cluster, clusters
/// ordered by their smallest member. Two clusterings of the same items
/// compare equal iff they are the same partition.
class Clustering {
 public:
  Clustering() = default;

  /// Throws ContractViolation for empty clusters or an id used twice.
  explicit Clustering(std::vector<std::vector<ItemId>> clusters);

  /// Cluster i = items with label i; labels need not be dense.
  static Clustering from_labels(std::span<const std::size_t> labels);

  static Clustering singletons(std::size_t n);

  const std::vector<std::vector<ItemId>>& clusters() const noexcept { return clusters_; }
  std::size_t size() const noexcept { return clusters_.size(); }
  bool empty() const noexcept { return clusters_.empty(); }

  /// Total number of items over all clusters.
  std::size_t item_count() const noexcept;

  /// Sorted list of every item id.
  std::vector<ItemId> universe() const;

  /// True when every cluster of *this lies inside some cluster of `coarser`.
  bool refines(const Clustering& coarser) const;

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<std::vector<ItemId>> clusters_;
};

using PairScorer = std::function<double(ItemId, ItemId)>;

/// Fills entries (i,j), i<j, with scorer(i,j). Work is split over
/// `threads` workers (0 = hardware concurrency). A score outside [0, 1]
/// raises ContractViolation naming the offending pair; with several bad
/// pairs the lexicographically smallest is reported.
SimilarityMatrix build_similarity_matrix(std::size_t n, const PairScorer& scorer,
                                         unsigned threads = 0);

/// One agglomeration step. `left` < `right` are the smallest members of
/// the merged clusters; (witness_a, witness_b) is the lexicographically
/// smallest item pair across them that attains `similarity`.
struct Merge {
  ItemId left = 0;
  ItemId right = 0;
  double similarity = 0.0;
  ItemId witness_a = 0;
  ItemId witness_b = 0;
};

struct Linkage {
  Clustering clustering;
  std::vector<Merge> merges;
};

/// Agglomerative single linkage in similarity space. Starts from
/// singletons and repeatedly merges the two clusters with the highest
/// max-member similarity, collapsing their rows of the working matrix,
/// until the best available similarity is below `t_e`. Ties go to the
/// pair with the smallest (min id, max id). Throws ConfigError for NaN.
Linkage single_linkage_merges(const SimilarityMatrix& matrix, double t_e);

Clustering single_linkage(const SimilarityMatrix& matrix, double t_e);

/// Connected components of the graph {(i,j) : s(i,j) >= t_e}, by
/// union-find. Produces the same partition as single_linkage.
Clustering threshold_components(const SimilarityMatrix& matrix, double t_e);

}  // namespace clusim
