#include "clusim/record_clustering.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "clusim/errors.hpp"

namespace clusim {

// ---------------------------------------------------------------------------
// SimilarityMatrix

SimilarityMatrix::SimilarityMatrix(std::size_t n)
    : n_(n), values_(n > 1 ? n * (n - 1) / 2 : 0, 0.0) {}

void SimilarityMatrix::set(ItemId i, ItemId j, double value) {
  if (i == j) throw ContractViolation("SimilarityMatrix::set: diagonal is fixed at 1");
  if (i >= n_ || j >= n_) {
    throw ContractViolation(fmt::format("SimilarityMatrix::set: pair ({}, {}) outside {}x{}", i, j, n_, n_));
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ContractViolation(
        fmt::format("similarity for pair ({}, {}) is {}, outside [0, 1]", std::min(i, j), std::max(i, j), value));
  }
  values_[index(i, j)] = value;
}

// ---------------------------------------------------------------------------
// Clustering

Clustering::Clustering(std::vector<std::vector<ItemId>> clusters) : clusters_(std::move(clusters)) {
  std::vector<ItemId> all;
  for (auto& c : clusters_) {
    if (c.empty()) throw ContractViolation("Clustering: empty cluster");
    std::sort(c.begin(), c.end());
    all.insert(all.end(), c.begin(), c.end());
  }
  std::sort(all.begin(), all.end());
  if (auto dup = std::adjacent_find(all.begin(), all.end()); dup != all.end()) {
    throw ContractViolation(fmt::format("Clustering: item {} appears in more than one cluster", *dup));
  }
  std::sort(clusters_.begin(), clusters_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

Clustering Clustering::from_labels(std::span<const std::size_t> labels) {
  std::vector<std::size_t> order(labels.begin(), labels.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::vector<std::vector<ItemId>> clusters(order.size());
  for (ItemId i = 0; i < labels.size(); ++i) {
    const auto slot = std::lower_bound(order.begin(), order.end(), labels[i]) - order.begin();
    clusters[static_cast<std::size_t>(slot)].push_back(i);
  }
  return Clustering(std::move(clusters));
}

Clustering Clustering::singletons(std::size_t n) {
  std::vector<std::vector<ItemId>> clusters;
  clusters.reserve(n);
  for (ItemId i = 0; i < n; ++i) clusters.push_back({i});
  return Clustering(std::move(clusters));
}

std::size_t Clustering::item_count() const noexcept {
  std::size_t total = 0;
  for (const auto& c : clusters_) total += c.size();
  return total;
}

std::vector<ItemId> Clustering::universe() const {
  std::vector<ItemId> all;
  all.reserve(item_count());
  for (const auto& c : clusters_) all.insert(all.end(), c.begin(), c.end());
  std::sort(all.begin(), all.end());
  return all;
}

bool Clustering::refines(const Clustering& coarser) const {
  std::vector<std::pair<ItemId, std::size_t>> owner;
  for (std::size_t k = 0; k < coarser.clusters_.size(); ++k) {
    for (ItemId id : coarser.clusters_[k]) owner.emplace_back(id, k);
  }
  std::sort(owner.begin(), owner.end());
  auto find_owner = [&](ItemId id) -> std::optional<std::size_t> {
    auto it = std::lower_bound(owner.begin(), owner.end(), std::make_pair(id, std::size_t{0}));
    if (it == owner.end() || it->first != id) return std::nullopt;
    return it->second;
  };
  for (const auto& c : clusters_) {
    const auto first = find_owner(c.front());
    if (!first) return false;
    for (ItemId id : c) {
      if (find_owner(id) != first) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Matrix construction

SimilarityMatrix build_similarity_matrix(std::size_t n, const PairScorer& scorer, unsigned threads) {
  SimilarityMatrix matrix(n);
  if (n < 2) return matrix;

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n - 1));

  struct Failure {
    ItemId i = 0;
    ItemId j = 0;
    std::exception_ptr error;
  };
  std::vector<std::optional<Failure>> failures(threads);

  auto work = [&](unsigned worker) {
    for (ItemId i = worker; i + 1 < n; i += threads) {
      for (ItemId j = i + 1; j < n; ++j) {
        try {
          matrix.set(i, j, scorer(i, j));
        } catch (...) {
          failures[worker] = Failure{i, j, std::current_exception()};
          return;
        }
      }
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  const std::optional<Failure>* first = nullptr;
  for (const auto& f : failures) {
    if (f && (!first || std::tie(f->i, f->j) < std::tie((*first)->i, (*first)->j))) first = &f;
  }
  if (first) std::rethrow_exception((*first)->error);
  return matrix;
}

// ---------------------------------------------------------------------------
// Single linkage

namespace {

void check_threshold(double t_e) {
  if (std::isnan(t_e)) throw ConfigError("single linkage threshold is NaN");
}

// Working copy of the strict upper triangle; rows of merged clusters are
// folded into the surviving representative with max().
class WorkingMatrix {
 public:
  explicit WorkingMatrix(const SimilarityMatrix& m) : n_(m.size()), values_(n_ > 1 ? n_ * (n_ - 1) / 2 : 0) {
    for (ItemId i = 0; i < n_; ++i) {
      for (ItemId j = i + 1; j < n_; ++j) values_[index(i, j)] = m(i, j);
    }
  }

  double get(ItemId i, ItemId j) const noexcept { return values_[index(i, j)]; }
  void put(ItemId i, ItemId j, double v) noexcept { values_[index(i, j)] = v; }

 private:
  std::size_t index(ItemId i, ItemId j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  std::size_t n_;
  std::vector<double> values_;
};

constexpr ItemId kNone = std::numeric_limits<ItemId>::max();

}  // namespace

Linkage single_linkage_merges(const SimilarityMatrix& matrix, double t_e) {
  check_threshold(t_e);
  const std::size_t n = matrix.size();
  Linkage out;
  if (n == 0) return out;

  WorkingMatrix work(matrix);
  std::vector<char> active(n, 1);
  std::vector<std::vector<ItemId>> members(n);
  for (ItemId i = 0; i < n; ++i) members[i] = {i};

  // Nearest neighbour per active row; ties resolved to the smallest id.
  std::vector<ItemId> best(n, kNone);
  std::vector<double> best_sim(n, -1.0);
  auto recompute = [&](ItemId r) {
    best[r] = kNone;
    best_sim[r] = -1.0;
    for (ItemId c = 0; c < n; ++c) {
      if (c == r || !active[c]) continue;
      const double s = work.get(r, c);
      if (s > best_sim[r]) {
        best_sim[r] = s;
        best[r] = c;
      }
    }
  };
  for (ItemId r = 0; r < n; ++r) recompute(r);

  for (std::size_t remaining = n; remaining > 1; --remaining) {
    ItemId pick = kNone;
    ItemId pick_lo = kNone, pick_hi = kNone;
    for (ItemId r = 0; r < n; ++r) {
      if (!active[r] || best[r] == kNone) continue;
      const ItemId lo = std::min(r, best[r]);
      const ItemId hi = std::max(r, best[r]);
      if (pick == kNone || best_sim[r] > best_sim[pick] ||
          (best_sim[r] == best_sim[pick] && std::tie(lo, hi) < std::tie(pick_lo, pick_hi))) {
        pick = r;
        pick_lo = lo;
        pick_hi = hi;
      }
    }
    if (pick == kNone || best_sim[pick] < t_e) break;

    const ItemId a = pick_lo;
    const ItemId b = pick_hi;
    const double sim = best_sim[pick];

    Merge merge{a, b, sim, kNone, kNone};
    for (ItemId i : members[a]) {
      for (ItemId j : members[b]) {
        if (matrix(i, j) != sim) continue;
        const ItemId lo = std::min(i, j);
        const ItemId hi = std::max(i, j);
        if (merge.witness_a == kNone || std::tie(lo, hi) < std::tie(merge.witness_a, merge.witness_b)) {
          merge.witness_a = lo;
          merge.witness_b = hi;
        }
      }
    }
    out.merges.push_back(merge);

    for (ItemId c = 0; c < n; ++c) {
      if (!active[c] || c == a || c == b) continue;
      work.put(a, c, std::max(work.get(a, c), work.get(b, c)));
    }
    active[b] = 0;
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();

    for (ItemId r = 0; r < n; ++r) {
      if (!active[r]) continue;
      if (r == a || best[r] == a || best[r] == b) {
        recompute(r);
      } else {
        const double s = work.get(r, a);
        if (s > best_sim[r] || (s == best_sim[r] && a < best[r])) {
          best_sim[r] = s;
          best[r] = a;
        }
      }
    }
  }

  std::vector<std::vector<ItemId>> clusters;
  for (ItemId r = 0; r < n; ++r) {
    if (active[r]) clusters.push_back(std::move(members[r]));
  }
  out.clustering = Clustering(std::move(clusters));
  return out;
}

Clustering single_linkage(const SimilarityMatrix& matrix, double t_e) {
  return single_linkage_merges(matrix, t_e).clustering;
}

Clustering threshold_components(const SimilarityMatrix& matrix, double t_e) {
  check_threshold(t_e);
  const std::size_t n = matrix.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (ItemId i = 0; i < n; ++i) {
    for (ItemId j = i + 1; j < n; ++j) {
      if (matrix(i, j) < t_e) continue;
      const auto ri = find(i);
      const auto rj = find(j);
      if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
    }
  }
  std::vector<std::size_t> labels(n);
  for (ItemId i = 0; i < n; ++i) labels[i] = find(i);
  return Clustering::from_labels(labels);
}

}  // namespace clusim
