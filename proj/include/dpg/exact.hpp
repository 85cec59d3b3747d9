#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dpg/types.hpp"

namespace dpg {

/// Exact kNN lists for a query workload, plus the brute-force cost used as
/// the speedup baseline.
struct GroundTruth {
  std::size_t k = 0;
  std::vector<std::vector<Neighbor>> lists;
  /// Mean single-threaded wall time of one brute-force query, seconds.
  double baseline_seconds = 0.0;

  std::size_t size() const noexcept { return lists.size(); }
};

/// Linear scan. Returns the k closest points in (dist, id) order.
/// Throws UsageError unless 1 <= k <= n and dimensions agree.
std::vector<Neighbor> brute_force_knn(const DenseDataset& dataset, std::span<const float> query,
                                      std::size_t k);

/// Runs brute_force_knn over every query on the calling thread. One
/// untimed query warms the cache first; baseline_seconds is the mean over
/// the timed pass.
GroundTruth build_ground_truth(const DenseDataset& dataset, const QuerySet& queries, std::size_t k);

/// Exact K-NN graph by all-pairs scan (O(n^2 d)). For validating
/// approximate construction on small inputs.
NeighborGraph exact_knn_graph(const DenseDataset& dataset, std::size_t K, std::size_t threads = 1);

}  // namespace dpg
