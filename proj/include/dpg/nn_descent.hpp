#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "dpg/types.hpp"

namespace dpg {

struct NnDescentParams {
  std::size_t K = 40;
  /// Fraction of each list sampled into a local join (rho).
  double sample_rate = 0.5;
  /// Stop once an iteration replaces fewer than termination * K * n entries (zeta).
  double termination = 0.002;
  std::size_t max_iters = 30;
  std::uint64_t seed = 42;
  /// 1 = serial and bit-reproducible. More threads run the local joins
  /// concurrently; the result satisfies the same invariants but may differ.
  std::size_t threads = 1;
};

/// Progress snapshot handed to the observer after every iteration.
struct NnDescentIteration {
  std::size_t iteration = 0;  // 1-based
  std::size_t updates = 0;    // list entries replaced in this iteration
  const std::vector<std::vector<Neighbor>>& lists;
};

using NnDescentObserver = std::function<void(const NnDescentIteration&)>;

/// Approximate K-NN graph by NN-descent: random initial lists refined by
/// local joins over sampled forward and reverse neighbors, with new/old
/// flags so pairs already joined are not compared again.
/// Throws UsageError when n <= K or a parameter is out of range.
NeighborGraph build_knn_graph(const DenseDataset& dataset, const NnDescentParams& params,
                              const NnDescentObserver& observer = {});

/// Mean over nodes of |approx(u) ∩ exact(u)| / K.
double graph_recall(const NeighborGraph& approx, const NeighborGraph& exact);

}  // namespace dpg
