#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpg/exact.hpp"
#include "dpg/types.hpp"

namespace dpg {

struct RelativeContrast {
  double rc = 0.0;    // mean(D_mean) / mean(D_min)
  double rc_k = 0.0;  // mean(D_mean) / mean(D_knn)
  std::size_t queries_used = 0;
  std::size_t queries_excluded = 0;  // D_min == 0
  std::size_t mean_sample_size = 0;  // points averaged into each D_mean
};

struct LidEstimate {
  double lid = 0.0;  // +inf when some distance profile is flat
  std::size_t queries_used = 0;
  std::size_t queries_dropped = 0;  // a zero neighbor distance
  bool diverged = false;
};

struct HardnessReport {
  RelativeContrast contrast;
  LidEstimate lid;
  std::size_t k = 0;
  std::size_t lid_neighbors = 0;
};

/// Default cap on the number of points averaged into D_mean. Larger
/// datasets use a seeded uniform sample of this size.
inline constexpr std::size_t kFullScanLimit = 100000;

/// Relative contrast of a workload. Per query: D_min (exact NN distance),
/// D_knn (exact k-th NN distance) and D_mean (mean distance to every point,
/// or to a seeded sample when n > sample_limit). Queries with D_min == 0
/// are excluded and counted.
RelativeContrast relative_contrast(const DenseDataset& dataset, const QuerySet& queries, std::size_t k,
                                   std::size_t sample_limit = kFullScanLimit, std::uint64_t seed = 42);

/// Maximum-likelihood (Hill) LID from a sorted distance profile r_1..r_w:
/// -1 / mean(ln(r_i / r_w)). Returns +inf for a flat profile. Requires
/// r_1 > 0.
double lid_mle(std::span<const double> sorted_distances);

/// Mean MLE LID over queries, using the `neighbors` nearest exact distances
/// of each. Queries with a zero distance are dropped and counted.
/// Throws UsageError when neighbors < 10.
LidEstimate lid_estimate(const DenseDataset& dataset, const QuerySet& queries, std::size_t neighbors);

/// Both estimates at once.
HardnessReport hardness_report(const DenseDataset& dataset, const QuerySet& queries, std::size_t k,
                               std::size_t lid_neighbors, std::uint64_t seed = 42);

/// Fraction of nodes per minimum hop count needed to reach any member of a
/// target set by following edges forward. `by_hops[h]` is the fraction at
/// exactly h hops; `unreachable` holds the nodes that never get there.
struct MinHopsHistogram {
  std::vector<double> by_hops;
  double unreachable = 0.0;

  double total() const noexcept;
};

/// Reverse BFS from `targets` over reversed edges.
MinHopsHistogram min_hops_histogram(const NeighborGraph& graph, std::span<const NodeId> targets);

/// Bucket-wise mean of several histograms.
MinHopsHistogram mean_histogram(std::span<const MinHopsHistogram> parts);

}  // namespace dpg
