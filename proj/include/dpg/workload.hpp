#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dpg/types.hpp"

namespace dpg {

/// Points uniform in the unit d-ball: an isotropic Gaussian direction,
/// normalized, scaled by radius U^(1/d).
DenseDataset gen_random_hypersphere(std::size_t n, std::size_t d, std::uint64_t seed);

/// Centers uniform in [0, box_hi]^d; each point picks a uniform center and
/// adds i.i.d. N(0, sigma^2) noise per coordinate. Throws UsageError when
/// num_clusters == 0.
DenseDataset gen_gauss_clusters(std::size_t n, std::size_t d, std::size_t num_clusters, double box_hi,
                                double sigma, std::uint64_t seed);

/// n evenly spaced points 0, 1, ..., n-1 on the real line (d = 1).
DenseDataset gen_line(std::size_t n);

/// Removes m random points to serve as queries. The reference set keeps
/// the remaining points in their original order. Throws UsageError unless 1 <= m < n.
std::pair<DenseDataset, QuerySet> split_queries(const DenseDataset& dataset, std::size_t m, std::uint64_t seed);

/// Moves every query by exactly `delta` in an independent uniform random
/// direction. Throws UsageError when delta < 0.
QuerySet perturb_queries(const QuerySet& queries, double delta, std::uint64_t seed);

/// A named, reproducible synthetic workload.
struct Preset {
  std::string name;
  enum class Kind { Hypersphere, GaussClusters, Line } kind = Kind::Hypersphere;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t clusters = 0;
  double box_hi = 10.0;
  double sigma = 1.0;
  std::size_t queries = 200;
};

const std::vector<Preset>& presets();
/// Throws UsageError for an unknown name.
const Preset& find_preset(const std::string& name);

/// Generates the preset's full point set (before the query split).
DenseDataset generate(const Preset& preset, std::uint64_t seed);

}  // namespace dpg
