#include "dpg/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "dpg/distance.hpp"
#include "dpg/error.hpp"
#include "dpg/rng.hpp"

namespace dpg {

namespace {

void check_workload(const DenseDataset& dataset, const QuerySet& queries) {
  if (queries.empty()) throw UsageError("query set is empty");
  if (queries.dim() != dataset.dim()) {
    throw UsageError("query dimension " + std::to_string(queries.dim()) + " does not match dataset dimension " +
                     std::to_string(dataset.dim()));
  }
}

}  // namespace

RelativeContrast relative_contrast(const DenseDataset& dataset, const QuerySet& queries, std::size_t k,
                                   std::size_t sample_limit, std::uint64_t seed) {
  check_workload(dataset, queries);
  if (k == 0 || k > dataset.size()) throw UsageError("k must be in [1, n]");
  const std::size_t n = dataset.size();

  std::vector<std::uint32_t> sample;
  if (n > sample_limit && sample_limit > 0) {
    Rng rng(seed);
    sample = sample_distinct(rng, static_cast<std::uint32_t>(n), sample_limit);
    std::sort(sample.begin(), sample.end());
  }

  RelativeContrast out;
  out.mean_sample_size = sample.empty() ? n : sample.size();
  double sum_mean = 0, sum_min = 0, sum_knn = 0;
  std::vector<double> dist(n);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto query = queries.row(q);
    for (std::size_t i = 0; i < n; ++i) dist[i] = std::sqrt(squared_l2(dataset.row(i), query));

    double mean = 0;
    if (sample.empty()) {
      mean = std::accumulate(dist.begin(), dist.end(), 0.0) / static_cast<double>(n);
    } else {
      for (auto i : sample) mean += dist[i];
      mean /= static_cast<double>(sample.size());
    }
    std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
    const double knn = dist[k - 1];
    const double nearest = *std::min_element(dist.begin(), dist.begin() + k);
    if (nearest == 0.0) {
      ++out.queries_excluded;
      continue;
    }
    sum_mean += mean;
    sum_min += nearest;
    sum_knn += knn;
    ++out.queries_used;
  }
  if (out.queries_used > 0) {
    out.rc = sum_mean / sum_min;
    out.rc_k = sum_mean / sum_knn;
  }
  return out;
}

double lid_mle(std::span<const double> r) {
  if (r.empty()) throw UsageError("LID needs at least one distance");
  if (!(r.front() > 0.0)) throw UsageError("LID profile contains a zero distance");
  const double outer = r.back();
  double sum = 0;
  for (double v : r) sum += std::log(v / outer);
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  return -static_cast<double>(r.size()) / sum;
}

LidEstimate lid_estimate(const DenseDataset& dataset, const QuerySet& queries, std::size_t neighbors) {
  check_workload(dataset, queries);
  if (neighbors < 10) throw UsageError("LID needs at least 10 neighbors per query");
  if (neighbors > dataset.size()) throw UsageError("LID neighbor count exceeds n");

  LidEstimate out;
  double sum = 0;
  std::vector<double> profile;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto knn = brute_force_knn(dataset, queries.row(q), neighbors);
    profile.clear();
    for (const auto& nb : knn) profile.push_back(std::sqrt(squared_l2(dataset.row(nb.id), queries.row(q))));
    std::sort(profile.begin(), profile.end());
    if (profile.front() == 0.0) {
      ++out.queries_dropped;
      continue;
    }
    const double v = lid_mle(profile);
    if (std::isinf(v)) out.diverged = true;
    sum += v;
    ++out.queries_used;
  }
  out.lid = out.queries_used ? sum / static_cast<double>(out.queries_used) : 0.0;
  return out;
}

HardnessReport hardness_report(const DenseDataset& dataset, const QuerySet& queries, std::size_t k,
                               std::size_t lid_neighbors, std::uint64_t seed) {
  HardnessReport report;
  report.k = k;
  report.lid_neighbors = lid_neighbors;
  report.contrast = relative_contrast(dataset, queries, k, kFullScanLimit, seed);
  report.lid = lid_estimate(dataset, queries, lid_neighbors);
  return report;
}

double MinHopsHistogram::total() const noexcept {
  return std::accumulate(by_hops.begin(), by_hops.end(), unreachable);
}

MinHopsHistogram min_hops_histogram(const NeighborGraph& graph, std::span<const NodeId> targets) {
  if (targets.empty()) throw UsageError("minHops needs a nonempty target set");
  const std::size_t n = graph.size();

  // reversed adjacency in CSR form
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& e : graph.neighbors(static_cast<NodeId>(u))) ++offset[e.id + 1];
  }
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<NodeId> sources(offset.back());
  std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& e : graph.neighbors(static_cast<NodeId>(u))) sources[fill[e.id]++] = static_cast<NodeId>(u);
  }

  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> hops(n, kUnseen);
  std::deque<NodeId> frontier;
  for (auto t : targets) {
    if (t >= n) throw UsageError("target id " + std::to_string(t) + " out of range");
    if (hops[t] == kUnseen) {
      hops[t] = 0;
      frontier.push_back(t);
    }
  }
  std::vector<std::size_t> counts;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop_front();
    if (counts.size() <= hops[v]) counts.resize(hops[v] + 1, 0);
    ++counts[hops[v]];
    for (std::size_t i = offset[v]; i < offset[v + 1]; ++i) {
      const NodeId u = sources[i];
      if (hops[u] == kUnseen) {
        hops[u] = hops[v] + 1;
        frontier.push_back(u);
      }
    }
  }

  MinHopsHistogram out;
  std::size_t reached = 0;
  for (auto c : counts) {
    out.by_hops.push_back(static_cast<double>(c) / static_cast<double>(n));
    reached += c;
  }
  out.unreachable = static_cast<double>(n - reached) / static_cast<double>(n);
  return out;
}

MinHopsHistogram mean_histogram(std::span<const MinHopsHistogram> parts) {
  MinHopsHistogram out;
  if (parts.empty()) return out;
  for (const auto& h : parts) {
    if (out.by_hops.size() < h.by_hops.size()) out.by_hops.resize(h.by_hops.size(), 0.0);
    for (std::size_t i = 0; i < h.by_hops.size(); ++i) out.by_hops[i] += h.by_hops[i];
    out.unreachable += h.unreachable;
  }
  const double m = static_cast<double>(parts.size());
  for (auto& v : out.by_hops) v /= m;
  out.unreachable /= m;
  return out;
}

}  // namespace dpg
