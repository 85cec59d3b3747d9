#include "dpg/exact.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <string>
#include <thread>

#include "dpg/distance.hpp"
#include "dpg/error.hpp"

namespace dpg {

namespace {

struct WorseFirst {
  bool operator()(const Neighbor& a, const Neighbor& b) const noexcept { return neighbor_less(a, b); }
};

// k best rows of `dataset` for `query`, skipping `exclude` (a row id or n).
std::vector<Neighbor> scan(const DenseDataset& dataset, std::span<const float> query, std::size_t k,
                           std::size_t exclude) {
  if (k == 0) return {};
  std::priority_queue<Neighbor, std::vector<Neighbor>, WorseFirst> heap;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (i == exclude) continue;
    const Neighbor cand{static_cast<NodeId>(i), l2(dataset.row(i), query)};
    if (heap.size() < k) {
      heap.push(cand);
    } else if (neighbor_less(cand, heap.top())) {
      heap.pop();
      heap.push(cand);
    }
  }
  std::vector<Neighbor> out(heap.size());
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    *it = heap.top();
    heap.pop();
  }
  return out;
}

}  // namespace

std::vector<Neighbor> brute_force_knn(const DenseDataset& dataset, std::span<const float> query,
                                      std::size_t k) {
  if (query.size() != dataset.dim()) {
    throw UsageError("query dimension " + std::to_string(query.size()) + " does not match dataset dimension " +
                     std::to_string(dataset.dim()));
  }
  if (k == 0 || k > dataset.size()) {
    throw UsageError("k must be in [1, n] (k=" + std::to_string(k) + ", n=" + std::to_string(dataset.size()) +
                     ")");
  }
  return scan(dataset, query, k, dataset.size());
}

GroundTruth build_ground_truth(const DenseDataset& dataset, const QuerySet& queries, std::size_t k) {
  if (queries.empty()) throw UsageError("ground truth needs at least one query");
  GroundTruth gt;
  gt.k = k;
  gt.lists.reserve(queries.size());

  (void)brute_force_knn(dataset, queries.row(0), k);  // warm-up

  const auto start = std::chrono::steady_clock::now();
  for (std::size_t q = 0; q < queries.size(); ++q) gt.lists.push_back(brute_force_knn(dataset, queries.row(q), k));
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  gt.baseline_seconds = std::max(elapsed.count(), 1e-9) / static_cast<double>(queries.size());
  return gt;
}

NeighborGraph exact_knn_graph(const DenseDataset& dataset, std::size_t K, std::size_t threads) {
  const std::size_t n = dataset.size();
  if (K == 0) throw UsageError("K must be positive");
  const std::size_t width = std::min(K, n - 1);
  NeighborGraph::Adjacency adj(n);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t u = begin; u < n; u += step) adj[u] = scan(dataset, dataset.row(u), width, u);
  };
  threads = std::max<std::size_t>(1, threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  return NeighborGraph(GraphKind::Knn, static_cast<std::uint32_t>(K), std::move(adj));
}

}  // namespace dpg
