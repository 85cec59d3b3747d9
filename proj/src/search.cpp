#include "dpg/search.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "dpg/distance.hpp"
#include "dpg/error.hpp"
#include "dpg/rng.hpp"

namespace dpg {

GraphSearcher::GraphSearcher(const DenseDataset& dataset, const NeighborGraph& graph)
    : dataset_(dataset), graph_(graph), stamp_(dataset.size(), 0) {
  if (graph.size() != dataset.size()) {
    throw UsageError("graph has " + std::to_string(graph.size()) + " nodes but dataset has " +
                     std::to_string(dataset.size()) + " points");
  }
}

void GraphSearcher::check(std::span<const float> query, const SearchParams& params) const {
  if (query.size() != dataset_.dim()) {
    throw UsageError("query dimension " + std::to_string(query.size()) + " does not match dataset dimension " +
                     std::to_string(dataset_.dim()));
  }
  if (params.k == 0) throw UsageError("k must be at least 1");
  if (params.pool_size < params.k) {
    throw UsageError("pool size L=" + std::to_string(params.pool_size) + " is smaller than k=" +
                     std::to_string(params.k));
  }
  if (params.pool_size > dataset_.size()) {
    throw UsageError("pool size L=" + std::to_string(params.pool_size) + " exceeds n=" +
                     std::to_string(dataset_.size()));
  }
}

bool GraphSearcher::visit(NodeId id) {
  if (stamp_[id] == epoch_) return false;
  stamp_[id] = epoch_;
  return true;
}

SearchResult GraphSearcher::search(std::span<const float> query, const SearchParams& params) {
  check(query, params);
  if (params.entry_count == 0) throw UsageError("entry count p must be at least 1");
  Rng rng(params.seed);
  const auto count = std::min(params.entry_count, dataset_.size());
  const auto entries = sample_distinct(rng, static_cast<std::uint32_t>(dataset_.size()), count);
  return run(query, entries, params);
}

SearchResult GraphSearcher::search_from(std::span<const float> query, std::span<const NodeId> entries,
                                        const SearchParams& params) {
  check(query, params);
  if (entries.empty()) throw UsageError("at least one entry node is required");
  for (auto e : entries) {
    if (e >= dataset_.size()) throw UsageError("entry node " + std::to_string(e) + " out of range");
  }
  return run(query, entries, params);
}

SearchResult GraphSearcher::run(std::span<const float> query, std::span<const NodeId> entries,
                                const SearchParams& params) {
  const auto start = std::chrono::steady_clock::now();
  if (++epoch_ == 0) {  // stamp wrap-around
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  const std::size_t capacity = params.pool_size;
  SearchStats stats;
  pool_.clear();
  pool_.reserve(capacity + 1);

  auto slot_less = [](const Slot& a, const Slot& b) { return neighbor_less({a.id, a.dist}, {b.id, b.dist}); };

  // Inserts if the pool has room or the candidate beats the worst entry.
  // Returns the insertion index, or capacity when rejected.
  auto offer = [&](NodeId id, float dist) -> std::size_t {
    const Slot cand{id, dist, false};
    if (pool_.size() == capacity && !slot_less(cand, pool_.back())) return capacity;
    auto pos = std::upper_bound(pool_.begin(), pool_.end(), cand, slot_less);
    const auto index = static_cast<std::size_t>(pos - pool_.begin());
    pool_.insert(pos, cand);
    if (pool_.size() > capacity) pool_.pop_back();
    return index;
  };

  for (auto e : entries) {
    if (!visit(e)) continue;
    ++stats.distance_computations;
    offer(e, l2(dataset_.row(e), query));
  }

  std::size_t cursor = 0;  // every slot before cursor is explored
  while (cursor < pool_.size()) {
    if (pool_[cursor].explored) {
      ++cursor;
      continue;
    }
    pool_[cursor].explored = true;
    ++stats.hops;
    const NodeId current = pool_[cursor].id;
    std::size_t lowest = pool_.size();
    for (const Neighbor& nb : graph_.neighbors(current)) {
      if (!visit(nb.id)) continue;
      ++stats.distance_computations;
      const auto at = offer(nb.id, l2(dataset_.row(nb.id), query));
      lowest = std::min(lowest, at);
    }
    cursor = std::min(cursor + 1, lowest);
  }

  if (pool_.size() < params.k) {
    throw Error("search reached only " + std::to_string(pool_.size()) + " points, fewer than k=" +
                std::to_string(params.k));
  }
  SearchResult result;
  result.neighbors.reserve(params.k);
  for (std::size_t i = 0; i < params.k; ++i) result.neighbors.push_back({pool_[i].id, pool_[i].dist});
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.stats = stats;
  return result;
}

SearchResult greedy_search(const DenseDataset& dataset, const NeighborGraph& graph, std::span<const float> query,
                           const SearchParams& params) {
  GraphSearcher searcher(dataset, graph);
  return searcher.search(query, params);
}

double recall(std::span<const NodeId> results, std::span<const NodeId> truth) {
  if (truth.empty() || results.size() != truth.size()) {
    throw UsageError("recall needs two id lists of equal length k >= 1 (got " + std::to_string(results.size()) +
                     " and " + std::to_string(truth.size()) + ")");
  }
  std::vector<NodeId> a(results.begin(), results.end());
  std::vector<NodeId> b(truth.begin(), truth.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<NodeId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(truth.size());
}

}  // namespace dpg
