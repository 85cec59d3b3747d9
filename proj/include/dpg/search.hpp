#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpg/types.hpp"

namespace dpg {

struct SearchParams {
  std::size_t k = 20;
  /// Capacity L of the sorted candidate pool, k <= L <= n.
  std::size_t pool_size = 100;
  /// Number p of random entry nodes.
  std::size_t entry_count = 10;
  std::uint64_t seed = 42;
};

struct SearchStats {
  std::size_t distance_computations = 0;  // N
  std::size_t hops = 0;                   // pool entries expanded
  double seconds = 0.0;
};

struct SearchResult {
  std::vector<Neighbor> neighbors;
  SearchStats stats;
};

/// Greedy best-first search over a neighbor graph, KGraph style.
///
/// The pool holds at most L candidates in (dist, id) order, each with an
/// explored flag. The first unexplored entry is expanded: distances to its
/// not-yet-visited graph neighbors are computed and those that beat the
/// pool's worst entry are inserted. Search ends when every pool entry has
/// been explored. Each point's distance is computed at most once per query.
///
/// One searcher owns reusable scratch space; use one per thread.
class GraphSearcher {
 public:
  GraphSearcher(const DenseDataset& dataset, const NeighborGraph& graph);

  /// Seeds the pool with entry_count distinct random nodes drawn from params.seed.
  SearchResult search(std::span<const float> query, const SearchParams& params);

  /// Seeds the pool with the given entry nodes instead; params.entry_count
  /// and params.seed are ignored.
  SearchResult search_from(std::span<const float> query, std::span<const NodeId> entries,
                           const SearchParams& params);

 private:
  struct Slot {
    NodeId id;
    float dist;
    bool explored;
  };

  void check(std::span<const float> query, const SearchParams& params) const;
  SearchResult run(std::span<const float> query, std::span<const NodeId> entries, const SearchParams& params);
  bool visit(NodeId id);

  const DenseDataset& dataset_;
  const NeighborGraph& graph_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<Slot> pool_;
};

/// One-shot convenience wrapper around GraphSearcher::search.
SearchResult greedy_search(const DenseDataset& dataset, const NeighborGraph& graph, std::span<const float> query,
                           const SearchParams& params);

/// |results ∩ truth| / k. Both lists must have the same length k >= 1.
double recall(std::span<const NodeId> results, std::span<const NodeId> truth);

}  // namespace dpg
