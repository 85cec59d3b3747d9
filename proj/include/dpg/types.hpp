#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dpg {

using NodeId = std::uint32_t;

/// Row-major block of equally sized float vectors. All values are finite.
class VectorSet {
 public:
  VectorSet() = default;
  /// Throws UsageError if rows or dim is zero, the buffer size is not
  /// rows * dim, or any value is NaN/Inf.
  VectorSet(std::size_t rows, std::size_t dim, std::vector<float> data);

  std::size_t size() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return rows_ == 0; }

  std::span<const float> row(std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const float> data() const noexcept { return data_; }

  friend bool operator==(const VectorSet&, const VectorSet&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> data_;
};

/// The reference set searched against.
class DenseDataset : public VectorSet {
 public:
  using VectorSet::VectorSet;
  DenseDataset() = default;
  explicit DenseDataset(VectorSet v) : VectorSet(std::move(v)) {}
};

/// A batch of query vectors.
class QuerySet : public VectorSet {
 public:
  using VectorSet::VectorSet;
  QuerySet() = default;
  explicit QuerySet(VectorSet v) : VectorSet(std::move(v)) {}
};

struct Neighbor {
  NodeId id = 0;
  float dist = 0.0f;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Ascending distance, ties by ascending id. Every neighbor list in the
/// library is kept in this order.
constexpr bool neighbor_less(const Neighbor& a, const Neighbor& b) noexcept {
  return a.dist < b.dist || (a.dist == b.dist && a.id < b.id);
}

enum class GraphKind : std::uint32_t { Knn = 0, Dpg = 1 };

/// Adjacency lists of (id, dist) pairs, each sorted by neighbor_less.
///
/// Knn(K): every list has exactly min(K, n-1) entries.
/// Dpg(kappa): edges are symmetric and there are at most 2*kappa*n of them.
/// Neither kind admits self-loops or repeated ids within a list. The
/// constructor validates the invariants of the kind and throws
/// StructuralError on violation.
class NeighborGraph {
 public:
  using Adjacency = std::vector<std::vector<Neighbor>>;

  NeighborGraph() = default;
  NeighborGraph(GraphKind kind, std::uint32_t degree, Adjacency adjacency);

  std::size_t size() const noexcept { return adjacency_.size(); }
  GraphKind kind() const noexcept { return kind_; }
  /// K for a Knn graph, kappa for a Dpg.
  std::uint32_t degree() const noexcept { return degree_; }

  std::span<const Neighbor> neighbors(NodeId u) const noexcept { return adjacency_[u]; }
  const Adjacency& adjacency() const noexcept { return adjacency_; }

  std::size_t edge_count() const noexcept;
  bool is_symmetric() const;

  friend bool operator==(const NeighborGraph&, const NeighborGraph&) = default;

 private:
  void validate() const;

  GraphKind kind_ = GraphKind::Knn;
  std::uint32_t degree_ = 0;
  Adjacency adjacency_;
};

/// Sorts a neighbor list in place into canonical order.
void sort_neighbors(std::vector<Neighbor>& list);

/// Ids of a neighbor list, in order.
std::vector<NodeId> ids_of(std::span<const Neighbor> list);

}  // namespace dpg
