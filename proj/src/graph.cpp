#include "dpg/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "dpg/error.hpp"

namespace dpg {

VectorSet::VectorSet(std::size_t rows, std::size_t dim, std::vector<float> data)
    : rows_(rows), dim_(dim), data_(std::move(data)) {
  if (rows_ == 0 || dim_ == 0) {
    throw UsageError("vector set needs at least one row and one dimension, got " +
                     std::to_string(rows_) + "x" + std::to_string(dim_));
  }
  if (data_.size() != rows_ * dim_) {
    throw UsageError("vector set buffer holds " + std::to_string(data_.size()) +
                     " floats, expected " + std::to_string(rows_ * dim_));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw UsageError("non-finite value in row " + std::to_string(i / dim_) + ", column " +
                       std::to_string(i % dim_));
    }
  }
}

NeighborGraph::NeighborGraph(GraphKind kind, std::uint32_t degree, Adjacency adjacency)
    : kind_(kind), degree_(degree), adjacency_(std::move(adjacency)) {
  validate();
}

std::size_t NeighborGraph::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& list : adjacency_) total += list.size();
  return total;
}

bool NeighborGraph::is_symmetric() const {
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (const Neighbor& e : adjacency_[u]) {
      const auto& back = adjacency_[e.id];
      const Neighbor mirror{static_cast<NodeId>(u), e.dist};
      if (!std::binary_search(back.begin(), back.end(), mirror, neighbor_less)) return false;
    }
  }
  return true;
}

void NeighborGraph::validate() const {
  const std::size_t n = adjacency_.size();
  if (n == 0) throw StructuralError("graph has no nodes");
  if (degree_ == 0) throw StructuralError("graph degree parameter must be positive");

  for (std::size_t u = 0; u < n; ++u) {
    const auto& list = adjacency_[u];
    const std::string where = "node " + std::to_string(u);
    if (!std::is_sorted(list.begin(), list.end(), neighbor_less)) {
      throw StructuralError(where + ": neighbor list not sorted by (dist, id)");
    }
    std::unordered_set<NodeId> seen;
    for (const Neighbor& e : list) {
      if (e.id >= n) throw StructuralError(where + ": neighbor id " + std::to_string(e.id) + " out of range");
      if (e.id == u) throw StructuralError(where + ": self-loop");
      if (!(e.dist >= 0.0f) || !std::isfinite(e.dist)) {
        throw StructuralError(where + ": invalid edge distance");
      }
      if (!seen.insert(e.id).second) {
        throw StructuralError(where + ": duplicate neighbor " + std::to_string(e.id));
      }
    }
    if (kind_ == GraphKind::Knn) {
      const std::size_t expected = std::min<std::size_t>(degree_, n - 1);
      if (list.size() != expected) {
        throw StructuralError(where + ": knn list has " + std::to_string(list.size()) +
                              " entries, expected " + std::to_string(expected));
      }
    }
  }

  if (kind_ == GraphKind::Dpg) {
    if (edge_count() > 2ull * degree_ * n) {
      throw StructuralError("dpg has " + std::to_string(edge_count()) + " edges, limit is 2*kappa*n = " +
                            std::to_string(2ull * degree_ * n));
    }
    if (!is_symmetric()) throw StructuralError("dpg adjacency is not symmetric");
  }
}

void sort_neighbors(std::vector<Neighbor>& list) { std::sort(list.begin(), list.end(), neighbor_less); }

std::vector<NodeId> ids_of(std::span<const Neighbor> list) {
  std::vector<NodeId> ids;
  ids.reserve(list.size());
  for (const Neighbor& e : list) ids.push_back(e.id);
  return ids;
}

}  // namespace dpg
