#pragma once

#include <cstddef>
#include <vector>

#include "dpg/nn_descent.hpp"
#include "dpg/types.hpp"

namespace dpg {

enum class Diversification { Angular, Counting };

/// Direction of the greedy angular step. MaximizeAngle spreads the kept
/// neighbors around the node; MinimizeAngle is the literal argmin reading,
/// kept for comparison experiments.
enum class AngularObjective { MaximizeAngle, MinimizeAngle };

struct DpgParams {
  std::size_t kappa = 20;
  Diversification method = Diversification::Counting;
  AngularObjective objective = AngularObjective::MaximizeAngle;
  /// Degree K of the source K-NN graph; 0 means 2 * kappa.
  std::size_t source_degree = 0;

  std::size_t effective_source_degree() const noexcept { return source_degree ? source_degree : 2 * kappa; }
};

/// Per-node kept neighbors, each list in (dist, id) order.
using Selection = std::vector<std::vector<Neighbor>>;

/// Greedy angular diversification. Starts from the nearest neighbor, then
/// repeatedly adds the candidate whose summed angle (at the node) to the
/// already kept points is largest, i.e. the one that maximizes the average
/// pairwise angle of the kept set. Ties go to the closer candidate.
/// A candidate coinciding with the node contributes angle 0 to every pair.
/// Throws StructuralError naming the node if a list has fewer than kappa entries.
Selection diversify_angular(const DenseDataset& dataset, const NeighborGraph& knn, std::size_t kappa,
                            AngularObjective objective = AngularObjective::MaximizeAngle);

/// Counting diversification. For a node p with list L, the counter of v
/// is the number of u in L (u != v) with dist(v, u) < dist(v, p). Keeps
/// the kappa lowest counters, ties by (dist, id).
Selection diversify_counting(const DenseDataset& dataset, const NeighborGraph& knn, std::size_t kappa);

/// Union of every kept edge with its reverse, deduplicated and re-sorted.
NeighborGraph add_reverse_edges(const Selection& selected, std::size_t kappa);

/// Diversifies an existing K-NN graph and adds reverse edges.
NeighborGraph diversify_graph(const DenseDataset& dataset, const NeighborGraph& knn, const DpgParams& params);

/// NN-descent with K = params.effective_source_degree(), then diversify_graph.
/// The K field of `knn_params` is ignored.
NeighborGraph build_dpg(const DenseDataset& dataset, const DpgParams& params, NnDescentParams knn_params);

}  // namespace dpg
