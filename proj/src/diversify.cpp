#include "dpg/dpg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dpg/distance.hpp"
#include "dpg/error.hpp"

namespace dpg {

namespace {

std::span<const Neighbor> source_list(const NeighborGraph& knn, std::size_t u, std::size_t kappa) {
  auto list = knn.neighbors(static_cast<NodeId>(u));
  if (list.size() < kappa) {
    throw StructuralError("node " + std::to_string(u) + " has " + std::to_string(list.size()) +
                          " neighbors, fewer than kappa = " + std::to_string(kappa));
  }
  return list;
}

void check_inputs(const DenseDataset& dataset, const NeighborGraph& knn, std::size_t kappa) {
  if (kappa == 0) throw UsageError("kappa must be at least 1");
  if (knn.size() != dataset.size()) {
    throw UsageError("graph has " + std::to_string(knn.size()) + " nodes but dataset has " +
                     std::to_string(dataset.size()) + " points");
  }
}

}  // namespace

Selection diversify_angular(const DenseDataset& dataset, const NeighborGraph& knn, std::size_t kappa,
                            AngularObjective objective) {
  check_inputs(dataset, knn, kappa);
  const std::size_t d = dataset.dim();
  Selection out(knn.size());

  std::vector<double> arms;  // rows of (x - p), one per candidate
  std::vector<double> norms;
  std::vector<double> score;
  std::vector<char> taken;

  for (std::size_t p = 0; p < knn.size(); ++p) {
    const auto list = source_list(knn, p, kappa);
    const std::size_t m = list.size();
    const auto origin = dataset.row(p);

    arms.assign(m * d, 0.0);
    norms.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const auto x = dataset.row(list[i].id);
      double sq = 0;
      for (std::size_t j = 0; j < d; ++j) {
        const double v = double(x[j]) - origin[j];
        arms[i * d + j] = v;
        sq += v * v;
      }
      norms[i] = std::sqrt(sq);
    }
    auto angle = [&](std::size_t a, std::size_t b) {
      if (norms[a] == 0.0 || norms[b] == 0.0) return 0.0;
      double dot = 0;
      for (std::size_t j = 0; j < d; ++j) dot += arms[a * d + j] * arms[b * d + j];
      return std::acos(std::clamp(dot / (norms[a] * norms[b]), -1.0, 1.0));
    };

    score.assign(m, 0.0);
    taken.assign(m, 0);
    std::size_t last = 0;  // nearest neighbor seeds the set
    taken[0] = 1;
    for (std::size_t step = 1; step < kappa; ++step) {
      std::size_t best = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (taken[i]) continue;
        score[i] += angle(i, last);
        if (best == m) {
          best = i;
        } else if (objective == AngularObjective::MaximizeAngle ? score[i] > score[best] : score[i] < score[best]) {
          best = i;
        }
      }
      taken[best] = 1;
      last = best;
    }

    auto& kept = out[p];
    kept.reserve(kappa);
    for (std::size_t i = 0; i < m; ++i) {
      if (taken[i]) kept.push_back(list[i]);
    }
  }
  return out;
}

Selection diversify_counting(const DenseDataset& dataset, const NeighborGraph& knn, std::size_t kappa) {
  check_inputs(dataset, knn, kappa);
  Selection out(knn.size());
  std::vector<std::size_t> counter;
  std::vector<std::size_t> order;

  for (std::size_t p = 0; p < knn.size(); ++p) {
    const auto list = source_list(knn, p, kappa);
    const std::size_t m = list.size();
    counter.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const float between = l2(dataset.row(list[i].id), dataset.row(list[j].id));
        // v is counted when some other u is closer to v than p is
        if (between < list[i].dist) ++counter[i];
        if (between < list[j].dist) ++counter[j];
      }
    }
    order.resize(m);
    std::iota(order.begin(), order.end(), 0);
    // the list is already in (dist, id) order, so a stable sort on the counter keeps that tie-break
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return counter[a] < counter[b]; });
    order.resize(kappa);
    std::sort(order.begin(), order.end());

    auto& kept = out[p];
    kept.reserve(kappa);
    for (auto i : order) kept.push_back(list[i]);
  }
  return out;
}

NeighborGraph add_reverse_edges(const Selection& selected, std::size_t kappa) {
  const std::size_t n = selected.size();
  if (n == 0) throw StructuralError("empty selection");
  NeighborGraph::Adjacency adj(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (selected[p].size() > kappa) {
      throw StructuralError("node " + std::to_string(p) + " keeps " + std::to_string(selected[p].size()) +
                            " neighbors, more than kappa = " + std::to_string(kappa));
    }
    for (const Neighbor& e : selected[p]) {
      if (e.id >= n) throw StructuralError("node " + std::to_string(p) + " selects out-of-range id");
      if (e.id == p) throw StructuralError("node " + std::to_string(p) + " selects itself");
      adj[p].push_back(e);
      adj[e.id].push_back({static_cast<NodeId>(p), e.dist});
    }
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    list.erase(std::unique(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.id == b.id; }),
               list.end());
    sort_neighbors(list);
  }
  return NeighborGraph(GraphKind::Dpg, static_cast<std::uint32_t>(kappa), std::move(adj));
}

NeighborGraph diversify_graph(const DenseDataset& dataset, const NeighborGraph& knn, const DpgParams& params) {
  const Selection kept = params.method == Diversification::Angular
                             ? diversify_angular(dataset, knn, params.kappa, params.objective)
                             : diversify_counting(dataset, knn, params.kappa);
  return add_reverse_edges(kept, params.kappa);
}

NeighborGraph build_dpg(const DenseDataset& dataset, const DpgParams& params, NnDescentParams knn_params) {
  if (params.kappa == 0) throw UsageError("kappa must be at least 1");
  knn_params.K = params.effective_source_degree();
  if (knn_params.K < params.kappa) throw UsageError("source degree K must be at least kappa");
  const NeighborGraph knn = build_knn_graph(dataset, knn_params);
  return diversify_graph(dataset, knn, params);
}

}  // namespace dpg
