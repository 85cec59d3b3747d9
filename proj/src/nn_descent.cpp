#include "dpg/nn_descent.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "dpg/distance.hpp"
#include "dpg/error.hpp"
#include "dpg/rng.hpp"

namespace dpg {

namespace {

struct Entry {
  NodeId id;
  float dist;
  bool fresh;  // not yet taken part in a local join as a forward neighbor
};

class Candidates {
 public:
  explicit Candidates(std::vector<Entry> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end(),
              [](const Entry& a, const Entry& b) { return neighbor_less({a.id, a.dist}, {b.id, b.dist}); });
  }

  /// Replaces the current worst entry if (id, dist) beats it and id is not
  /// already present. Returns true on replacement.
  bool insert(NodeId id, float dist) {
    const Neighbor cand{id, dist};
    const Entry& worst = items_.back();
    if (!neighbor_less(cand, {worst.id, worst.dist})) return false;
    for (const Entry& e : items_) {
      if (e.id == id) return false;
    }
    items_.pop_back();
    auto pos = std::upper_bound(items_.begin(), items_.end(), cand, [](const Neighbor& c, const Entry& e) {
      return neighbor_less(c, {e.id, e.dist});
    });
    items_.insert(pos, Entry{id, dist, true});
    return true;
  }

  std::vector<Entry>& items() noexcept { return items_; }
  const std::vector<Entry>& items() const noexcept { return items_; }

 private:
  std::vector<Entry> items_;
};

void check_params(std::size_t n, const NnDescentParams& p) {
  if (p.K == 0) throw UsageError("K must be at least 1");
  if (n <= p.K) {
    throw UsageError("NN-descent needs n > K (n=" + std::to_string(n) + ", K=" + std::to_string(p.K) + ")");
  }
  if (!(p.sample_rate > 0.0 && p.sample_rate <= 1.0)) throw UsageError("sample rate rho must lie in (0, 1]");
  if (!(p.termination >= 0.0 && p.termination < 1.0)) throw UsageError("termination zeta must lie in [0, 1)");
  if (p.max_iters == 0) throw UsageError("max_iters must be at least 1");
  if (p.threads == 0) throw UsageError("threads must be at least 1");
}

// Keeps at most `cap` members of `pool`, chosen uniformly.
void subsample(Rng& rng, std::vector<NodeId>& pool, std::size_t cap) {
  if (pool.size() <= cap) return;
  const auto picks = sample_distinct(rng, static_cast<std::uint32_t>(pool.size()), cap);
  std::vector<NodeId> kept;
  kept.reserve(cap);
  for (auto i : picks) kept.push_back(pool[i]);
  pool = std::move(kept);
}

void sort_unique(std::vector<NodeId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

NeighborGraph build_knn_graph(const DenseDataset& dataset, const NnDescentParams& params,
                              const NnDescentObserver& observer) {
  const std::size_t n = dataset.size();
  check_params(n, params);
  const std::size_t K = params.K;
  const std::size_t sample = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(params.sample_rate * K)));
  const double stop_below = params.termination * static_cast<double>(K) * static_cast<double>(n);

  Rng rng(params.seed);

  std::vector<Candidates> graph;
  graph.reserve(n);
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<Entry> init;
    init.reserve(K);
    for (auto v : sample_distinct(rng, static_cast<std::uint32_t>(n - 1), K)) {
      if (v >= u) ++v;  // skip self
      init.push_back({v, l2(dataset.row(u), dataset.row(v)), true});
    }
    graph.emplace_back(std::move(init));
  }

  std::vector<std::vector<NodeId>> fresh(n), old(n), rev_fresh(n), rev_old(n);
  std::vector<std::mutex> locks(params.threads > 1 ? n : 0);
  std::vector<std::vector<Neighbor>> snapshot;

  for (std::size_t iter = 1; iter <= params.max_iters; ++iter) {
    for (std::size_t u = 0; u < n; ++u) {
      fresh[u].clear();
      old[u].clear();
      rev_fresh[u].clear();
      rev_old[u].clear();
    }

    // forward samples: up to `sample` fresh entries per list, which then turn old
    for (std::size_t u = 0; u < n; ++u) {
      auto& items = graph[u].items();
      std::vector<std::uint32_t> fresh_slots;
      for (std::uint32_t i = 0; i < items.size(); ++i) {
        if (items[i].fresh) {
          fresh_slots.push_back(i);
        } else {
          old[u].push_back(items[i].id);
        }
      }
      if (fresh_slots.size() > sample) {
        std::vector<std::uint32_t> picked;
        for (auto i : sample_distinct(rng, static_cast<std::uint32_t>(fresh_slots.size()), sample)) {
          picked.push_back(fresh_slots[i]);
        }
        fresh_slots = std::move(picked);
      }
      for (auto i : fresh_slots) {
        fresh[u].push_back(items[i].id);
        items[i].fresh = false;
      }
    }

    // reverse neighbors, capped at `sample` per node
    for (std::size_t u = 0; u < n; ++u) {
      for (auto v : fresh[u]) rev_fresh[v].push_back(static_cast<NodeId>(u));
      for (auto v : old[u]) rev_old[v].push_back(static_cast<NodeId>(u));
    }
    for (std::size_t u = 0; u < n; ++u) {
      subsample(rng, rev_fresh[u], sample);
      subsample(rng, rev_old[u], sample);
      fresh[u].insert(fresh[u].end(), rev_fresh[u].begin(), rev_fresh[u].end());
      old[u].insert(old[u].end(), rev_old[u].begin(), rev_old[u].end());
      sort_unique(fresh[u]);
      sort_unique(old[u]);
      std::erase_if(old[u], [&](NodeId v) { return std::binary_search(fresh[u].begin(), fresh[u].end(), v); });
    }

    // local join: new x new and new x old
    std::atomic<std::size_t> updates{0};
    auto join_range = [&](std::size_t begin, std::size_t step) {
      std::size_t local = 0;
      auto join = [&](NodeId a, NodeId b) {
        const float d = l2(dataset.row(a), dataset.row(b));
        if (locks.empty()) {
          local += graph[a].insert(b, d);
          local += graph[b].insert(a, d);
        } else {
          {
            std::lock_guard guard(locks[a]);
            local += graph[a].insert(b, d);
          }
          std::lock_guard guard(locks[b]);
          local += graph[b].insert(a, d);
        }
      };
      for (std::size_t u = begin; u < n; u += step) {
        const auto& nu = fresh[u];
        const auto& ou = old[u];
        for (std::size_t i = 0; i < nu.size(); ++i) {
          for (std::size_t j = i + 1; j < nu.size(); ++j) join(nu[i], nu[j]);
          for (auto v : ou) join(nu[i], v);
        }
      }
      updates += local;
    };
    if (params.threads == 1) {
      join_range(0, 1);
    } else {
      std::vector<std::jthread> workers;
      for (std::size_t t = 0; t < params.threads; ++t) workers.emplace_back(join_range, t, params.threads);
    }

    if (observer) {
      snapshot.assign(n, {});
      for (std::size_t u = 0; u < n; ++u) {
        for (const Entry& e : graph[u].items()) snapshot[u].push_back({e.id, e.dist});
      }
      observer(NnDescentIteration{iter, updates.load(), snapshot});
    }
    if (static_cast<double>(updates.load()) < stop_below) break;
  }

  NeighborGraph::Adjacency adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    adj[u].reserve(K);
    for (const Entry& e : graph[u].items()) adj[u].push_back({e.id, e.dist});
  }
  return NeighborGraph(GraphKind::Knn, static_cast<std::uint32_t>(K), std::move(adj));
}

double graph_recall(const NeighborGraph& approx, const NeighborGraph& exact) {
  if (approx.size() != exact.size() || approx.degree() != exact.degree()) {
    throw UsageError("graph_recall: graphs differ in node count or degree");
  }
  double total = 0.0;
  for (std::size_t u = 0; u < approx.size(); ++u) {
    auto a = ids_of(approx.neighbors(static_cast<NodeId>(u)));
    auto b = ids_of(exact.neighbors(static_cast<NodeId>(u)));
    if (b.empty()) continue;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<NodeId> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    total += static_cast<double>(common.size()) / static_cast<double>(b.size());
  }
  return total / static_cast<double>(approx.size());
}

}  // namespace dpg
