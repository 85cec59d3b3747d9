#include <gtest/gtest.h>

#include <cmath>
#include <queue>
#include <random>

#include "dpg/dpg.hpp"
#include "dpg/error.hpp"
#include "dpg/hardness.hpp"
#include "dpg/workload.hpp"
#include "test_util.hpp"

namespace dpg {
namespace {

TEST(RelativeContrast, UnitSquareByHand) {
  // query at (0,0); remaining vertices at distances 1, 1, sqrt 2
  const auto data = testing::from_rows({{1, 0}, {0, 1}, {1, 1}});
  const QuerySet q(1, 2, {0, 0});
  const double mean = (2 + std::sqrt(2.0)) / 3;
  const auto one = relative_contrast(data, q, 1);
  EXPECT_NEAR(one.rc, mean / 1.0, 1e-12);
  EXPECT_NEAR(one.rc_k, mean / 1.0, 1e-12);
  const auto three = relative_contrast(data, q, 3);
  EXPECT_NEAR(three.rc, mean, 1e-12);
  EXPECT_NEAR(three.rc_k, mean / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(three.queries_used, 1u);
  EXPECT_EQ(three.mean_sample_size, 3u);
}

TEST(RelativeContrast, EquidistantPointsGiveOne) {
  const auto data = testing::from_rows({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  const QuerySet q(1, 2, {0, 0});
  EXPECT_DOUBLE_EQ(relative_contrast(data, q, 2).rc, 1.0);
}

TEST(RelativeContrast, ZeroNearestDistanceExcluded) {
  const auto data = testing::from_rows({{0, 0}, {3, 4}});
  const QuerySet q(2, 2, {0, 0, 0, 1});
  const auto r = relative_contrast(data, q, 1);
  EXPECT_EQ(r.queries_excluded, 1u);
  EXPECT_EQ(r.queries_used, 1u);
  // second query: distances 1 and sqrt(18)
  EXPECT_NEAR(r.rc, (1 + std::sqrt(18.0)) / 2 / 1.0, 1e-6);
}

TEST(RelativeContrast, TranslationAndScaleInvariant) {
  const auto data = testing::uniform_cube(400, 5, 1);
  const auto queries = QuerySet(testing::uniform_cube(20, 5, 2));
  auto transform = [](const VectorSet& v, float scale, float shift) {
    std::vector<float> out(v.data().begin(), v.data().end());
    for (auto& x : out) x = x * scale + shift;
    return VectorSet(v.size(), v.dim(), std::move(out));
  };
  const auto base = relative_contrast(data, queries, 5);
  const auto moved = relative_contrast(DenseDataset(transform(data, 1.0f, 3.5f)),
                                       QuerySet(transform(queries, 1.0f, 3.5f)), 5);
  const auto scaled = relative_contrast(DenseDataset(transform(data, 4.0f, 0.0f)),
                                        QuerySet(transform(queries, 4.0f, 0.0f)), 5);
  EXPECT_NEAR(moved.rc, base.rc, 1e-4 * base.rc);
  EXPECT_NEAR(scaled.rc, base.rc, 1e-6 * base.rc);
  EXPECT_NEAR(scaled.rc_k, base.rc_k, 1e-6 * base.rc_k);
  EXPECT_GE(base.rc, 1.0);
  EXPECT_GE(base.rc, base.rc_k);
}

TEST(RelativeContrast, SamplesLargeDatasets) {
  const auto data = testing::uniform_cube(3000, 4, 3);
  const QuerySet q(testing::uniform_cube(10, 4, 4));
  const auto full = relative_contrast(data, q, 1);
  const auto sampled = relative_contrast(data, q, 1, 1000, 7);
  EXPECT_EQ(sampled.mean_sample_size, 1000u);
  EXPECT_NEAR(sampled.rc, full.rc, 0.05 * full.rc);
}

TEST(Lid, GeometricProfileRecoversDimension) {
  for (double D : {2.0, 5.0, 20.0}) {
    const std::size_t w = 20000;
    std::vector<double> r(w);
    for (std::size_t i = 0; i < w; ++i) r[i] = std::pow(double(i + 1) / w, 1.0 / D);
    EXPECT_NEAR(lid_mle(r), D, 0.01 * D);
  }
}

TEST(Lid, FlatProfileDiverges) {
  const std::vector<double> flat(12, 2.5);
  EXPECT_TRUE(std::isinf(lid_mle(flat)));

  // query at the origin, ten points at unit distance along +-axes
  std::vector<std::vector<float>> rows;
  for (int a = 0; a < 5; ++a) {
    std::vector<float> r(5, 0.f);
    r[a] = 1.f;
    rows.push_back(r);
    r[a] = -1.f;
    rows.push_back(r);
  }
  const auto data = testing::from_rows(rows);
  const QuerySet q(1, 5, std::vector<float>(5, 0.f));
  const auto est = lid_estimate(data, q, 10);
  EXPECT_TRUE(est.diverged);
  EXPECT_TRUE(std::isinf(est.lid));
}

TEST(Lid, UniformLineIsOneDimensional) {
  std::mt19937 gen(5);
  std::uniform_real_distribution<float> u(0.f, 1.f);
  std::vector<float> pts(10000);
  for (auto& x : pts) x = u(gen);
  const DenseDataset data(pts.size(), 1, pts);
  std::vector<float> qs(100);
  std::uniform_real_distribution<float> inner(0.1f, 0.9f);
  for (auto& x : qs) x = inner(gen);
  const QuerySet queries(qs.size(), 1, qs);

  // independent route: sort |x - q| and apply the estimator formula directly
  double oracle = 0;
  for (float q : qs) {
    std::vector<double> d;
    for (float x : pts) d.push_back(std::abs(double(x) - q));
    std::sort(d.begin(), d.end());
    double s = 0;
    for (int i = 0; i < 100; ++i) s += std::log(d[i] / d[99]);
    oracle += -100.0 / s;
  }
  oracle /= qs.size();

  const auto est = lid_estimate(data, queries, 100);
  EXPECT_NEAR(est.lid, oracle, 1e-3 * oracle);
  EXPECT_NEAR(est.lid, 1.0, 0.3);
  EXPECT_EQ(est.queries_used, 100u);
}

TEST(Lid, PreconditionsAndDrops) {
  const auto data = testing::uniform_cube(50, 3, 1);
  const QuerySet q(testing::uniform_cube(2, 3, 2));
  EXPECT_THROW(lid_estimate(data, q, 9), UsageError);
  const QuerySet on_point(1, 3, std::vector<float>(data.row(4).begin(), data.row(4).end()));
  const auto est = lid_estimate(data, on_point, 10);
  EXPECT_EQ(est.queries_dropped, 1u);
  EXPECT_EQ(est.queries_used, 0u);
}

// Forward BFS from every node to the target set; the oracle for minHops.
std::vector<std::size_t> forward_min_hops(const NeighborGraph& g, const std::vector<NodeId>& targets) {
  std::vector<std::size_t> out(g.size(), SIZE_MAX);
  for (NodeId s = 0; s < g.size(); ++s) {
    std::vector<std::size_t> dist(g.size(), SIZE_MAX);
    std::queue<NodeId> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      if (std::find(targets.begin(), targets.end(), v) != targets.end()) {
        out[s] = dist[v];
        break;
      }
      for (const auto& e : g.neighbors(v)) {
        if (dist[e.id] == SIZE_MAX) {
          dist[e.id] = dist[v] + 1;
          q.push(e.id);
        }
      }
    }
  }
  return out;
}

MinHopsHistogram to_histogram(const std::vector<std::size_t>& hops) {
  MinHopsHistogram h;
  for (auto v : hops) {
    if (v == SIZE_MAX) {
      h.unreachable += 1.0 / hops.size();
      continue;
    }
    if (h.by_hops.size() <= v) h.by_hops.resize(v + 1, 0.0);
    h.by_hops[v] += 1.0 / hops.size();
  }
  return h;
}

void expect_same(const MinHopsHistogram& a, const MinHopsHistogram& b) {
  ASSERT_EQ(a.by_hops.size(), b.by_hops.size());
  for (std::size_t i = 0; i < a.by_hops.size(); ++i) EXPECT_NEAR(a.by_hops[i], b.by_hops[i], 1e-12);
  EXPECT_NEAR(a.unreachable, b.unreachable, 1e-12);
}

TEST(MinHops, TargetsAreHopZeroAndCompleteGraphIsOneHop) {
  const auto data = testing::uniform_cube(20, 2, 3);
  const auto g = testing::complete_graph(data);
  const std::vector<NodeId> targets{3, 7};
  const auto h = min_hops_histogram(g, targets);
  ASSERT_EQ(h.by_hops.size(), 2u);
  EXPECT_DOUBLE_EQ(h.by_hops[0], 2.0 / 20);
  EXPECT_DOUBLE_EQ(h.by_hops[1], 18.0 / 20);
  EXPECT_EQ(h.unreachable, 0.0);
}

TEST(MinHops, TwoComponentsFillTheInfiniteBucket) {
  // 7-node chain-ish component and a 5-node component
  NeighborGraph::Adjacency adj(12);
  auto link = [&](NodeId a, NodeId b) {
    adj[a].push_back({b, 1.f});
    adj[b].push_back({a, 1.f});
  };
  for (NodeId u = 0; u + 1 < 7; ++u) link(u, u + 1);
  for (NodeId u = 7; u + 1 < 12; ++u) link(u, u + 1);
  for (auto& l : adj) sort_neighbors(l);
  const NeighborGraph g(GraphKind::Dpg, 1, std::move(adj));
  const std::vector<NodeId> targets{0};
  const auto h = min_hops_histogram(g, targets);
  EXPECT_NEAR(h.unreachable, 5.0 / 12, 1e-12);
  EXPECT_NEAR(h.total(), 1.0, 1e-12);
  expect_same(h, to_histogram(forward_min_hops(g, targets)));
}

TEST(MinHops, MatchesForwardBfsOracle) {
  const auto all = gen_gauss_clusters(600, 6, 4, 10.0, 1.0, 5);
  NnDescentParams nn;
  nn.K = 8;
  const auto knn = build_knn_graph(all, nn);
  DpgParams dp;
  dp.kappa = 4;
  const auto dpg = diversify_graph(all, knn, dp);
  std::mt19937 gen(2);
  for (const auto* g : {&knn, &dpg}) {
    for (int t = 0; t < 5; ++t) {
      std::vector<NodeId> targets;
      for (int i = 0; i < 5; ++i) targets.push_back(gen() % all.size());
      const auto h = min_hops_histogram(*g, targets);
      EXPECT_NEAR(h.total(), 1.0, 1e-12);
      expect_same(h, to_histogram(forward_min_hops(*g, targets)));
    }
  }
}

TEST(MinHops, MeanHistogram) {
  MinHopsHistogram a{{0.5, 0.5}, 0.0}, b{{0.25}, 0.75};
  const std::vector<MinHopsHistogram> parts{a, b};
  const auto m = mean_histogram(parts);
  ASSERT_EQ(m.by_hops.size(), 2u);
  EXPECT_DOUBLE_EQ(m.by_hops[0], 0.375);
  EXPECT_DOUBLE_EQ(m.by_hops[1], 0.25);
  EXPECT_DOUBLE_EQ(m.unreachable, 0.375);
  EXPECT_THROW(min_hops_histogram(NeighborGraph(GraphKind::Dpg, 1, {{{1, 1.f}}, {{0, 1.f}}}), {}), UsageError);
}

}  // namespace
}  // namespace dpg
