#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dpg/distance.hpp"
#include "dpg/error.hpp"
#include "dpg/rng.hpp"
#include "dpg/types.hpp"
#include "test_util.hpp"

namespace dpg {
namespace {

using V = std::vector<float>;

TEST(Distance, KnownValues) {
  EXPECT_FLOAT_EQ(euclidean_distance(V{0, 0}, V{3, 4}), 5.0f);
  EXPECT_FLOAT_EQ(euclidean_distance(V{1, 2, 3}, V{4, 6, 3}), 5.0f);
  const V x{0.25f, -7.5f, 3.0f};
  EXPECT_EQ(euclidean_distance(x, x), 0.0f);
}

TEST(Distance, DimensionMismatchIsUsageError) {
  EXPECT_THROW(euclidean_distance(V{1, 2}, V{1, 2, 3}), UsageError);
}

TEST(Distance, MatchesLongDoubleReferenceInHighDimension) {
  const auto data = testing::uniform_cube(2, 4096, 3);
  EXPECT_NEAR(euclidean_distance(data.row(0), data.row(1)), testing::naive_dist(data.row(0), data.row(1)), 1e-4);
}

TEST(Distance, SymmetricAndTriangleInequality) {
  const auto data = testing::uniform_cube(60, 17, 11);
  std::mt19937 gen(5);
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
  for (int t = 0; t < 500; ++t) {
    const auto a = data.row(pick(gen)), b = data.row(pick(gen)), c = data.row(pick(gen));
    const double ab = euclidean_distance(a, b), bc = euclidean_distance(b, c), ac = euclidean_distance(a, c);
    EXPECT_EQ(euclidean_distance(a, b), euclidean_distance(b, a));
    EXPECT_LE(ac, (ab + bc) * (1 + 1e-5));
  }
}

TEST(AngleAt, AxisCases) {
  const V p{0, 0};
  EXPECT_NEAR(angle_at(p, V{1, 0}, V{0, 1}), std::numbers::pi / 2, 1e-12);
  EXPECT_NEAR(angle_at(p, V{1, 0}, V{2, 0}), 0.0, 1e-12);
  EXPECT_NEAR(angle_at(p, V{1, 0}, V{-1, 0}), std::numbers::pi, 1e-12);
}

TEST(AngleAt, ZeroArmIsGeometryError) {
  EXPECT_THROW(angle_at(V{1, 1}, V{1, 1}, V{0, 1}), GeometryError);
  EXPECT_THROW(angle_at(V{1, 1}, V{0, 1}, V{1, 1}), GeometryError);
}

TEST(AngleAt, SymmetricInArmsAndBounded) {
  const auto data = testing::uniform_cube(30, 9, 2);
  for (std::size_t i = 0; i + 2 < data.size(); ++i) {
    const double a = angle_at(data.row(i), data.row(i + 1), data.row(i + 2));
    EXPECT_EQ(a, angle_at(data.row(i), data.row(i + 2), data.row(i + 1)));
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, std::numbers::pi);
  }
}

TEST(AngleAt, NearlyParallelArmsStayInDomain) {
  // cosine can round above 1 without the clamp
  const V p{0, 0, 0};
  const V x{1e-3f, 1e-3f, 1e-3f};
  const V y{2e-3f, 2e-3f, 2e-3f};
  const double a = angle_at(p, x, y);
  EXPECT_FALSE(std::isnan(a));
  EXPECT_NEAR(a, 0.0, 1e-3);
}

TEST(VectorSet, RejectsBadShapesAndNonFinite) {
  EXPECT_THROW(VectorSet(0, 3, {}), UsageError);
  EXPECT_THROW(VectorSet(2, 0, {}), UsageError);
  EXPECT_THROW(VectorSet(2, 2, {1, 2, 3}), UsageError);
  EXPECT_THROW(VectorSet(1, 2, {1, NAN}), UsageError);
  EXPECT_THROW(VectorSet(1, 2, {INFINITY, 0}), UsageError);
  const VectorSet ok(2, 2, {1, 2, 3, 4});
  EXPECT_EQ(ok.row(1)[0], 3.0f);
}

TEST(NeighborGraph, KnnInvariantsEnforced) {
  using A = NeighborGraph::Adjacency;
  // node 1 lists itself
  EXPECT_THROW(NeighborGraph(GraphKind::Knn, 1, A{{{1, 1.f}}, {{1, 1.f}}}), StructuralError);
  // wrong list length
  EXPECT_THROW(NeighborGraph(GraphKind::Knn, 1, A{{{1, 1.f}}, {}}), StructuralError);
  // unsorted
  EXPECT_THROW(NeighborGraph(GraphKind::Knn, 2, A{{{1, 2.f}, {2, 1.f}}, {{0, 2.f}, {2, 1.f}}, {{1, 1.f}, {0, 1.f}}}),
               StructuralError);
  // duplicate
  EXPECT_THROW(NeighborGraph(GraphKind::Knn, 2, A{{{1, 1.f}, {1, 1.f}}, {{0, 1.f}, {2, 1.f}}, {{0, 1.f}, {1, 1.f}}}),
               StructuralError);
  // tie on distance resolved by id is fine
  EXPECT_NO_THROW(NeighborGraph(GraphKind::Knn, 2, A{{{1, 1.f}, {2, 1.f}}, {{0, 1.f}, {2, 1.f}}, {{0, 1.f}, {1, 1.f}}}));
}

TEST(NeighborGraph, DpgMustBeSymmetric) {
  using A = NeighborGraph::Adjacency;
  EXPECT_THROW(NeighborGraph(GraphKind::Dpg, 1, A{{{1, 1.f}}, {}}), StructuralError);
  const NeighborGraph g(GraphKind::Dpg, 1, A{{{1, 1.f}}, {{0, 1.f}}});
  EXPECT_TRUE(g.is_symmetric());
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(NeighborGraph, DpgEdgeBudget) {
  using A = NeighborGraph::Adjacency;
  // triangle: 6 directed edges, exactly the kappa=1 budget of 2*1*3
  A tri{{{1, 1.f}, {2, 1.f}}, {{0, 1.f}, {2, 1.f}}, {{0, 1.f}, {1, 1.f}}};
  EXPECT_NO_THROW(NeighborGraph(GraphKind::Dpg, 1, tri));
  // complete graph on 4 nodes: 12 edges > 2 * 1 * 4
  A k4(4);
  for (NodeId u = 0; u < 4; ++u) {
    for (NodeId v = 0; v < 4; ++v) {
      if (u != v) k4[u].push_back({v, 1.f});
    }
  }
  EXPECT_THROW(NeighborGraph(GraphKind::Dpg, 1, k4), StructuralError);
}

TEST(Rng, FixedSeedReproducible) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next(), b.next());
  }
  Rng c(7), d(7);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(c.normal(), d.normal());
    EXPECT_EQ(c.below(13), d.below(13));
  }
}

TEST(Rng, UniformAndNormalMoments) {
  Rng rng(1);
  constexpr int N = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < N; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / N, 0.5, 5e-3);
  EXPECT_NEAR(sn / N, 0.0, 1e-2);
  EXPECT_NEAR(sn2 / N, 1.0, 2e-2);
}

TEST(Rng, SampleDistinctHasNoRepeats) {
  Rng rng(3);
  for (std::uint32_t n : {1u, 5u, 64u, 1000u}) {
    for (std::size_t count : {std::size_t{1}, std::size_t(n / 2), std::size_t(n)}) {
      if (count == 0) continue;
      auto s = sample_distinct(rng, n, count);
      ASSERT_EQ(s.size(), count);
      std::sort(s.begin(), s.end());
      EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
      EXPECT_LT(s.back(), n);
    }
  }
  EXPECT_THROW(sample_distinct(rng, 3, 4), UsageError);
}

}  // namespace
}  // namespace dpg
