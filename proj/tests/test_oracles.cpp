#include <gtest/gtest.h>

#include "instances.hpp"
#include "surf/homology.hpp"
#include "surf/oracles.hpp"

using namespace surf;

TEST(Oracles, GeneratorsHaveRequestedGenus) {
  for (int w = 2; w <= 5; ++w)
    for (int h = 2; h <= 4; ++h) {
      EXPECT_EQ(torus_grid(w + 1, h + 1).genus(), 1);
      EXPECT_EQ(planar_grid(w, h).genus(), 0);
      EXPECT_EQ(planar_grid(w, h).num_faces(), (w - 1) * (h - 1) + 1);
    }
  for (int g = 0; g <= 4; ++g) EXPECT_EQ(bouquet(g).genus(), g);
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    int genus = static_cast<int>(seed % 5);
    EmbeddedGraph g = random_surface(3 + seed % 30, genus, seed % 8, seed, 0.1);
    EXPECT_EQ(g.genus(), genus);
    EXPECT_EQ(g.num_vertices(), static_cast<int>(3 + seed % 30));
  }
}

TEST(Oracles, GeneratorsAreDeterministic) {
  EXPECT_EQ(random_surface(20, 2, 5, 42).rotation_lists(), random_surface(20, 2, 5, 42).rotation_lists());
  EmbeddedGraph g = torus_grid(4, 4);
  EXPECT_EQ(uniform_costs(g, 0, 9, 7), uniform_costs(g, 0, 9, 7));
  for (int64_t x : uniform_costs(g, 2, 4, 7)) {
    EXPECT_GE(x, 2);
    EXPECT_LE(x, 4);
  }
  for (int64_t x : unit_costs(g)) EXPECT_EQ(x, 1);
}

TEST(Oracles, ZeroCostCycleDetection) {
  EmbeddedGraph g = planar_grid(2, 2);
  std::vector<int64_t> c(g.num_darts(), 1);
  EXPECT_FALSE(has_zero_cost_cycle(g, c));
  // Both darts of one edge at zero form a 2-cycle.
  c[0] = c[1] = 0;
  EXPECT_TRUE(has_zero_cost_cycle(g, c));
  EXPECT_TRUE(has_zero_cost_cycle(bouquet(1), std::vector<int64_t>{0, 1, 1, 1}));
}

TEST(Oracles, MinPathsAreSimpleAndOfEqualCost) {
  EmbeddedGraph g = planar_grid(3, 3);
  auto c = unit_costs(g);
  // Corner to opposite corner of a 3x3 grid: C(4,2) = 6 shortest paths.
  auto paths = enumerate_min_paths(g, c, 0, 8);
  EXPECT_EQ(paths.size(), 6u);
  for (const auto& p : paths) {
    EXPECT_EQ(p.size(), 4u);
    EXPECT_EQ(g.tail(p.front()), 0);
    EXPECT_EQ(g.head(p.back()), 8);
    for (size_t i = 0; i + 1 < p.size(); ++i) EXPECT_EQ(g.head(p[i]), g.tail(p[i + 1]));
  }
}

TEST(Oracles, BruteSssp) {
  EmbeddedGraph g = surf::testing::path_graph(5);
  auto c = unit_costs(g);
  surf::testing::Perturbed p(g, c, 0, 0, Variant::Standard);
  HolyTree t = brute_sssp(g, p.costs, 2);
  EXPECT_EQ(t.pred[2], kNone);
  EXPECT_EQ(t.pred[3], 4);
  EXPECT_EQ(t.pred[1], 3);
  EXPECT_EQ(t.dist0(0), 2);
  EXPECT_EQ(t.dist_of(4), sum_over(p.costs, std::vector<DartId>{4, 6}));
}

TEST(Oracles, MinFlowsSatisfyDemand) {
  EmbeddedGraph g = planar_grid(2, 2);
  auto c = unit_costs(g);
  surf::testing::Perturbed p(g, c, 0, 0, Variant::Standard);
  std::vector<int64_t> mu(g.num_darts(), 1), b(4, 0);
  b[0] = -1;
  b[3] = 1;
  auto flows = enumerate_min_flows(g, p.costs, mu, b);
  ASSERT_FALSE(flows.empty());
  for (const auto& f : flows) {
    EXPECT_EQ(imbalance_of_flow(g, f), b);
    EXPECT_EQ(flow_cost(p.costs, f).c0(), flow_cost(p.costs, flows[0]).c0());
  }
}
