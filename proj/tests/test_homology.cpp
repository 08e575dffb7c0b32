#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>

#include "instances.hpp"
#include "surf/errors.hpp"
#include "surf/homology.hpp"
#include "surf/oracles.hpp"

using namespace surf;

namespace {

int count(const std::vector<char>& v) { return static_cast<int>(std::count(v.begin(), v.end(), 1)); }

bool all_zero(std::span<const int64_t> v) {
  return std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 0; });
}

}  // namespace

TEST(Homology, TreeCotreeCounts) {
  EmbeddedGraph c4 = planar_grid(2, 2);
  TreeCotree a = tree_cotree(c4, 0, 0);
  EXPECT_EQ(count(a.in_tree), 3);
  EXPECT_EQ(count(a.in_cotree), 1);
  EXPECT_TRUE(a.leftover.empty());

  EmbeddedGraph b = bouquet(1);
  TreeCotree t = tree_cotree(b, 0, 0);
  EXPECT_EQ(count(t.in_tree), 0);
  EXPECT_EQ(count(t.in_cotree), 0);
  EXPECT_EQ(t.leftover, (std::vector<EdgeId>{0, 1}));

  EmbeddedGraph tg = torus_grid(3, 3);
  TreeCotree u = tree_cotree(tg, 0, 0);
  EXPECT_EQ(count(u.in_tree), 8);
  EXPECT_EQ(count(u.in_cotree), 8);
  EXPECT_EQ(u.leftover.size(), 2u);
}

TEST(Homology, BouquetSignaturesAreUnitVectors) {
  EmbeddedGraph b = bouquet(1);
  HomologySignature s = homology_signatures(b, tree_cotree(b, 0, 0));
  ASSERT_EQ(s.dim(), 2);
  EXPECT_EQ(std::abs(s.edge(0)[0]) + std::abs(s.edge(0)[1]), 1);
  EXPECT_EQ(std::abs(s.edge(0)[0]), 1);
  EXPECT_EQ(std::abs(s.edge(1)[1]), 1);
  std::vector<DartId> loop_a{0};
  auto w = walk_signature(s, loop_a);
  EXPECT_EQ(std::abs(w[0]), 1);
  EXPECT_EQ(w[1], 0);
}

TEST(Homology, PlanarSignaturesAreEmpty) {
  EmbeddedGraph g = planar_grid(3, 3);
  HomologySignature s = homology_signatures(g, tree_cotree(g, 0, 0));
  EXPECT_EQ(s.dim(), 0);
  std::vector<DartId> walk{0, 1};
  EXPECT_TRUE(walk_signature(s, walk).empty());
}

TEST(Homology, InvariantsOnRandomSurfaces) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    auto in = surf::testing::random_instance(5 + seed % 30, seed % 4, seed % 9, 3, seed);
    const EmbeddedGraph& g = in.g;
    TreeCotree tc = tree_cotree(g, static_cast<VertexId>(seed % g.num_vertices()), in.r);
    HomologySignature s = homology_signatures(g, tc);
    ASSERT_EQ(static_cast<int>(tc.leftover.size()), 2 * g.genus());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      EXPECT_EQ(tc.in_tree[e] + tc.in_cotree[e] <= 1, true);
      for (int32_t x : s.edge(e)) {
        EXPECT_LE(std::abs(x), 1);
        if (tc.in_tree[e]) EXPECT_EQ(x, 0);
      }
    }
    for (size_t i = 0; i < tc.leftover.size(); ++i) {
      auto sig = s.edge(tc.leftover[i]);
      for (int j = 0; j < s.dim(); ++j) EXPECT_EQ(sig[j], j == static_cast<int>(i) ? 1 : 0);
    }
    for (const auto& f : faces(g)) {
      EXPECT_TRUE(all_zero(walk_signature(s, f)));
      EXPECT_TRUE(is_boundary_class(g, s, f));
    }
  }
}

TEST(Homology, SignatureIsAdditive) {
  auto in = surf::testing::random_instance(20, 2, 5, 3, 77);
  HomologySignature s = homology_signatures(in.g, tree_cotree(in.g, 0, 0));
  std::vector<DartId> a{0, 5, 9}, b{3, 4, 12, 17};
  std::vector<DartId> ab(a);
  ab.insert(ab.end(), b.begin(), b.end());
  auto sa = walk_signature(s, a), sb = walk_signature(s, b), sab = walk_signature(s, ab);
  for (int i = 0; i < s.dim(); ++i) EXPECT_EQ(sab[i], sa[i] + sb[i]);
  EXPECT_TRUE(all_zero(walk_signature(s, {})));
}

TEST(Homology, BoundaryClassOnBouquet) {
  EmbeddedGraph b = bouquet(1);
  HomologySignature s = homology_signatures(b, tree_cotree(b, 0, 0));
  std::vector<DartId> a{0}, back{0, 1};
  EXPECT_FALSE(is_boundary_class(b, s, a));
  EXPECT_TRUE(is_boundary_class(b, s, back));
  EXPECT_TRUE(is_boundary_class(b, s, faces(b)[0]));
}

TEST(Homology, BoundaryClassRejectsNonCirculation) {
  EmbeddedGraph g = planar_grid(2, 2);
  HomologySignature s = homology_signatures(g, tree_cotree(g, 0, 0));
  std::vector<DartId> one{0};
  try {
    is_boundary_class(g, s, one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotACirculation);
  }
}
