#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "instances.hpp"
#include "surf/errors.hpp"
#include "surf/mssp_ref.hpp"
#include "surf/sssp.hpp"

using namespace surf;
using surf::testing::path_graph;
using surf::testing::random_instance;

namespace {

HolyTree fresh_tree(const MsspSetup& s, VertexId src) {
  return s.variant == Variant::Standard ? holiest_sssp(*s.g, s.costs, src)
                                        : holiest_tree_small_int(*s.g, s.costs, src);
}

// Compares every iteration's final tree with one recomputed from scratch.
class TreeAudit : public RefObserver {
 public:
  explicit TreeAudit(const MsspSetup& s) : s_(s) {}
  void after_iteration(const RefState& st) override {
    HolyTree t = fresh_tree(s_, st.v);
    EXPECT_TRUE(std::equal(t.pred.begin(), t.pred.end(), st.pred.begin())) << "iteration " << st.iter;
    EXPECT_TRUE(std::equal(t.dist.begin(), t.dist.end(), st.dist.begin())) << "iteration " << st.iter;
    ++checked;
  }
  int checked = 0;

 private:
  const MsspSetup& s_;
};

class LeafmostAudit : public RefObserver {
 public:
  LeafmostAudit(const MsspSetup& s) : s_(s) {}
  void before_pivot(const RefState& st, DartId chosen) override {
    EXPECT_EQ(leafmost_planar_pivot(*s_.g, s_.costs, st, s_.r), chosen);
    auto walk = cotree_walk_to_root(*s_.g, st.pred, s_.g->face_of(st.vu), s_.r);
    std::set<DartId> a(st.active.begin(), st.active.end()), w(walk.begin(), walk.end());
    EXPECT_EQ(a, w);
    ++pivots;
  }
  int pivots = 0;

 private:
  const MsspSetup& s_;
};

}  // namespace

TEST(MsspRef, PathGraphOnlySpecialPivots) {
  EmbeddedGraph g = path_graph(5);
  auto c = unit_costs(g);
  MsspSetup s = prepare_mssp(g, c, 0, Variant::Modified);
  TreeAudit audit(s);
  auto ev = mssp_reference(s, nullptr, &audit);
  EXPECT_EQ(ev.size(), 8u);
  for (auto& e : ev) EXPECT_EQ(e.kind, PivotKind::Special);
  EXPECT_EQ(audit.checked, 8);
}

TEST(MsspRef, FourCycleMatchesPerSourceTrees) {
  for (Variant var : {Variant::Standard, Variant::Modified}) {
    EmbeddedGraph g = planar_grid(2, 2);
    auto c = unit_costs(g);
    for (FaceId r = 0; r < g.num_faces(); ++r) {
      MsspSetup s = prepare_mssp(g, c, r, var);
      TreeAudit audit(s);
      mssp_reference(s, nullptr, &audit);
      EXPECT_EQ(audit.checked, 4);
    }
  }
}

TEST(MsspRef, TorusGridDistancesMatchBellmanFord) {
  EmbeddedGraph g = torus_grid(3, 3);
  auto c = unit_costs(g);
  MsspSetup s = prepare_mssp(g, c, 0, Variant::Modified);
  struct BF : RefObserver {
    const MsspSetup* s;
    void after_iteration(const RefState& st) override {
      HolyTree t = brute_sssp(*s->g, s->costs, st.v);
      EXPECT_TRUE(std::equal(t.dist.begin(), t.dist.end(), st.dist.begin()));
    }
  } bf;
  bf.s = &s;
  mssp_reference(s, nullptr, &bf);
}

TEST(MsspRef, RandomSurfacesStandardAndModified) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    auto in = random_instance(6 + seed % 15, seed % 3, seed % 7, 5, seed);
    for (Variant var : {Variant::Standard, Variant::Modified}) {
      MsspSetup s = prepare_mssp(in.g, in.c, in.r, var);
      TreeAudit audit(s);
      auto ev = mssp_reference(s, nullptr, &audit);
      for (size_t i = 1; i < ev.size(); ++i)
        if (ev[i].kind == PivotKind::Regular && ev[i - 1].iter == ev[i].iter)
          EXPECT_LE(ev[i - 1].lambda_c0, ev[i].lambda_c0);
    }
  }
}

TEST(MsspRef, ActiveDartsAreBlueToRedScan) {
  auto in = random_instance(14, 1, 3, 4, 99);
  MsspSetup s = prepare_mssp(in.g, in.c, in.r, Variant::Modified);
  struct Check : RefObserver {
    const EmbeddedGraph* g;
    int seen = 0;
    void after_special(const RefState& st) override {
      // The engine's candidates are the scan minus the parametric dart itself.
      std::set<DartId> scan;
      for (DartId d = 0; d < g->num_darts(); ++d)
        if (!st.red[g->tail(d)] && st.red[g->head(d)]) scan.insert(d);
      auto got = active_darts(*g, st.red);
      EXPECT_EQ(std::set<DartId>(got.begin(), got.end()), scan);
      std::set<DartId> cand(st.active.begin(), st.active.end());
      cand.insert(st.vu);
      EXPECT_EQ(cand, scan);
      EXPECT_TRUE(st.red[st.u]);
      EXPECT_FALSE(st.red[st.v]);
      ++seen;
    }
  } chk;
  chk.g = &in.g;
  mssp_reference(s, nullptr, &chk);
  EXPECT_GT(chk.seen, 0);
}

TEST(MsspRef, LeafmostRuleMatchesPerturbedChoiceOnPlanarInstances) {
  int total = 0;
  for (uint64_t seed = 1; seed <= 150; ++seed) {
    auto in = random_instance(5 + seed % 20, 0, seed % 9, 4, seed * 7919);
    MsspSetup s = prepare_mssp(in.g, in.c, in.r, Variant::Modified);
    LeafmostAudit audit(s);
    mssp_reference(s, nullptr, &audit);
    total += audit.pivots;
  }
  EXPECT_GT(total, 50);
}

TEST(MsspRef, LeafmostRejectsNonPlanar) {
  EmbeddedGraph g = torus_grid(3, 3);
  auto c = unit_costs(g);
  MsspSetup s = prepare_mssp(g, c, 0, Variant::Modified);
  RefState st;
  EXPECT_THROW(leafmost_planar_pivot(g, s.costs, st, 0), Error);
}

TEST(MsspRef, JsonLineFormat) {
  PivotEvent e{3, PivotKind::Regular, 5, 8, -2};
  EXPECT_EQ(to_json_line(e), R"({"iter":3,"kind":"regular","in":5,"out":8,"lambda_c0":-2})");
}
