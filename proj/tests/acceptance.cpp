// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "instances.hpp"
#include "surf/distances.hpp"
#include "surf/errors.hpp"
#include "surf/mssp_linear.hpp"
#include "surf/mssp_ref.hpp"
#include "surf/sssp.hpp"

using namespace surf;
using surf::testing::Perturbed;

namespace {

// Pinned thresholds.
constexpr int kPathInstances = 1000;
constexpr int kFlowInstances = 200;
constexpr int kDrainInstances = 60;
constexpr int kFuzzInstances = 500;
constexpr int kPlanarInstances = 500;
constexpr int kInvariantInstances = 300;
constexpr int64_t kPivotFactor = 16;
constexpr double kDoublingRatio = 2.5;
constexpr double kScalingRatio = 6.0;
constexpr double kScalingBudgetSec = 120.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
}

std::vector<int64_t> raw_costs(const EmbeddedGraph& g, int64_t max_cost, std::mt19937_64& rng) {
  std::vector<int64_t> c(g.num_darts());
  for (auto& x : c) x = static_cast<int64_t>(rng() % static_cast<uint64_t>(max_cost + 1));
  return c;
}

Outcome path_uniqueness() {
  std::mt19937_64 rng(101);
  long pairs = 0, bad = 0;
  for (int k = 0; k < kPathInstances; ++k) {
    int n = 2 + static_cast<int>(rng() % 11);
    int genus = k % 4;
    EmbeddedGraph g = random_surface(n, genus, static_cast<int>(rng() % 4), rng(), 0.05);
    auto c = raw_costs(g, 5, rng);
    VertexId s = static_cast<VertexId>(rng() % n);
    Perturbed p(g, c, s, 0, Variant::Standard);
    HolyTree t = holiest_sssp(g, p.costs, s);
    for (VertexId v = 0; v < n; ++v) {
      if (v == s) continue;
      auto paths = enumerate_min_paths(g, c, s, v);
      std::vector<PerturbedCost> pc;
      for (auto& path : paths) pc.push_back(sum_over(p.costs, path));
      auto best = std::min_element(pc.begin(), pc.end());
      long winners = std::count(pc.begin(), pc.end(), *best);
      ++pairs;
      if (winners != 1 || paths[best - pc.begin()] != tree_path(g, t.pred, v)) ++bad;
    }
  }
  return {bad == 0, std::to_string(kPathInstances) + " instances, " + std::to_string(pairs) + " pairs, " +
                        std::to_string(bad) + " violations"};
}

Outcome flow_uniqueness() {
  std::mt19937_64 rng(202);
  int done = 0, bad = 0, mixed = 0;
  while (done < kFlowInstances) {
    int genus = static_cast<int>(rng() % 2);
    int n = 2 + static_cast<int>(rng() % 4);
    int extra = static_cast<int>(rng() % 3);
    EmbeddedGraph g = random_surface(n, genus, extra, rng(), 0.1);
    if (g.num_edges() > 8) continue;
    auto c = raw_costs(g, 5, rng);
    Perturbed p(g, c, 0, 0, Variant::Standard);
    std::vector<int64_t> mu(g.num_darts()), f(g.num_darts());
    for (DartId d = 0; d < g.num_darts(); ++d) {
      mu[d] = static_cast<int64_t>(rng() % 3);
      f[d] = static_cast<int64_t>(rng() % static_cast<uint64_t>(mu[d] + 1));
    }
    auto b = imbalance_of_flow(g, f);
    if (std::any_of(b.begin(), b.end(), [](int64_t x) { return x > 0; }) &&
        std::any_of(b.begin(), b.end(), [](int64_t x) { return x < 0; }))
      ++mixed;
    auto flows = enumerate_min_flows(g, p.costs, mu, b);
    std::vector<PerturbedCost> fc;
    for (auto& fl : flows) fc.push_back(flow_cost(p.costs, fl));
    auto best = std::min_element(fc.begin(), fc.end());
    if (flows.empty() || std::count(fc.begin(), fc.end(), *best) != 1) ++bad;
    ++done;
  }
  return {bad == 0, std::to_string(done) + " instances (" + std::to_string(mixed) + " with mixed demands), " +
                        std::to_string(bad) + " without a unique winner"};
}

Outcome drainage_cut_sums() {
  std::mt19937_64 rng(303);
  int done = 0;
  long subsets = 0, bad = 0;
  while (done < kDrainInstances) {
    int genus = static_cast<int>(rng() % 4);
    EmbeddedGraph g = random_surface(3 + static_cast<int>(rng() % 15), genus, static_cast<int>(rng() % 12), rng(), 0.05);
    const int nf = g.num_faces();
    if (nf > 12 || nf < 2) continue;
    FaceId r = static_cast<FaceId>(rng() % nf);
    Drainage dr = cotree_drainage(g, tree_cotree(g, 0, r).cotree_succ);
    for (uint32_t mask = 1; mask + 1 < (1u << nf); ++mask) {
      std::vector<FaceId> sub;
      for (FaceId f = 0; f < nf; ++f)
        if (mask >> f & 1) sub.push_back(f);
      const int64_t k = static_cast<int64_t>(sub.size());
      const bool has_r = mask >> r & 1;
      int64_t s = cut_sum(g, dr, sub);
      if (s != (has_r ? nf - k : -k) || (has_r ? s <= 0 : s >= 0)) ++bad;
      ++subsets;
    }
    ++done;
  }
  return {bad == 0, std::to_string(done) + " instances, " + std::to_string(subsets) + " subsets, " +
                        std::to_string(bad) + " violations"};
}

// Criteria 4, 5 and 8 share one fuzz campaign.
struct FuzzReport {
  int instances = 0, ties = 0, trace_mismatch = 0, dist_mismatch = 0;
  long pivots = 0, pairs = 0;
  bool ran = false;
};

FuzzReport fuzz;

void run_fuzz() {
  if (fuzz.ran) return;
  fuzz.ran = true;
  std::mt19937_64 rng(404);
  for (int k = 0; k < kFuzzInstances; ++k) {
    int n = 2 + static_cast<int>(rng() % 199);
    int genus = k % 4;
    int extra = static_cast<int>(rng() % static_cast<uint64_t>(n / 2 + 1));
    auto in = surf::testing::random_instance(n, genus, extra, 5, rng());
    ++fuzz.instances;
    std::vector<PivotEvent> ref;
    try {
      ref = mssp_reference(in.g, in.c, in.r, Variant::Modified);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TieDetected) throw;
      ++fuzz.ties;
      continue;
    }
    auto lin = mssp_linear(in.g, in.c, in.r);
    fuzz.pivots += static_cast<long>(ref.size());
    std::string a, b;
    for (auto& e : ref) a += to_json_line(e) + '\n';
    for (auto& e : lin) b += to_json_line(e) + '\n';
    if (a != b) ++fuzz.trace_mismatch;

    auto bd = in.g.face_darts(in.r);
    auto walk = surf::testing::random_walk(in.g, 1 + static_cast<int>(rng() % (2 * n)), rng);
    int count = 1 + static_cast<int>(rng() % static_cast<uint64_t>(4 * n));
    auto corr = surf::testing::random_corr(static_cast<int>(bd.size()), static_cast<int>(walk.size()), count, rng);
    auto rows = mssp_distances(in.g, in.c, in.r, walk, corr, Engine::Linear);
    std::map<int, std::vector<int64_t>> dij;
    bool ok = rows.size() == corr.size();
    for (size_t q = 0; ok && q < rows.size(); ++q) {
      auto [it, fresh] = dij.try_emplace(rows[q].i);
      if (fresh) it->second = dijkstra_c0(in.g, in.c, in.g.tail(bd[rows[q].i - 1]));
      ok = rows[q].i == corr[q].first && rows[q].j == corr[q].second &&
           rows[q].dist == it->second[walk[rows[q].j - 1]];
    }
    fuzz.pairs += static_cast<long>(corr.size());
    if (!ok) ++fuzz.dist_mismatch;
  }
}

Outcome tie_freeness() {
  run_fuzz();
  return {fuzz.ties == 0, std::to_string(fuzz.instances) + " instances (n <= 200, g <= 3), " +
                              std::to_string(fuzz.ties) + " ties"};
}

Outcome engine_equivalence() {
  run_fuzz();
  return {fuzz.trace_mismatch == 0 && fuzz.ties == 0,
          std::to_string(fuzz.instances) + " instances, " + std::to_string(fuzz.pivots) + " events, " +
              std::to_string(fuzz.trace_mismatch) + " differing traces"};
}

Outcome distance_correctness() {
  run_fuzz();
  return {fuzz.dist_mismatch == 0, std::to_string(fuzz.instances) + " instances, " + std::to_string(fuzz.pairs) +
                                       " pairs, " + std::to_string(fuzz.dist_mismatch) + " instances with errors"};
}

class LeafmostCheck : public RefObserver {
 public:
  explicit LeafmostCheck(const MsspSetup& s) : s_(s) {}
  void before_pivot(const RefState& st, DartId chosen) override {
    ++pivots;
    if (leafmost_planar_pivot(*s_.g, s_.costs, st, s_.r) != chosen) ++bad;
  }
  long pivots = 0, bad = 0;

 private:
  const MsspSetup& s_;
};

Outcome planar_leafmost() {
  std::mt19937_64 rng(606);
  long pivots = 0, bad = 0;
  for (int k = 0; k < kPlanarInstances; ++k) {
    int n = 3 + static_cast<int>(rng() % 40);
    auto in = surf::testing::random_instance(n, 0, static_cast<int>(rng() % static_cast<uint64_t>(n)), 5, rng());
    MsspSetup s = prepare_mssp(in.g, in.c, in.r, Variant::Modified);
    LeafmostCheck check(s);
    mssp_reference(s, nullptr, &check);
    pivots += check.pivots;
    bad += check.bad;
  }
  return {bad == 0 && pivots > 0, std::to_string(kPlanarInstances) + " planar instances, " + std::to_string(pivots) +
                                      " pivots, " + std::to_string(bad) + " disagreements"};
}

long regular_pivots(const EmbeddedGraph& g, std::span<const int64_t> c, FaceId r) {
  auto ev = mssp_linear(g, c, r);
  return std::count_if(ev.begin(), ev.end(), [](const PivotEvent& e) { return e.kind == PivotKind::Regular; });
}

Outcome pivot_bound() {
  bool ok = true;
  std::string detail;
  auto within = [&](long count, int genus, int n) {
    if (count > kPivotFactor * (genus + 1) * n) ok = false;
  };
  // Torus grids with unit costs: n = 400, 800, 1600, 3200.
  std::vector<long> torus;
  for (auto [w, h] : {std::pair{20, 20}, {20, 40}, {40, 40}, {40, 80}}) {
    EmbeddedGraph g = torus_grid(w, h);
    long p = regular_pivots(g, unit_costs(g), 0);
    within(p, 1, w * h);
    torus.push_back(p);
  }
  double worst = 0;
  for (size_t i = 1; i < torus.size(); ++i) worst = std::max(worst, double(torus[i]) / double(std::max(1L, torus[i - 1])));
  // Random surfaces: mean over seeds at n = 100, 200, 400 for each genus.
  for (int genus = 0; genus <= 3; ++genus) {
    std::vector<double> mean;
    for (int n : {100, 200, 400}) {
      long total = 0;
      for (uint64_t seed = 1; seed <= 8; ++seed) {
        auto in = surf::testing::random_instance(n, genus, n / 2, 5, seed * 1000 + n + genus);
        long p = regular_pivots(in.g, in.c, in.r);
        within(p, genus, n);
        total += p;
      }
      mean.push_back(double(total) / 8);
    }
    for (size_t i = 1; i < mean.size(); ++i) worst = std::max(worst, mean[i] / std::max(1.0, mean[i - 1]));
  }
  if (worst > kDoublingRatio) ok = false;
  char buf[160];
  std::snprintf(buf, sizeof buf, "torus pivots %ld/%ld/%ld/%ld, worst doubling ratio %.2f (limit %.1f)", torus[0],
                torus[1], torus[2], torus[3], worst, kDoublingRatio);
  return {ok, buf};
}

Outcome scaling() {
  using clock = std::chrono::steady_clock;
  auto suite_start = clock::now();
  const std::vector<int> sides{50, 100, 200, 400};
  std::vector<EmbeddedGraph> graphs;
  for (int side : sides) graphs.push_back(torus_grid(side, side));
  // Repetitions go round-robin over the sizes so load spikes hit all of them alike.
  std::vector<std::vector<double>> t(sides.size());
  for (int rep = 0; rep < 7; ++rep)
    for (size_t k = 0; k < graphs.size(); ++k) {
      auto c = unit_costs(graphs[k]);
      auto t0 = clock::now();
      auto ev = mssp_linear(graphs[k], c, 0);
      t[k].push_back(std::chrono::duration<double>(clock::now() - t0).count());
    }
  std::vector<double> med;
  for (auto& v : t) {
    std::sort(v.begin(), v.end());
    med.push_back(v[v.size() / 2]);
  }
  double total = std::chrono::duration<double>(clock::now() - suite_start).count();
  double worst = 0;
  for (size_t i = 1; i < med.size(); ++i) worst = std::max(worst, med[i] / med[i - 1]);
  char buf[200];
  std::snprintf(buf, sizeof buf, "median s at n=2.5k/10k/40k/160k: %.4f/%.4f/%.4f/%.4f, worst 4x ratio %.2f, suite %.1fs",
                med[0], med[1], med[2], med[3], worst, total);
  return {worst <= kScalingRatio && total < kScalingBudgetSec, buf};
}

// Independent check of cut-path constancy on one tree: the dual of the
// non-tree edges is peeled to its 2-core; across every degree-2 dual vertex
// the fundamental-cycle signature must carry over, and hair edges must have
// zero signature.
struct CutPathCheck {
  long faces_checked = 0, bad = 0;

  void check(const EmbeddedGraph& g, const HomologySignature& s, std::span<const DartId> pred) {
    const int dim = s.dim(), ne = g.num_edges(), nv = g.num_vertices();
    std::vector<char> tree(ne, 0);
    for (DartId d : pred)
      if (d != kNone) tree[edge_of(d)] = 1;
    // Signature of the tree path from the root to each vertex.
    std::vector<int64_t> pot(static_cast<size_t>(nv) * dim, 0);
    std::vector<char> done(nv, 0);
    std::function<void(VertexId)> fill = [&](VertexId v) {
      if (done[v]) return;
      done[v] = 1;
      DartId d = pred[v];
      if (d == kNone) return;
      fill(g.tail(d));
      for (int i = 0; i < dim; ++i) pot[v * dim + i] = pot[g.tail(d) * dim + i] + s.dart(d, i);
    };
    for (VertexId v = 0; v < nv; ++v) fill(v);
    auto fund = [&](DartId d) {
      std::vector<int64_t> out(dim);
      for (int i = 0; i < dim; ++i) out[i] = pot[g.tail(d) * dim + i] + s.dart(d, i) - pot[g.head(d) * dim + i];
      return out;
    };

    std::vector<int> deg(g.num_faces(), 0);
    std::vector<char> core(ne, 0);
    for (EdgeId e = 0; e < ne; ++e)
      if (!tree[e]) {
        core[e] = 1;
        ++deg[g.face_of(2 * e)];
        ++deg[g.left_face(2 * e)];
      }
    std::vector<std::vector<EdgeId>> inc(g.num_faces());
    for (EdgeId e = 0; e < ne; ++e)
      if (core[e]) {
        inc[g.face_of(2 * e)].push_back(e);
        if (g.left_face(2 * e) != g.face_of(2 * e)) inc[g.left_face(2 * e)].push_back(e);
      }
    std::vector<FaceId> queue;
    for (FaceId f = 0; f < g.num_faces(); ++f)
      if (deg[f] == 1) queue.push_back(f);
    while (!queue.empty()) {
      FaceId f = queue.back();
      queue.pop_back();
      if (deg[f] != 1) continue;
      for (EdgeId e : inc[f]) {
        if (!core[e]) continue;
        core[e] = 0;
        auto h = fund(2 * e);
        if (std::any_of(h.begin(), h.end(), [](int64_t x) { return x != 0; })) ++bad;
        for (FaceId x : {g.face_of(2 * e), g.left_face(2 * e)}) {
          --deg[x];
          if (deg[x] == 1) queue.push_back(x);
        }
        break;
      }
    }
    for (FaceId f = 0; f < g.num_faces(); ++f) {
      if (deg[f] != 2) continue;
      // The two core darts on the boundary of f; the chain enters through one
      // and leaves through the reversal of the other.
      std::vector<DartId> on_f;
      for (EdgeId e : inc[f]) {
        if (!core[e]) continue;
        if (g.face_of(2 * e) == g.left_face(2 * e)) break;  // a lone loop closes the chain on itself
        on_f.push_back(g.face_of(2 * e) == f ? 2 * e : 2 * e + 1);
      }
      if (on_f.size() != 2) continue;
      ++faces_checked;
      auto a = fund(on_f[0]), b = fund(on_f[1]);
      for (int i = 0; i < dim; ++i)
        if (a[i] != -b[i]) ++bad;
    }
  }
};

class TreeInvariants : public RefObserver {
 public:
  TreeInvariants(const EmbeddedGraph& g, const HomologySignature& s) : g_(g), s_(s) {}
  void after_special(const RefState& st) override { cp.check(g_, s_, st.pred); }
  void after_iteration(const RefState& st) override { cp.check(g_, s_, st.pred); }
  CutPathCheck cp;

 private:
  const EmbeddedGraph& g_;
  const HomologySignature& s_;
};

Outcome homology_invariants() {
  std::mt19937_64 rng(1010);
  long bad = 0, trees = 0, joints = 0;
  std::vector<EmbeddedGraph> graphs{torus_grid(5, 4), planar_grid(4, 5), bouquet(1), bouquet(3)};
  for (int k = 0; k < kInvariantInstances; ++k)
    graphs.push_back(random_surface(2 + static_cast<int>(rng() % 60), k % 4, static_cast<int>(rng() % 20), rng(), 0.05));
  for (const EmbeddedGraph& g : graphs) {
    FaceId r = static_cast<FaceId>(rng() % g.num_faces());
    std::mt19937_64 crng(rng());
    auto c = surf::testing::positive_cycle_costs(g, 5, crng);
    MsspSetup s = prepare_mssp(g, c, r, Variant::Modified);
    const TreeCotree& tc = s.tc;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      auto sig = s.sigs.edge(e);
      if (tc.in_tree[e] && std::any_of(sig.begin(), sig.end(), [](int32_t x) { return x != 0; })) ++bad;
    }
    if (static_cast<int>(tc.leftover.size()) != 2 * g.genus()) ++bad;
    for (size_t i = 0; i < tc.leftover.size(); ++i) {
      auto sig = s.sigs.edge(tc.leftover[i]);
      for (int j = 0; j < s.sigs.dim(); ++j)
        if (sig[j] != (j == static_cast<int>(i) ? 1 : 0)) ++bad;
    }
    for (const auto& f : faces(g)) {
      auto w = walk_signature(s.sigs, f);
      if (std::any_of(w.begin(), w.end(), [](int64_t x) { return x != 0; })) ++bad;
    }
    TreeInvariants obs(g, s.sigs);
    mssp_reference(s, nullptr, &obs);
    bad += obs.cp.bad;
    joints += obs.cp.faces_checked;
    ++trees;
  }
  return {bad == 0 && joints > 0, std::to_string(trees) + " instances, " + std::to_string(joints) +
                                     " cut-path joints checked, " + std::to_string(bad) + " violations"};
}

}  // namespace

int main() {
  run(1, "shortest-path uniqueness", path_uniqueness);
  run(2, "min-cost-flow uniqueness", flow_uniqueness);
  run(3, "drainage cut sums", drainage_cut_sums);
  run(4, "mssp tie-freeness", tie_freeness);
  run(5, "engine trace equivalence", engine_equivalence);
  run(6, "planar leafmost selector", planar_leafmost);
  run(7, "pivot-count bound", pivot_bound);
  run(8, "distance correctness", distance_correctness);
  run(9, "near-linear scaling", scaling);
  run(10, "homology invariants", homology_invariants);
  return failures == 0 ? 0 : 1;
}
