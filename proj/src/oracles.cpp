#include "surf/oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "surf/errors.hpp"

namespace surf {

HolyTree brute_sssp(const EmbeddedGraph& g, const CostTable& costs, VertexId source) {
  const int n = g.num_vertices(), dim = costs.dim();
  HolyTree t;
  t.root = source;
  t.variant = costs.variant();
  t.dim = dim;
  t.pred.assign(n, kNone);
  t.dist.assign(static_cast<size_t>(n) * dim, 0);
  std::vector<char> reached(n, 0);
  reached[source] = 1;
  std::vector<int64_t> cand(dim);
  auto row = [&](VertexId v) { return std::span<int64_t>(t.dist.data() + static_cast<size_t>(v) * dim, dim); };
  auto relax_all = [&]() {
    bool changed = false;
    for (DartId d = 0; d < g.num_darts(); ++d) {
      VertexId x = g.tail(d), y = g.head(d);
      if (!reached[x]) continue;
      auto rx = row(x);
      auto cr = costs.row(d);
      for (int i = 0; i < dim; ++i) cand[i] = rx[i] + cr[i];
      auto ry = row(y);
      if (!reached[y] || std::lexicographical_compare(cand.begin(), cand.end(), ry.begin(), ry.end())) {
        if (y == source) return 2;  // something cheaper than the empty path
        reached[y] = 1;
        std::copy(cand.begin(), cand.end(), ry.begin());
        t.pred[y] = d;
        changed = true;
      }
    }
    return changed ? 1 : 0;
  };
  for (int round = 0; round < n; ++round) {
    int r = relax_all();
    if (r == 2) fail(ErrorCode::NegativeCycle);
    if (r == 0) break;
    if (round == n - 1) fail(ErrorCode::NegativeCycle);
  }
  for (VertexId v = 0; v < n; ++v)
    if (!reached[v]) fail(ErrorCode::UnreachedVertex, "vertex " + std::to_string(v));
  return t;
}

std::vector<std::vector<DartId>> enumerate_min_paths(const EmbeddedGraph& g, std::span<const int64_t> c,
                                                     VertexId s, VertexId t, int max_vertices) {
  if (g.num_vertices() > max_vertices) fail(ErrorCode::TooLarge);
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  // Exact distances to t bound the search.
  std::vector<int64_t> to_t(g.num_vertices(), kInf);
  {
    using Item = std::pair<int64_t, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    to_t[t] = 0;
    pq.push({0, t});
    while (!pq.empty()) {
      auto [k, y] = pq.top();
      pq.pop();
      if (k != to_t[y]) continue;
      for (DartId d : g.rotation(y)) {
        VertexId x = g.tail(d);
        if (k + c[d] < to_t[x]) {
          to_t[x] = k + c[d];
          pq.push({to_t[x], x});
        }
      }
    }
  }
  std::vector<std::vector<DartId>> out;
  if (to_t[s] >= kInf) return out;
  const int64_t best = to_t[s];
  std::vector<char> on_path(g.num_vertices(), 0);
  std::vector<DartId> path;
  std::function<void(VertexId, int64_t)> dfs = [&](VertexId x, int64_t cost) {
    if (x == t) {
      out.push_back(path);
      return;
    }
    for (DartId in : g.rotation(x)) {
      DartId d = rev(in);
      VertexId y = g.head(d);
      if (on_path[y] || to_t[y] >= kInf || cost + c[d] + to_t[y] > best) continue;
      on_path[y] = 1;
      path.push_back(d);
      dfs(y, cost + c[d]);
      path.pop_back();
      on_path[y] = 0;
    }
  };
  on_path[s] = 1;
  dfs(s, 0);
  return out;
}

PerturbedCost flow_cost(const CostTable& costs, std::span<const int64_t> flow) {
  PerturbedCost out = zero_cost(costs.variant(), costs.dim());
  for (DartId d = 0; d < costs.num_darts(); ++d) {
    if (flow[d] == 0) continue;
    auto r = costs.row(d);
    for (int i = 0; i < costs.dim(); ++i) out.v[i] += flow[d] * r[i];
  }
  return out;
}

std::vector<std::vector<int64_t>> enumerate_min_flows(const EmbeddedGraph& g, const CostTable& costs,
                                                      std::span<const int64_t> mu, std::span<const int64_t> b,
                                                      int max_edges) {
  if (g.num_edges() > max_edges) fail(ErrorCode::TooLarge);
  const int nd = g.num_darts(), n = g.num_vertices();
  // A vertex is checked as soon as its last incident dart is assigned.
  std::vector<int> remaining(n, 0);
  for (DartId d = 0; d < nd; ++d) {
    ++remaining[g.head(d)];
    ++remaining[g.tail(d)];
  }
  std::vector<int64_t> flow(nd, 0), net(n, 0);
  std::vector<std::vector<int64_t>> best;
  int64_t best_cost = std::numeric_limits<int64_t>::max();
  std::function<void(DartId, int64_t)> dfs = [&](DartId d, int64_t cost) {
    if (d == nd) {
      if (cost < best_cost) {
        best_cost = cost;
        best.clear();
      }
      if (cost == best_cost) best.push_back(flow);
      return;
    }
    VertexId x = g.tail(d), y = g.head(d);
    --remaining[x];
    --remaining[y];
    for (int64_t f = 0; f <= mu[d]; ++f) {
      flow[d] = f;
      net[y] += f;
      net[x] -= f;
      bool ok = (remaining[x] > 0 || net[x] == b[x]) && (remaining[y] > 0 || net[y] == b[y]);
      if (ok) dfs(d + 1, cost + f * costs.c0(d));
      net[y] -= f;
      net[x] += f;
    }
    flow[d] = 0;
    ++remaining[x];
    ++remaining[y];
  };
  // Vertices without darts must have zero demand.
  for (VertexId v = 0; v < n; ++v)
    if (remaining[v] == 0 && b[v] != 0) fail(ErrorCode::Infeasible);
  dfs(0, 0);
  if (best.empty()) fail(ErrorCode::Infeasible);
  return best;
}

EmbeddedGraph torus_grid(int w, int h) {
  if (w < 1 || h < 1) fail(ErrorCode::BadParameters, "torus grid needs w, h >= 1");
  const int n = w * h;
  auto id = [&](int i, int j) { return ((j + h) % h) * w + (i + w) % w; };
  auto hor = [&](int i, int j) { return 2 * id(i, j); };      // (i,j) -> (i+1,j)
  auto ver = [&](int i, int j) { return 2 * id(i, j) + 1; };  // (i,j) -> (i,j+1)
  std::vector<std::vector<DartId>> rot(n);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i)
      rot[id(i, j)] = {2 * hor(i, j) + 1, 2 * ver(i, j) + 1, 2 * hor(i - 1, j), 2 * ver(i, j - 1)};
  return EmbeddedGraph::build(n, 2 * n, rot);
}

EmbeddedGraph planar_grid(int w, int h) {
  if (w < 1 || h < 1) fail(ErrorCode::BadParameters, "planar grid needs w, h >= 1");
  const int n = w * h;
  auto id = [&](int i, int j) { return j * w + i; };
  std::vector<int> hor(n, kNone), ver(n, kNone);
  int ne = 0;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      if (i + 1 < w) hor[id(i, j)] = ne++;
      if (j + 1 < h) ver[id(i, j)] = ne++;
    }
  std::vector<std::vector<DartId>> rot(n);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      auto& r = rot[id(i, j)];
      if (i + 1 < w) r.push_back(2 * hor[id(i, j)] + 1);
      if (j + 1 < h) r.push_back(2 * ver[id(i, j)] + 1);
      if (i > 0) r.push_back(2 * hor[id(i - 1, j)]);
      if (j > 0) r.push_back(2 * ver[id(i, j - 1)]);
    }
  return EmbeddedGraph::build(n, ne, rot);
}

EmbeddedGraph bouquet(int genus) {
  if (genus < 0) fail(ErrorCode::BadParameters, "negative genus");
  std::vector<std::vector<DartId>> rot(1);
  for (int k = 0; k < genus; ++k) {
    DartId a = 4 * k, b = 4 * k + 2;
    rot[0].insert(rot[0].end(), {a, b, rev(a), rev(b)});
  }
  return EmbeddedGraph::build(1, 2 * genus, rot);
}

EmbeddedGraph random_rotation(int num_vertices, const std::vector<std::pair<VertexId, VertexId>>& edges,
                              uint64_t seed) {
  if (num_vertices <= 0) fail(ErrorCode::BadParameters, "no vertices");
  std::vector<std::vector<DartId>> rot(num_vertices);
  for (size_t e = 0; e < edges.size(); ++e) {
    auto [a, b] = edges[e];
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices) fail(ErrorCode::BadParameters, "edge endpoint");
    rot[b].push_back(static_cast<DartId>(2 * e));
    rot[a].push_back(static_cast<DartId>(2 * e + 1));
  }
  std::mt19937_64 rng(seed);
  for (auto& r : rot) std::shuffle(r.begin(), r.end(), rng);
  return EmbeddedGraph::build(num_vertices, static_cast<int>(edges.size()), rot);
}

namespace {

struct Corner {
  VertexId v;
  int after;  // insert after this rotation index; -1 for an empty rotation
};

// Adds edge x -> y; its canonical dart enters y at corner cy, its reversal enters x at cx.
void insert_edge(std::vector<std::vector<DartId>>& rot, int& ne, Corner cx, Corner cy) {
  const DartId d = 2 * ne, r = d + 1;
  ++ne;
  int py = cy.after + 1, px = cx.after + 1;
  if (cx.v == cy.v && px > py) ++px;
  auto& ry = rot[cy.v];
  ry.insert(ry.begin() + py, d);
  auto& rx = rot[cx.v];
  rx.insert(rx.begin() + px, r);
}

}  // namespace

EmbeddedGraph random_surface(int num_vertices, int genus, int extra_edges, uint64_t seed, double loop_probability) {
  if (num_vertices <= 0 || genus < 0 || extra_edges < 0) fail(ErrorCode::BadParameters, "random surface parameters");
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  std::vector<std::vector<DartId>> rot(num_vertices);
  int ne = 0;
  auto random_corner = [&](VertexId v) {
    int len = static_cast<int>(rot[v].size());
    return Corner{v, len == 0 ? -1 : pick(len)};
  };
  for (VertexId v = 1; v < num_vertices; ++v) {
    VertexId u = pick(v);
    if (rng() & 1)
      insert_edge(rot, ne, random_corner(u), random_corner(v));
    else
      insert_edge(rot, ne, random_corner(v), random_corner(u));
  }
  if (num_vertices == 1 && (genus > 0 || extra_edges > 0)) {
    // Seed a single vertex with one loop so corners exist.
    insert_edge(rot, ne, Corner{0, -1}, Corner{0, -1});
    if (extra_edges > 0) --extra_edges;
  }

  std::vector<char> ops;  // 1 = join two faces, 0 = split a face
  ops.insert(ops.end(), genus, 1);
  ops.insert(ops.end(), extra_edges, 0);
  std::shuffle(ops.begin(), ops.end(), rng);
  std::vector<Corner> corners;
  std::vector<FaceId> corner_face;
  for (size_t k = 0; k < ops.size(); ++k) {
    EmbeddedGraph cur = EmbeddedGraph::build(num_vertices, ne, rot);
    corners.clear();
    corner_face.clear();
    for (VertexId v = 0; v < num_vertices; ++v)
      for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) {
        corners.push_back({v, i});
        corner_face.push_back(cur.face_of(rot[v][i]));
      }
    bool join = ops[k] && cur.num_faces() > 1;
    if (ops[k] && !join) ops.push_back(1);  // retry the join after this split
    int a = pick(static_cast<int>(corners.size()));
    std::vector<int> cand;
    for (int i = 0; i < static_cast<int>(corners.size()); ++i) {
      bool same_face = corner_face[i] == corner_face[a];
      if (join != same_face) {
        bool loop = corners[i].v == corners[a].v;
        if (loop && !join && std::uniform_real_distribution<double>(0, 1)(rng) >= loop_probability) continue;
        cand.push_back(i);
      }
    }
    if (cand.empty()) cand.push_back(a);  // only one corner in the face: a loop is the sole option
    int b = cand[pick(static_cast<int>(cand.size()))];
    insert_edge(rot, ne, corners[a], corners[b]);
  }
  EmbeddedGraph out = EmbeddedGraph::build(num_vertices, ne, rot);
  if (out.genus() != genus) fail(ErrorCode::InternalInvariantViolation, "random surface genus mismatch");
  return out;
}

std::vector<int64_t> unit_costs(const EmbeddedGraph& g) { return std::vector<int64_t>(g.num_darts(), 1); }

std::vector<int64_t> uniform_costs(const EmbeddedGraph& g, int64_t lo, int64_t hi, uint64_t seed) {
  if (lo > hi) fail(ErrorCode::BadParameters, "empty cost range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> dist(lo, hi);
  std::vector<int64_t> c(g.num_darts());
  for (auto& x : c) x = dist(rng);
  return c;
}

bool has_zero_cost_cycle(const EmbeddedGraph& g, std::span<const int64_t> c) {
  std::vector<int> indeg(g.num_vertices(), 0);
  for (DartId d = 0; d < g.num_darts(); ++d)
    if (c[d] == 0) ++indeg[g.head(d)];
  std::vector<VertexId> order;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (size_t i = 0; i < order.size(); ++i)
    for (DartId in : g.rotation(order[i])) {
      DartId d = rev(in);
      if (c[d] == 0 && --indeg[g.head(d)] == 0) order.push_back(g.head(d));
    }
  return static_cast<int>(order.size()) != g.num_vertices();
}

}  // namespace surf
