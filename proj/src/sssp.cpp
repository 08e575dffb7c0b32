#include "surf/sssp.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "surf/errors.hpp"

namespace surf {

namespace {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

bool row_less(std::span<const int64_t> a, std::span<const int64_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

HolyTree holiest_sssp(const EmbeddedGraph& g, const CostTable& costs, VertexId source) {
  if (costs.variant() != Variant::Standard) fail(ErrorCode::VariantMismatch, "standard variant required");
  if (costs.num_darts() != g.num_darts() || costs.genus() != g.genus()) fail(ErrorCode::DimensionMismatch);
  for (DartId d = 0; d < g.num_darts(); ++d)
    if (costs.c0(d) < 0) fail(ErrorCode::NegativeCostDart, "dart " + std::to_string(d));
  const int n = g.num_vertices(), dim = costs.dim();
  HolyTree t;
  t.root = source;
  t.variant = Variant::Standard;
  t.dim = dim;
  t.pred.assign(n, kNone);
  t.dist.assign(static_cast<size_t>(n) * dim, 0);
  std::vector<char> reached(n, 0), done(n, 0);
  auto row = [&](VertexId v) { return std::span<int64_t>(t.dist.data() + static_cast<size_t>(v) * dim, dim); };

  using Item = std::pair<std::vector<int64_t>, VertexId>;
  auto cmp = [](const Item& a, const Item& b) { return b.first < a.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  reached[source] = 1;
  pq.push({std::vector<int64_t>(dim, 0), source});
  std::vector<int64_t> cand(dim);
  while (!pq.empty()) {
    auto [key, x] = pq.top();
    pq.pop();
    if (done[x]) continue;
    done[x] = 1;
    for (DartId in : g.rotation(x)) {
      DartId d = rev(in);
      VertexId y = g.head(d);
      if (done[y]) continue;
      auto cr = costs.row(d);
      for (int i = 0; i < dim; ++i) cand[i] = key[i] + cr[i];
      if (!reached[y] || row_less(cand, row(y))) {
        reached[y] = 1;
        std::copy(cand.begin(), cand.end(), row(y).begin());
        t.pred[y] = d;
        pq.push({cand, y});
      }
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (!done[v]) fail(ErrorCode::UnreachedVertex, "vertex " + std::to_string(v));
  return t;
}

HolyTree holiest_tree_small_int(const EmbeddedGraph& g, const CostTable& costs, VertexId source) {
  if (costs.variant() != Variant::Modified) fail(ErrorCode::VariantMismatch, "modified variant required");
  if (costs.num_darts() != g.num_darts() || costs.genus() != g.genus()) fail(ErrorCode::DimensionMismatch);
  const int n = g.num_vertices(), dim = costs.dim();
  int64_t max_c = 0;
  for (DartId d = 0; d < g.num_darts(); ++d) {
    if (costs.c0(d) < 0) fail(ErrorCode::NegativeCostDart, "dart " + std::to_string(d));
    max_c = std::max(max_c, costs.c0(d));
  }

  // Phase 1: Dial's buckets; distances are bounded by the total cost.
  std::vector<int64_t> d0(n, kInf);
  d0[source] = 0;
  std::vector<std::vector<VertexId>> buckets(static_cast<size_t>(max_c) + 1);
  buckets[0].push_back(source);
  int64_t cur = 0;
  size_t pending = 1;
  std::vector<char> done(n, 0);
  while (pending > 0) {
    auto& b = buckets[cur % buckets.size()];
    if (b.empty()) {
      ++cur;
      continue;
    }
    VertexId x = b.back();
    b.pop_back();
    --pending;
    if (done[x] || d0[x] != cur) continue;
    done[x] = 1;
    for (DartId in : g.rotation(x)) {
      DartId d = rev(in);
      VertexId y = g.head(d);
      int64_t nd = cur + costs.c0(d);
      if (nd < d0[y]) {
        d0[y] = nd;
        buckets[nd % buckets.size()].push_back(y);
        ++pending;
      }
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (d0[v] >= kInf) fail(ErrorCode::UnreachedVertex, "vertex " + std::to_string(v));

  // Phase 2: topological order of the zero-slack darts H.
  std::vector<int> indeg(n, 0);
  for (DartId d = 0; d < g.num_darts(); ++d)
    if (d0[g.tail(d)] + costs.c0(d) == d0[g.head(d)]) ++indeg[g.head(d)];
  std::vector<VertexId> order;
  order.reserve(n);
  for (VertexId v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (size_t i = 0; i < order.size(); ++i) {
    VertexId x = order[i];
    for (DartId in : g.rotation(x)) {
      DartId d = rev(in);
      VertexId y = g.head(d);
      if (d0[x] + costs.c0(d) == d0[y] && --indeg[y] == 0) order.push_back(y);
    }
  }
  if (static_cast<int>(order.size()) != n) fail(ErrorCode::ZeroCostCycleDetected);
  if (order.front() != source) fail(ErrorCode::ZeroCostCycleDetected, "source is not the only H-source");

  HolyTree t;
  t.root = source;
  t.variant = Variant::Modified;
  t.dim = dim;
  t.pred.assign(n, kNone);
  t.dist.assign(static_cast<size_t>(n) * dim, 0);
  auto row = [&](VertexId v) { return std::span<int64_t>(t.dist.data() + static_cast<size_t>(v) * dim, dim); };
  std::vector<char> set(n, 0);
  set[source] = 1;
  std::vector<int64_t> cand(dim);
  for (VertexId x : order) {
    if (!set[x]) fail(ErrorCode::InternalInvariantViolation, "DAG order visits an unlabeled vertex");
    auto rx = row(x);
    for (DartId in : g.rotation(x)) {
      DartId d = rev(in);
      VertexId y = g.head(d);
      if (d0[x] + costs.c0(d) != d0[y]) continue;
      auto cr = costs.row(d);
      for (int i = 0; i < dim; ++i) cand[i] = rx[i] + cr[i];
      if (!set[y] || row_less(cand, row(y))) {
        set[y] = 1;
        std::copy(cand.begin(), cand.end(), row(y).begin());
        t.pred[y] = d;
      }
    }
  }
  return t;
}

PerturbedCost slack(const EmbeddedGraph& g, const CostTable& costs, const HolyTree& tree, DartId d) {
  if (costs.variant() != tree.variant) fail(ErrorCode::VariantMismatch);
  VertexId x = g.tail(d), y = g.head(d);
  if (x != tree.root && tree.pred[x] == kNone) fail(ErrorCode::UnreachedVertex);
  if (y != tree.root && tree.pred[y] == kNone) fail(ErrorCode::UnreachedVertex);
  PerturbedCost s{tree.variant, std::vector<int64_t>(tree.dim)};
  auto rx = tree.dist_row(x), ry = tree.dist_row(y), cr = costs.row(d);
  for (int i = 0; i < tree.dim; ++i) s.v[i] = rx[i] + cr[i] - ry[i];
  return s;
}

std::vector<DartId> tree_path(const EmbeddedGraph& g, std::span<const DartId> pred, VertexId v) {
  std::vector<DartId> path;
  while (pred[v] != kNone) {
    path.push_back(pred[v]);
    v = g.tail(pred[v]);
    if (path.size() > pred.size()) fail(ErrorCode::InternalInvariantViolation, "pred map has a cycle");
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int64_t> dijkstra_c0(const EmbeddedGraph& g, std::span<const int64_t> c, VertexId source) {
  std::vector<int64_t> dist(g.num_vertices(), kInf);
  using Item = std::pair<int64_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0;
  pq.push({0, source});
  while (!pq.empty()) {
    auto [k, x] = pq.top();
    pq.pop();
    if (k != dist[x]) continue;
    for (DartId in : g.rotation(x)) {
      DartId d = rev(in);
      VertexId y = g.head(d);
      if (k + c[d] < dist[y]) {
        dist[y] = k + c[d];
        pq.push({dist[y], y});
      }
    }
  }
  return dist;
}

}  // namespace surf
