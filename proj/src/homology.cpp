#include "surf/homology.hpp"

#include <algorithm>
#include <deque>

#include "surf/errors.hpp"

namespace surf {

TreeCotree tree_cotree(const EmbeddedGraph& g, VertexId root_vertex, FaceId root_face) {
  if (root_vertex < 0 || root_vertex >= g.num_vertices() || root_face < 0 || root_face >= g.num_faces())
    fail(ErrorCode::BadParameters, "root out of range");
  TreeCotree tc;
  tc.root_vertex = root_vertex;
  tc.root_face = root_face;
  const int ne = g.num_edges();
  tc.in_tree.assign(ne, 0);
  tc.in_cotree.assign(ne, 0);
  tc.tree_pred.assign(g.num_vertices(), kNone);
  tc.cotree_succ.assign(g.num_faces(), kNone);

  // BFS tree; outgoing darts of x are the reversals of its incoming darts.
  std::vector<char> seen(g.num_vertices(), 0);
  std::deque<VertexId> queue{root_vertex};
  seen[root_vertex] = 1;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    for (DartId in : g.rotation(x)) {
      DartId out = rev(in);
      VertexId y = g.head(out);
      if (seen[y]) continue;
      seen[y] = 1;
      tc.in_tree[edge_of(out)] = 1;
      tc.tree_pred[y] = out;
      queue.push_back(y);
    }
  }

  // Dual BFS over the non-tree edges; the darts of face p's orbit have dual head p.
  std::vector<char> fseen(g.num_faces(), 0);
  std::deque<FaceId> fq{root_face};
  fseen[root_face] = 1;
  while (!fq.empty()) {
    FaceId p = fq.front();
    fq.pop_front();
    for (DartId d : g.face_darts(p)) {
      if (tc.in_tree[edge_of(d)]) continue;
      FaceId o = g.left_face(d);
      if (fseen[o]) continue;
      fseen[o] = 1;
      tc.in_cotree[edge_of(d)] = 1;
      tc.cotree_succ[o] = d;
      fq.push_back(o);
    }
  }
  for (EdgeId e = 0; e < ne; ++e)
    if (!tc.in_tree[e] && !tc.in_cotree[e]) tc.leftover.push_back(e);
  if (static_cast<int>(tc.leftover.size()) != 2 * g.genus())
    fail(ErrorCode::InternalInvariantViolation, "leftover count differs from 2g");
  return tc;
}

HomologySignature homology_signatures(const EmbeddedGraph& g, const TreeCotree& tc) {
  const int dim = static_cast<int>(tc.leftover.size());
  HomologySignature sigs(g.num_edges(), dim);
  if (dim == 0) return sigs;

  std::vector<int> depth(g.num_faces(), -1);
  depth[tc.root_face] = 0;
  std::vector<FaceId> chain;
  for (FaceId f = 0; f < g.num_faces(); ++f) {
    FaceId p = f;
    chain.clear();
    while (depth[p] < 0) {
      chain.push_back(p);
      p = g.face_of(tc.cotree_succ[p]);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      depth[*it] = depth[g.face_of(tc.cotree_succ[*it])] + 1;
  }

  auto cross = [&](DartId dual_dart, int i) {
    sigs.edge_mut(edge_of(dual_dart))[i] += is_canonical(dual_dart) ? 1 : -1;
  };
  for (int i = 0; i < dim; ++i) {
    DartId d = canonical_dart(tc.leftover[i]);
    cross(d, i);
    // Close the cycle with the cotree path from face_of(d) back to left_face(d).
    FaceId a = g.face_of(d), b = g.left_face(d);
    std::vector<DartId> down;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        DartId up = tc.cotree_succ[a];
        cross(up, i);
        a = g.face_of(up);
      } else {
        DartId up = tc.cotree_succ[b];
        down.push_back(rev(up));
        b = g.face_of(up);
      }
    }
    for (auto it = down.rbegin(); it != down.rend(); ++it) cross(*it, i);
  }
  return sigs;
}

std::vector<int64_t> walk_signature(const HomologySignature& sigs, std::span<const DartId> walk) {
  std::vector<int64_t> out(sigs.dim(), 0);
  for (DartId d : walk)
    for (int i = 0; i < sigs.dim(); ++i) out[i] += sigs.dart(d, i);
  return out;
}

std::vector<int64_t> imbalance(const EmbeddedGraph& g, std::span<const DartId> darts) {
  std::vector<int64_t> out(g.num_vertices(), 0);
  for (DartId d : darts) {
    out[g.head(d)] += 1;
    out[g.tail(d)] -= 1;
  }
  return out;
}

std::vector<int64_t> imbalance_of_flow(const EmbeddedGraph& g, std::span<const int64_t> flow) {
  std::vector<int64_t> out(g.num_vertices(), 0);
  for (DartId d = 0; d < g.num_darts(); ++d) {
    out[g.head(d)] += flow[d];
    out[g.tail(d)] -= flow[d];
  }
  return out;
}

std::vector<int64_t> dual_imbalance(const EmbeddedGraph& g, std::span<const int64_t> z_per_dart) {
  std::vector<int64_t> out(g.num_faces(), 0);
  for (DartId d = 0; d < g.num_darts(); ++d) out[g.face_of(d)] += z_per_dart[d];
  return out;
}

bool is_boundary_class(const EmbeddedGraph& g, const HomologySignature& sigs,
                       std::span<const DartId> circulation) {
  for (int64_t x : imbalance(g, circulation))
    if (x != 0) fail(ErrorCode::NotACirculation);
  for (int64_t x : walk_signature(sigs, circulation))
    if (x != 0) return false;
  return true;
}

}  // namespace surf
