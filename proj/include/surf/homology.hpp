#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "surf/embedding.hpp"

namespace surf {

// Partition of the edges into a primal spanning tree T, a dual spanning tree C
// of the remaining edges, and 2g leftover edges L ordered by edge id.
struct TreeCotree {
  VertexId root_vertex = 0;
  FaceId root_face = 0;
  std::vector<char> in_tree;     // per edge
  std::vector<char> in_cotree;   // per edge
  std::vector<EdgeId> leftover;  // sorted
  std::vector<DartId> tree_pred; // per vertex: tree dart into it, kNone at root
  std::vector<DartId> cotree_succ;  // per face: dual dart toward root_face, kNone at root
};

TreeCotree tree_cotree(const EmbeddedGraph& g, VertexId root_vertex, FaceId root_face);

// Per-edge homology signatures with respect to the dual fundamental cycles of
// the leftover edges. Component i counts crossings of the cycle of leftover i,
// oriented along that edge's canonical dart.
class HomologySignature {
 public:
  HomologySignature() = default;
  HomologySignature(int num_edges, int dim)
      : num_edges_(num_edges), dim_(dim), data_(static_cast<size_t>(num_edges) * dim, 0) {}

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] int num_edges() const noexcept { return num_edges_; }
  [[nodiscard]] std::span<const int32_t> edge(EdgeId e) const {
    return {data_.data() + static_cast<size_t>(e) * dim_, static_cast<size_t>(dim_)};
  }
  std::span<int32_t> edge_mut(EdgeId e) {
    return {data_.data() + static_cast<size_t>(e) * dim_, static_cast<size_t>(dim_)};
  }
  // Signature component i of dart d.
  [[nodiscard]] int32_t dart(DartId d, int i) const {
    int32_t s = data_[static_cast<size_t>(edge_of(d)) * dim_ + i];
    return is_canonical(d) ? s : -s;
  }

 private:
  int num_edges_ = 0;
  int dim_ = 0;
  std::vector<int32_t> data_;
};

HomologySignature homology_signatures(const EmbeddedGraph& g, const TreeCotree& tc);

std::vector<int64_t> walk_signature(const HomologySignature& sigs, std::span<const DartId> walk);

// Net inflow minus outflow per vertex for a dart multiset.
std::vector<int64_t> imbalance(const EmbeddedGraph& g, std::span<const DartId> darts);
// Same for a per-dart flow value table.
std::vector<int64_t> imbalance_of_flow(const EmbeddedGraph& g, std::span<const int64_t> flow);
// Dual imbalance: for every face q, the sum of z over darts whose dual head is q.
std::vector<int64_t> dual_imbalance(const EmbeddedGraph& g, std::span<const int64_t> z_per_dart);

// True iff the circulation is a boundary (its signature vanishes).
bool is_boundary_class(const EmbeddedGraph& g, const HomologySignature& sigs,
                       std::span<const DartId> circulation);

}  // namespace surf
