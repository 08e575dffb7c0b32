#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "surf/embedding.hpp"
#include "surf/perturb.hpp"

namespace surf {

// Rooted shortest-path tree under perturbed costs. dist is stored row-major.
struct HolyTree {
  VertexId root = 0;
  Variant variant = Variant::Standard;
  int dim = 0;
  std::vector<DartId> pred;   // kNone at the root
  std::vector<int64_t> dist;  // num_vertices * dim

  [[nodiscard]] std::span<const int64_t> dist_row(VertexId v) const {
    return {dist.data() + static_cast<size_t>(v) * dim, static_cast<size_t>(dim)};
  }
  [[nodiscard]] PerturbedCost dist_of(VertexId v) const {
    auto r = dist_row(v);
    return {variant, std::vector<int64_t>(r.begin(), r.end())};
  }
  [[nodiscard]] int64_t dist0(VertexId v) const { return dist[static_cast<size_t>(v) * dim]; }
};

// Label-setting search with lexicographic keys (standard variant, c0 >= 0).
HolyTree holiest_sssp(const EmbeddedGraph& g, const CostTable& costs, VertexId source);

// Bucket search on unperturbed costs followed by a DAG relaxation over the
// darts of zero unperturbed slack (modified variant, small integer costs).
HolyTree holiest_tree_small_int(const EmbeddedGraph& g, const CostTable& costs, VertexId source);

PerturbedCost slack(const EmbeddedGraph& g, const CostTable& costs, const HolyTree& tree, DartId d);

// Darts of the tree path from the root to v.
std::vector<DartId> tree_path(const EmbeddedGraph& g, std::span<const DartId> pred, VertexId v);

// Unperturbed Dijkstra distances (plain integer costs).
std::vector<int64_t> dijkstra_c0(const EmbeddedGraph& g, std::span<const int64_t> c, VertexId source);

}  // namespace surf
