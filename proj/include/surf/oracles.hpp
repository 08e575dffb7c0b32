#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "surf/embedding.hpp"
#include "surf/perturb.hpp"
#include "surf/sssp.hpp"

namespace surf {

// Bellman–Ford over exact cost vectors.
HolyTree brute_sssp(const EmbeddedGraph& g, const CostTable& costs, VertexId source);

// Every simple s,t-path of minimum unperturbed cost (exhaustive, n <= max_vertices).
std::vector<std::vector<DartId>> enumerate_min_paths(const EmbeddedGraph& g, std::span<const int64_t> c,
                                                     VertexId s, VertexId t, int max_vertices = 12);

// Every integral flow with 0 <= f(d) <= mu(d) and net inflow b(v) at each
// vertex that attains the minimum unperturbed cost (exhaustive, |E| <= max_edges).
std::vector<std::vector<int64_t>> enumerate_min_flows(const EmbeddedGraph& g, const CostTable& costs,
                                                      std::span<const int64_t> mu, std::span<const int64_t> b,
                                                      int max_edges = 8);

PerturbedCost flow_cost(const CostTable& costs, std::span<const int64_t> flow);

// Generators.
EmbeddedGraph torus_grid(int w, int h);
EmbeddedGraph planar_grid(int w, int h);
EmbeddedGraph bouquet(int genus);
// Shuffles the rotation at every vertex of a fixed skeleton; edge i runs from
// edges[i].first to edges[i].second.
EmbeddedGraph random_rotation(int num_vertices, const std::vector<std::pair<VertexId, VertexId>>& edges,
                              uint64_t seed);
// Random tree on n vertices plus edges inserted at random corners: `genus`
// insertions join two faces and `extra_edges` insertions split a face.
EmbeddedGraph random_surface(int num_vertices, int genus, int extra_edges, uint64_t seed,
                             double loop_probability = 0.0);

std::vector<int64_t> unit_costs(const EmbeddedGraph& g);
std::vector<int64_t> uniform_costs(const EmbeddedGraph& g, int64_t lo, int64_t hi, uint64_t seed);

// True iff some directed cycle has zero total unperturbed cost.
bool has_zero_cost_cycle(const EmbeddedGraph& g, std::span<const int64_t> c);

}  // namespace surf
