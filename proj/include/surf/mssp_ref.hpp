#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "surf/mssp.hpp"

namespace surf {

// Snapshot of the parametric state handed to observers. Spans are only valid
// for the duration of the callback.
struct RefState {
  int iter = 0;
  VertexId u = kNone;  // previous source
  VertexId v = kNone;  // current source
  DartId vu = kNone;   // the parametric dart
  int dim = 0;
  std::span<const DartId> pred;
  std::span<const int64_t> dist;  // num_vertices * dim, measured with c'(vu) = lambda
  std::span<const int64_t> lambda;
  std::span<const char> red;
  std::span<const DartId> active;
  std::span<const int64_t> key;  // K_d per active dart, active.size() * dim
};

class RefObserver {
 public:
  virtual ~RefObserver() = default;
  virtual void after_special(const RefState& /*s*/) {}
  virtual void before_pivot(const RefState& /*s*/, DartId /*chosen*/) {}
  virtual void after_iteration(const RefState& /*s*/) {}
};

std::vector<PivotEvent> mssp_reference(const MsspSetup& setup, MsspListener* listener = nullptr,
                                       RefObserver* observer = nullptr);
std::vector<PivotEvent> mssp_reference(const EmbeddedGraph& g, std::span<const int64_t> c, FaceId r,
                                       Variant variant);

// Darts with blue tail and red head.
std::vector<DartId> active_darts(const EmbeddedGraph& g, std::span<const char> red);

// Planar leafmost selector: among active darts on the q->r walk in the dual
// cotree (edges outside the current tree), the first one of minimum
// unperturbed key.
DartId leafmost_planar_pivot(const EmbeddedGraph& g, const CostTable& costs, const RefState& s, FaceId r);

// The q->r walk itself, as primal darts whose dual runs toward r.
std::vector<DartId> cotree_walk_to_root(const EmbeddedGraph& g, std::span<const DartId> pred, FaceId q, FaceId r);

}  // namespace surf
