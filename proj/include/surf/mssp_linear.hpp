#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "surf/mssp.hpp"

namespace surf {

struct LinearOptions {
  // Recheck the engine invariants after every step. Each audit is O(n).
  bool audit = false;
};

struct LinearStats {
  int64_t rounds = 0;
  int64_t dart_checks = 0;
  int64_t registry_ops = 0;
  int special_case_a = 0;
  int special_case_b = 0;
  int max_registry = 0;
};

// Shape of the cut graph at the first iteration boundary.
struct CutGraphSummary {
  int cut_paths = 0;  // not counting the q-path
  bool q_path = false;
  int cut_vertices = 0;
  int hair_faces = 0;
};
CutGraphSummary initial_cut_graph(const MsspSetup& setup);

// Small-integer MSSP driven by the cut graph. Requires setup.variant == Modified.
std::vector<PivotEvent> mssp_linear(const MsspSetup& setup, MsspListener* listener = nullptr,
                                    const LinearOptions& opts = {}, LinearStats* stats = nullptr);
std::vector<PivotEvent> mssp_linear(const EmbeddedGraph& g, std::span<const int64_t> c, FaceId r);

}  // namespace surf
