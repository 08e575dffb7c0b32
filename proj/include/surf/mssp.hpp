#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "surf/embedding.hpp"
#include "surf/homology.hpp"
#include "surf/perturb.hpp"

namespace surf {

enum class PivotKind { Special, Regular };

// One tree exchange while the source moves from u_iter to u_{iter+1}.
struct PivotEvent {
  int iter = 0;  // 1-based
  PivotKind kind = PivotKind::Regular;
  DartId in = kNone;
  DartId out = kNone;
  int64_t lambda_c0 = 0;

  friend bool operator==(const PivotEvent&, const PivotEvent&) = default;
};

std::string to_json_line(const PivotEvent& e);

// Everything both MSSP engines share for one instance: the tree-cotree
// decomposition rooted at the first boundary vertex and at face r, signatures,
// the drainage of that cotree (sink r), and the perturbed costs.
struct MsspSetup {
  const EmbeddedGraph* g = nullptr;
  FaceId r = 0;
  Variant variant = Variant::Modified;
  std::vector<int64_t> c;
  TreeCotree tc;
  HomologySignature sigs;
  Drainage drainage;
  CostTable costs;
  // Darts of face r in clockwise order; iteration i moves the source along boundary[i-1].
  std::vector<DartId> boundary;
};

MsspSetup prepare_mssp(const EmbeddedGraph& g, std::span<const int64_t> c, FaceId r, Variant variant);

// Engine callbacks used to stream distances; both engines fire them identically.
class MsspListener {
 public:
  virtual ~MsspListener() = default;
  // Initial tree at the first source, with unperturbed distances from it.
  virtual void on_init(VertexId /*source*/, std::span<const int64_t> /*dist0*/, std::span<const DartId> /*pred*/) {}
  // Special pivot of iteration iter moving the source along dart uv.
  virtual void on_special(int /*iter*/, DartId /*uv*/, int64_t /*dist0_uv*/) {}
  virtual void on_pivot(const PivotEvent& /*e*/) {}
  // A fully completed round; `active` holds the darts with blue tail and red
  // head outside the tree, `parametric` is v->u while it is still in the tree.
  virtual void on_round_complete(int /*iter*/, std::span<const DartId> /*active*/, DartId /*parametric*/) {}
  // End of iteration iter; slack0 holds unperturbed slacks for the new source.
  virtual void on_iteration_end(int /*iter*/, std::span<const int64_t> /*slack0*/) {}
};

}  // namespace surf
