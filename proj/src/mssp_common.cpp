#include <sstream>

#include "surf/errors.hpp"
#include "surf/mssp.hpp"

namespace surf {

std::string to_json_line(const PivotEvent& e) {
  std::ostringstream os;
  os << "{\"iter\":" << e.iter << ",\"kind\":\"" << (e.kind == PivotKind::Special ? "special" : "regular")
     << "\",\"in\":" << e.in << ",\"out\":" << e.out << ",\"lambda_c0\":" << e.lambda_c0 << '}';
  return os.str();
}

MsspSetup prepare_mssp(const EmbeddedGraph& g, std::span<const int64_t> c, FaceId r, Variant variant) {
  if (r < 0 || r >= g.num_faces()) fail(ErrorCode::BadParameters, "sink face out of range");
  if (static_cast<int>(c.size()) != g.num_darts()) fail(ErrorCode::DimensionMismatch, "cost table size");
  for (int64_t x : c)
    if (x < 0) fail(ErrorCode::NegativeCostDart);
  MsspSetup s;
  s.g = &g;
  s.r = r;
  s.variant = variant;
  s.c.assign(c.begin(), c.end());
  auto bd = g.face_darts(r);
  s.boundary.assign(bd.begin(), bd.end());
  VertexId root = s.boundary.empty() ? 0 : g.tail(s.boundary.front());
  s.tc = tree_cotree(g, root, r);
  s.sigs = homology_signatures(g, s.tc);
  s.drainage = cotree_drainage(g, s.tc.cotree_succ);
  s.costs = perturb_costs(g, s.c, s.sigs, s.drainage, variant);
  return s;
}

}  // namespace surf
