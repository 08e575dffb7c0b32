#include "surf/perturb.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "surf/errors.hpp"

namespace surf {

const char* variant_name(Variant v) { return v == Variant::Standard ? "standard" : "modified"; }

Drainage cotree_drainage(const EmbeddedGraph& g, std::span<const DartId> cotree_succ) {
  const int nf = g.num_faces();
  if (static_cast<int>(cotree_succ.size()) != nf) fail(ErrorCode::NotASpanningCotree, "wrong size");
  FaceId sink = kNone;
  for (FaceId p = 0; p < nf; ++p) {
    DartId d = cotree_succ[p];
    if (d == kNone) {
      if (sink != kNone) fail(ErrorCode::NotASpanningCotree, "several roots");
      sink = p;
      continue;
    }
    if (d < 0 || d >= g.num_darts() || g.left_face(d) != p)
      fail(ErrorCode::NotASpanningCotree, "successor dart does not leave its face");
  }
  if (sink == kNone) fail(ErrorCode::NotASpanningCotree, "no root");

  // Order faces root-first by depth; reject cycles.
  std::vector<int> depth(nf, -1);
  depth[sink] = 0;
  std::vector<FaceId> chain;
  for (FaceId f = 0; f < nf; ++f) {
    FaceId p = f;
    chain.clear();
    while (depth[p] < 0) {
      if (depth[p] == -2) fail(ErrorCode::NotASpanningCotree, "cycle");
      depth[p] = -2;
      chain.push_back(p);
      p = g.face_of(cotree_succ[p]);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      depth[*it] = depth[g.face_of(cotree_succ[*it])] + 1;
  }
  // Deepest faces first (counting sort on depth).
  std::vector<int> start(nf + 1, 0);
  for (FaceId p = 0; p < nf; ++p) ++start[nf - 1 - depth[p]];
  for (int i = 0; i < nf; ++i) start[i + 1] += start[i];
  std::vector<FaceId> order(nf);
  for (FaceId p = nf - 1; p >= 0; --p) order[--start[nf - 1 - depth[p]]] = p;

  Drainage dr;
  dr.sink = sink;
  dr.z_edge.assign(g.num_edges(), 0);
  std::vector<int64_t> size(nf, 1);
  for (FaceId p : order) {
    if (p == sink) continue;
    DartId d = cotree_succ[p];
    size[g.face_of(d)] += size[p];
    dr.z_edge[edge_of(d)] = is_canonical(d) ? size[p] : -size[p];
  }
  return dr;
}

int64_t cut_sum(const EmbeddedGraph& g, const Drainage& dr, std::span<const FaceId> face_subset) {
  std::vector<char> in(g.num_faces(), 0);
  for (FaceId f : face_subset) in[f] = 1;
  int64_t total = 0;
  for (DartId d = 0; d < g.num_darts(); ++d)
    if (in[g.face_of(d)] && !in[g.left_face(d)]) total += dr.z(d);
  return total;
}

static void check_same(const PerturbedCost& a, const PerturbedCost& b) {
  if (a.variant != b.variant) fail(ErrorCode::VariantMismatch);
  if (a.v.size() != b.v.size()) fail(ErrorCode::DimensionMismatch);
}

std::strong_ordering compare(const PerturbedCost& a, const PerturbedCost& b) {
  check_same(a, b);
  for (size_t i = 0; i < a.v.size(); ++i)
    if (a.v[i] != b.v[i]) return a.v[i] < b.v[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

PerturbedCost add(const PerturbedCost& a, const PerturbedCost& b) {
  check_same(a, b);
  PerturbedCost out = a;
  for (size_t i = 0; i < a.v.size(); ++i) out.v[i] += b.v[i];
  return out;
}

PerturbedCost sub(const PerturbedCost& a, const PerturbedCost& b) {
  check_same(a, b);
  PerturbedCost out = a;
  for (size_t i = 0; i < a.v.size(); ++i) out.v[i] -= b.v[i];
  return out;
}

PerturbedCost negate(const PerturbedCost& a) { return scale(a, -1); }

PerturbedCost scale(const PerturbedCost& a, int64_t k) {
  PerturbedCost out = a;
  for (auto& x : out.v) x *= k;
  return out;
}

PerturbedCost zero_cost(Variant variant, int dim) { return {variant, std::vector<int64_t>(dim, 0)}; }

CostTable perturb_costs(const EmbeddedGraph& g, std::span<const int64_t> c, const HomologySignature& sigs,
                        const Drainage& dr, Variant variant) {
  if (static_cast<int>(c.size()) != g.num_darts()) fail(ErrorCode::DimensionMismatch, "cost table size");
  if (sigs.dim() != 2 * g.genus()) fail(ErrorCode::DimensionMismatch, "signature length");
  CostTable t(variant, g.genus(), g.num_darts());
  const int off = hom_offset(variant);
  for (DartId d = 0; d < g.num_darts(); ++d) {
    auto row = t.row_mut(d);
    row[0] = c[d];
    if (variant == Variant::Standard) row[1] = 1;
    for (int i = 0; i < sigs.dim(); ++i) row[off + i] = sigs.dart(d, i);
    row.back() = dr.z(d);
  }
  return t;
}

PerturbedCost sum_over(const CostTable& costs, std::span<const DartId> walk) {
  PerturbedCost out = zero_cost(costs.variant(), costs.dim());
  for (DartId d : walk) {
    auto r = costs.row(d);
    for (int i = 0; i < costs.dim(); ++i) out.v[i] += r[i];
  }
  return out;
}

std::vector<int64_t> read_cst(std::istream& in, int num_darts, const int64_t* default_cost) {
  std::vector<int64_t> c(num_darts, 0);
  std::vector<char> seen(num_darts, 0);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    long long d = 0, cost = 0;
    if (!(ls >> d)) continue;  // blank line
    if (!(ls >> cost)) fail(ErrorCode::BadParameters, "malformed cost line '" + line + "'");
    std::string extra;
    if (ls >> extra) fail(ErrorCode::BadParameters, "malformed cost line '" + line + "'");
    if (d < 0 || d >= num_darts) fail(ErrorCode::BadParameters, "dart id out of range: " + std::to_string(d));
    if (seen[d]) fail(ErrorCode::DartMultiplyListed, "dart " + std::to_string(d));
    if (cost < 0) fail(ErrorCode::NegativeCostDart, "dart " + std::to_string(d));
    seen[d] = 1;
    c[d] = cost;
  }
  for (DartId d = 0; d < num_darts; ++d) {
    if (seen[d]) continue;
    if (!default_cost) fail(ErrorCode::DartMissing, "no cost for dart " + std::to_string(d));
    c[d] = *default_cost;
  }
  return c;
}

std::vector<int64_t> read_cst_file(const std::string& path, int num_darts, const int64_t* default_cost) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadParameters, "cannot open " + path);
  return read_cst(in, num_darts, default_cost);
}

void write_cst(std::ostream& out, std::span<const int64_t> c) {
  for (size_t d = 0; d < c.size(); ++d) out << d << ' ' << c[d] << '\n';
}

}  // namespace surf
