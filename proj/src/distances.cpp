#include "surf/distances.hpp"

#include "surf/errors.hpp"
#include "surf/mssp_linear.hpp"
#include "surf/mssp_ref.hpp"
#include "surf/sssp.hpp"

namespace surf {

void validate_correspondence(std::span<const std::pair<int, int>> corr, int num_sources, int walk_length) {
  for (size_t k = 0; k < corr.size(); ++k) {
    auto [i, j] = corr[k];
    if (i < 1 || i > num_sources || j < 1 || j > walk_length)
      fail(ErrorCode::BadParameters, "pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    if (k > 0 && (i < corr[k - 1].first || j < corr[k - 1].second))
      fail(ErrorCode::NonMonotone, "pair " + std::to_string(k + 1));
  }
}

DistanceStream::DistanceStream(const EmbeddedGraph& g, std::span<const int64_t> c, std::span<const VertexId> walk,
                               std::span<const std::pair<int, int>> corr)
    : g_(g), c_(c.begin(), c.end()), walk_(walk.begin(), walk.end()), corr_(corr.begin(), corr.end()),
      marks_(g.num_edges(), 0) {
  if (walk.empty()) fail(ErrorCode::WalkDisconnected, "empty walk");
  for (VertexId v : walk)
    if (v < 0 || v >= g.num_vertices()) fail(ErrorCode::BadParameters, "walk vertex out of range");
  for (size_t j = 0; j + 1 < walk.size(); ++j) {
    DartId step = kNone;
    if (walk[j] != walk[j + 1]) {
      for (DartId d : g.rotation(walk[j + 1]))
        if (g.tail(d) == walk[j] && (step == kNone || d < step)) step = d;
      if (step == kNone)
        fail(ErrorCode::WalkDisconnected,
             "no dart between walk positions " + std::to_string(j + 1) + " and " + std::to_string(j + 2));
    }
    steps_.push_back(step);
  }
}

void DistanceStream::on_init(VertexId, std::span<const int64_t> dist0, std::span<const DartId> pred) {
  target_ = 0;
  next_ = 0;
  rows_.clear();
  std::fill(marks_.begin(), marks_.end(), 0);
  VertexId t = walk_.front();
  dist_ = dist0[t];
  for (DartId d : tree_path(g_, pred, t)) marks_[edge_of(d)] ^= 1;
  std::vector<int64_t> sl(g_.num_darts());
  for (DartId d = 0; d < g_.num_darts(); ++d) sl[d] = dist0[g_.tail(d)] + c_[d] - dist0[g_.head(d)];
  emit_for_source(1, sl);
}

void DistanceStream::on_special(int, DartId uv, int64_t dist0_uv) {
  // The walk now starts with v->u at cost lambda = -dist(u, v).
  dist_ -= dist0_uv;
  marks_[edge_of(uv)] ^= 1;
}

void DistanceStream::on_round_complete(int, std::span<const DartId> active, DartId parametric) {
  // The target is red iff the walk crosses the blue/red cut an odd number of times.
  int parity = parametric != kNone ? marks_[edge_of(parametric)] : 0;
  for (DartId d : active) parity ^= marks_[edge_of(d)];
  dist_ += parity;
}

void DistanceStream::on_iteration_end(int iter, std::span<const int64_t> slack0) { emit_for_source(iter + 1, slack0); }

void DistanceStream::emit_for_source(int i, std::span<const int64_t> slack0) {
  while (next_ < corr_.size() && corr_[next_].first == i) {
    int j = corr_[next_].second - 1;
    for (; target_ < j; ++target_) {
      DartId d = steps_[target_];
      if (d == kNone) continue;
      dist_ += c_[d] - slack0[d];
      marks_[edge_of(d)] ^= 1;
    }
    rows_.push_back({i, j + 1, dist_});
    ++next_;
  }
}

std::vector<DistanceRow> mssp_distances(const EmbeddedGraph& g, std::span<const int64_t> c, FaceId r,
                                        std::span<const VertexId> walk, std::span<const std::pair<int, int>> corr,
                                        Engine engine) {
  MsspSetup s = prepare_mssp(g, c, r, Variant::Modified);
  validate_correspondence(corr, static_cast<int>(s.boundary.size()), static_cast<int>(walk.size()));
  DistanceStream stream(g, c, walk, corr);
  if (engine == Engine::Reference)
    mssp_reference(s, &stream);
  else
    mssp_linear(s, &stream);
  if (stream.rows().size() != corr.size())
    fail(ErrorCode::InternalInvariantViolation, "correspondence not exhausted");
  return stream.rows();
}

}  // namespace surf
