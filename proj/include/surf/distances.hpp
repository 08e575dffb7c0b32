#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "surf/mssp.hpp"

namespace surf {

enum class Engine { Reference, Linear };

struct DistanceRow {
  int i = 0;  // 1-based source index around r
  int j = 0;  // 1-based index into the target walk
  int64_t dist = 0;
  friend bool operator==(const DistanceRow&, const DistanceRow&) = default;
};

// Checks that pairs are in range and non-decreasing in both coordinates.
void validate_correspondence(std::span<const std::pair<int, int>> corr, int num_sources, int walk_length);

// Consumer of engine hooks that streams distances for a monotone
// correspondence between the sources around r and a walk of targets.
class DistanceStream : public MsspListener {
 public:
  DistanceStream(const EmbeddedGraph& g, std::span<const int64_t> c, std::span<const VertexId> walk,
                 std::span<const std::pair<int, int>> corr);

  void on_init(VertexId source, std::span<const int64_t> dist0, std::span<const DartId> pred) override;
  void on_special(int iter, DartId uv, int64_t dist0_uv) override;
  void on_round_complete(int iter, std::span<const DartId> active, DartId parametric) override;
  void on_iteration_end(int iter, std::span<const int64_t> slack0) override;

  [[nodiscard]] const std::vector<DistanceRow>& rows() const { return rows_; }
  // Edges with odd multiplicity on the maintained source-to-target walk.
  [[nodiscard]] const std::vector<char>& marks() const { return marks_; }
  [[nodiscard]] int64_t current() const { return dist_; }

 private:
  void emit_for_source(int i, std::span<const int64_t> slack0);

  const EmbeddedGraph& g_;
  std::vector<int64_t> c_;
  std::vector<VertexId> walk_;
  std::vector<DartId> steps_;  // steps_[j] leads from walk_[j] to walk_[j+1], kNone when they coincide
  std::vector<std::pair<int, int>> corr_;
  size_t next_ = 0;
  int target_ = 0;  // 0-based index into the walk
  int64_t dist_ = 0;
  std::vector<char> marks_;
  std::vector<DistanceRow> rows_;
};

std::vector<DistanceRow> mssp_distances(const EmbeddedGraph& g, std::span<const int64_t> c, FaceId r,
                                        std::span<const VertexId> walk, std::span<const std::pair<int, int>> corr,
                                        Engine engine);

}  // namespace surf
