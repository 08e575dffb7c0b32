#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace surf {

using DartId = int32_t;
using EdgeId = int32_t;
using VertexId = int32_t;
using FaceId = int32_t;

inline constexpr int32_t kNone = -1;

[[nodiscard]] constexpr DartId rev(DartId d) noexcept { return d ^ 1; }
[[nodiscard]] constexpr EdgeId edge_of(DartId d) noexcept { return d >> 1; }
[[nodiscard]] constexpr DartId canonical_dart(EdgeId e) noexcept { return 2 * e; }
[[nodiscard]] constexpr bool is_canonical(DartId d) noexcept { return (d & 1) == 0; }

// Cellularly embedded directed multigraph given by a rotation system.
// Dart 2e and 2e+1 are the two orientations of edge e. pi(d) is the next
// incoming dart counterclockwise around head(d). Faces are orbits of rev∘pi;
// face_of(d) is the face on the right of d, and each orbit lists its darts in
// clockwise order around the face.
class EmbeddedGraph {
 public:
  EmbeddedGraph() = default;

  // rotation[v] lists the darts directed into v in counterclockwise order.
  static EmbeddedGraph build(int num_vertices, int num_edges,
                             const std::vector<std::vector<DartId>>& rotation);

  [[nodiscard]] int num_vertices() const noexcept { return num_vertices_; }
  [[nodiscard]] int num_edges() const noexcept { return num_edges_; }
  [[nodiscard]] int num_darts() const noexcept { return 2 * num_edges_; }
  [[nodiscard]] int num_faces() const noexcept { return static_cast<int>(face_start_.size()) - 1; }
  [[nodiscard]] int genus() const noexcept { return genus_; }

  [[nodiscard]] VertexId head(DartId d) const { return head_[d]; }
  [[nodiscard]] VertexId tail(DartId d) const { return head_[rev(d)]; }
  [[nodiscard]] DartId pi(DartId d) const { return pi_[d]; }
  [[nodiscard]] DartId pi_inv(DartId d) const { return pi_inv_[d]; }
  [[nodiscard]] DartId face_next(DartId d) const { return rev(pi_[d]); }

  // Dual view: d = left_face(d) ↑ face_of(d).
  [[nodiscard]] FaceId face_of(DartId d) const { return face_of_[d]; }
  [[nodiscard]] FaceId left_face(DartId d) const { return face_of_[rev(d)]; }
  [[nodiscard]] int face_pos(DartId d) const { return face_pos_[d]; }

  [[nodiscard]] std::span<const DartId> face_darts(FaceId f) const {
    return {face_darts_.data() + face_start_[f], face_darts_.data() + face_start_[f + 1]};
  }
  [[nodiscard]] std::span<const DartId> rotation(VertexId v) const {
    return {rot_darts_.data() + rot_start_[v], rot_darts_.data() + rot_start_[v + 1]};
  }
  [[nodiscard]] std::vector<std::vector<DartId>> rotation_lists() const;

 private:
  int num_vertices_ = 0;
  int num_edges_ = 0;
  int genus_ = 0;
  std::vector<VertexId> head_;
  std::vector<DartId> pi_, pi_inv_;
  std::vector<FaceId> face_of_;
  std::vector<int> face_pos_;
  std::vector<int> face_start_;
  std::vector<DartId> face_darts_;
  std::vector<int> rot_start_;
  std::vector<DartId> rot_darts_;
};

// Clockwise dart orbits, one per face.
std::vector<std::vector<DartId>> faces(const EmbeddedGraph& g);
int genus(const EmbeddedGraph& g);

// Dual graph as an embedded graph over the same edge ids: vertex p is face p,
// dual dart d runs from left_face(d) to face_of(d), and the dual face of d
// corresponds to the primal vertex tail(d).
struct DualView {
  std::vector<FaceId> tail_face;
  std::vector<FaceId> head_face;
  EmbeddedGraph graph;
};

DualView dual(const EmbeddedGraph& g);

// .emg text format.
EmbeddedGraph read_emg(std::istream& in);
EmbeddedGraph read_emg_file(const std::string& path);
void write_emg(std::ostream& out, const EmbeddedGraph& g);

}  // namespace surf
