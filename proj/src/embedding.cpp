#include "surf/embedding.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "surf/errors.hpp"

namespace surf {

EmbeddedGraph EmbeddedGraph::build(int num_vertices, int num_edges,
                                   const std::vector<std::vector<DartId>>& rotation) {
  if (num_vertices <= 0 || num_edges < 0) fail(ErrorCode::BadParameters, "empty graph");
  if (static_cast<int>(rotation.size()) != num_vertices)
    fail(ErrorCode::BadParameters, "rotation count differs from vertex count");

  EmbeddedGraph g;
  g.num_vertices_ = num_vertices;
  g.num_edges_ = num_edges;
  const int nd = 2 * num_edges;
  g.head_.assign(nd, kNone);
  g.pi_.assign(nd, kNone);
  g.pi_inv_.assign(nd, kNone);
  g.rot_start_.assign(num_vertices + 1, 0);

  for (VertexId v = 0; v < num_vertices; ++v) {
    const auto& list = rotation[v];
    g.rot_start_[v + 1] = g.rot_start_[v] + static_cast<int>(list.size());
    for (DartId d : list) {
      if (d < 0 || d >= nd) fail(ErrorCode::BadParameters, "dart id out of range: " + std::to_string(d));
      if (g.head_[d] != kNone) fail(ErrorCode::DartMultiplyListed, "dart " + std::to_string(d));
      g.head_[d] = v;
      g.rot_darts_.push_back(d);
    }
    for (size_t i = 0; i < list.size(); ++i) {
      DartId d = list[i], nxt = list[(i + 1) % list.size()];
      g.pi_[d] = nxt;
      g.pi_inv_[nxt] = d;
    }
  }
  for (DartId d = 0; d < nd; ++d)
    if (g.head_[d] == kNone) fail(ErrorCode::DartMissing, "dart " + std::to_string(d));

  // Connectivity over undirected edges.
  {
    std::vector<std::vector<VertexId>> adj(num_vertices);
    for (EdgeId e = 0; e < num_edges; ++e) {
      VertexId a = g.head_[2 * e], b = g.head_[2 * e + 1];
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<char> seen(num_vertices, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (VertexId y : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
    }
    if (count != num_vertices) fail(ErrorCode::NotConnected);
  }

  // Faces as orbits of rev∘pi, numbered by smallest dart.
  g.face_of_.assign(nd, kNone);
  g.face_pos_.assign(nd, 0);
  g.face_start_.push_back(0);
  for (DartId s = 0; s < nd; ++s) {
    if (g.face_of_[s] != kNone) continue;
    FaceId f = static_cast<FaceId>(g.face_start_.size()) - 1;
    int pos = 0;
    DartId d = s;
    do {
      g.face_of_[d] = f;
      g.face_pos_[d] = pos++;
      g.face_darts_.push_back(d);
      d = rev(g.pi_[d]);
    } while (d != s);
    g.face_start_.push_back(static_cast<int>(g.face_darts_.size()));
  }
  if (nd == 0) g.face_start_.push_back(0);  // a lone vertex bounds one face

  const int chi2 = 2 - num_vertices + num_edges - g.num_faces();
  if (chi2 < 0 || chi2 % 2 != 0) fail(ErrorCode::NonIntegralGenus);
  g.genus_ = chi2 / 2;
  return g;
}

std::vector<std::vector<DartId>> EmbeddedGraph::rotation_lists() const {
  std::vector<std::vector<DartId>> out(num_vertices_);
  for (VertexId v = 0; v < num_vertices_; ++v) {
    auto r = rotation(v);
    out[v].assign(r.begin(), r.end());
  }
  return out;
}

std::vector<std::vector<DartId>> faces(const EmbeddedGraph& g) {
  std::vector<std::vector<DartId>> out(g.num_faces());
  for (FaceId f = 0; f < g.num_faces(); ++f) {
    auto darts = g.face_darts(f);
    out[f].assign(darts.begin(), darts.end());
  }
  return out;
}

int genus(const EmbeddedGraph& g) { return g.genus(); }

DualView dual(const EmbeddedGraph& g) {
  DualView dv;
  const int nd = g.num_darts();
  dv.tail_face.resize(nd);
  dv.head_face.resize(nd);
  for (DartId d = 0; d < nd; ++d) {
    dv.tail_face[d] = g.left_face(d);
    dv.head_face[d] = g.face_of(d);
  }
  // Counterclockwise around a face is the reverse of its clockwise orbit.
  std::vector<std::vector<DartId>> rot(g.num_faces());
  for (FaceId f = 0; f < g.num_faces(); ++f) {
    auto darts = g.face_darts(f);
    rot[f].assign(darts.rbegin(), darts.rend());
  }
  dv.graph = EmbeddedGraph::build(g.num_faces(), g.num_edges(), rot);
  return dv;
}

EmbeddedGraph read_emg(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return;
    }
    fail(ErrorCode::BadParameters, std::string("unexpected end of file reading ") + what);
  };
  next_line("header");
  {
    std::istringstream hs(line);
    std::string magic;
    int version = 0;
    if (!(hs >> magic >> version) || magic != "emg" || version != 1)
      fail(ErrorCode::BadParameters, "expected header 'emg 1'");
  }
  next_line("counts");
  long long nv = 0, ne = 0;
  {
    std::istringstream cs(line);
    if (!(cs >> nv >> ne) || nv <= 0 || ne < 0 || nv > (1 << 28) || ne > (1 << 28))
      fail(ErrorCode::BadParameters, "bad vertex/edge counts");
  }
  std::vector<std::vector<DartId>> rot(static_cast<size_t>(nv));
  for (long long v = 0; v < nv; ++v) {
    if (!std::getline(in, line)) fail(ErrorCode::BadParameters, "missing rotation line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream rs(line);
    std::string tok;
    while (rs >> tok) {
      char* end = nullptr;
      long long d = std::strtoll(tok.c_str(), &end, 10);
      if (*end != '\0') fail(ErrorCode::BadParameters, "bad dart token '" + tok + "'");
      if (d < 0 || d >= 2 * ne) fail(ErrorCode::BadParameters, "dart id out of range: " + tok);
      rot[static_cast<size_t>(v)].push_back(static_cast<DartId>(d));
    }
  }
  return EmbeddedGraph::build(static_cast<int>(nv), static_cast<int>(ne), rot);
}

EmbeddedGraph read_emg_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadParameters, "cannot open " + path);
  return read_emg(in);
}

void write_emg(std::ostream& out, const EmbeddedGraph& g) {
  out << "emg 1\n" << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    bool first = true;
    for (DartId d : g.rotation(v)) {
      if (!first) out << ' ';
      out << d;
      first = false;
    }
    out << '\n';
  }
}

}  // namespace surf
