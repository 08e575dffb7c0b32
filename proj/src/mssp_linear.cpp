#include "surf/mssp_linear.hpp"

#include <algorithm>

#include "surf/errors.hpp"
#include "surf/sssp.hpp"

namespace surf {

namespace {

// Vertex states in the dual. Non-negative values name the cut path a vertex is interior to.
constexpr int kHair = -1;
constexpr int kCut = -2;

// Tags for darts of the reduced cut graph: 2k and 2k+1 are the two
// orientations of cut path k, the rest are the q-path and the extra r->q edge.
constexpr int kPiqFwd = -2;
constexpr int kPiqRev = -3;
constexpr int kRq = -4;
constexpr int kQr = -5;

enum class Stage { One, Two, Three };

// A maximal dual path of the cut graph between two cut vertices, oriented a -> b.
struct CutPath {
  FaceId a = kNone, b = kNone;
  EdgeId first = kNone, last = kNone;
  int len = 0;
  bool alive = false;
  std::vector<int64_t> sig;
};

struct Item {
  FaceId tail, head;
  int key;
  int tag;
};

struct Entry {
  int tag;
  int pos;
};

void check(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InternalInvariantViolation, what);
}

class LinearEngine {
 public:
  LinearEngine(const MsspSetup& s, MsspListener* l, const LinearOptions& o, LinearStats* st)
      : s_(s), g_(*s.g), costs_(s.costs), h_(2 * g_.genus()), listener_(l), opts_(o), stats_(st) {}

  std::vector<PivotEvent> run();
  CutGraphSummary inspect();

 private:
  void prime();
  // ---- path storage ----
  int new_path() {
    int k;
    if (!free_.empty()) {
      k = free_.back();
      free_.pop_back();
    } else {
      k = static_cast<int>(paths_.size());
      paths_.emplace_back();
    }
    CutPath& p = paths_[k];
    p = CutPath{};
    p.alive = true;
    p.sig.assign(h_, 0);
    return k;
  }
  void kill_path(int k) {
    paths_[k].alive = false;
    free_.push_back(k);
  }
  void inc_replace(FaceId p, int k, int end, int k2, int end2) {
    for (auto& e : inc_[p])
      if (e.first == k && e.second == end) {
        e = {k2, end2};
        return;
      }
    check(false, "missing incidence");
  }
  void inc_remove(FaceId p, int k, int end) {
    auto& v = inc_[p];
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i].first == k && v[i].second == end) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        return;
      }
    check(false, "missing incidence");
  }
  // Sets ids of the edges first..last (following nxt_) and of the vertices between them.
  int relabel(EdgeId first, int k) {
    int n = 0;
    for (EdgeId e = first; e != kNone; e = nxt_[e]) {
      pid_[e] = k;
      ++n;
      if (nxt_[e] != kNone) vstate_[g_.face_of(fwd_[e])] = k;
    }
    return n;
  }
  // Dart of path k leaving its endpoint (end 0 = a, 1 = b).
  DartId leaving(int k, int end) const {
    return end == 0 ? fwd_[paths_[k].first] : rev(fwd_[paths_[k].last]);
  }
  int tag_of(DartId d) const {
    int k = pid_[edge_of(d)];
    if (k < 0) return kNone;
    return d == fwd_[edge_of(d)] ? 2 * k : 2 * k + 1;
  }
  int degree(FaceId x) const {
    int d = static_cast<int>(inc_[x].size());
    if (piq_ && (x == q_ || x == w_)) ++d;
    return d;
  }

  int make_path(std::span<const DartId> darts, FaceId a, FaceId b);
  void split_at(FaceId x);
  void flip(int k);
  void merge_at(FaceId x);
  FaceId absorb(FaceId x, int k, int end, bool mark, DartId* last);
  void hairify(FaceId x, std::vector<FaceId>& work);
  void redirect(FaceId x);
  void fix_degrees(std::vector<FaceId> work);
  DartId arrival(FaceId a) const;
  void split_piq_at(FaceId a);
  void resolve_endpoint(FaceId x);
  int add_path_for(DartId dm);
  void dissolve(EdgeId e, std::vector<FaceId>& work);

  // ---- reduced graph ----
  void trace(bool with_rq);
  std::span<const int64_t> sig_of(int tag, std::vector<int64_t>& buf) const;
  void rebuild_registry();
  int registry_index(int tag) const;
  void update_signatures(DartId dm, const std::vector<int64_t>& sig_plus);
  // Calls fn on each dart of a cut dart in order until fn returns true.
  template <class F>
  void for_darts(int tag, F&& fn) const;
  bool negative(int tag) const;
  std::vector<int64_t> potentials(VertexId root) const;

  // ---- engine ----
  void init_structures(VertexId root);
  void iteration(int iter, DartId uv);
  void release_old_q(FaceId qn);
  void spare_new_q();
  void pivot13(DartId dp, bool special);
  void pivot2(FaceId o, DartId dp, bool special);
  void stage1_end(bool& done);
  void stage2_end();
  void round_complete();
  void fallback_rounds();
  bool take_fallback(DartId dm, DartId dp);
  void emit(PivotEvent ev);
  void audit(const char* where);

  const MsspSetup& s_;
  const EmbeddedGraph& g_;
  const CostTable& costs_;
  int h_;
  MsspListener* listener_;
  LinearOptions opts_;
  LinearStats* stats_;

  std::vector<DartId> pred_;
  std::vector<int64_t> slack0_;
  int64_t lambda0_ = 0;
  int iter_ = 0;
  VertexId u_ = kNone, v_ = kNone;
  DartId vu_ = kNone;
  FaceId q_ = kNone, r_ = kNone;
  bool fallback_ = false;
  bool built_ = false;
  bool mark_ = false;  // value that visited carries on the q-path outside stage 2

  std::vector<DartId> succ_;
  std::vector<char> visited_;
  std::vector<int> vstate_;
  std::vector<std::vector<std::pair<int, int>>> inc_;
  std::vector<int> pid_;
  std::vector<DartId> fwd_;
  std::vector<EdgeId> nxt_, prv_;
  std::vector<CutPath> paths_;
  std::vector<int> free_;

  bool piq_ = false;     // q-path nontrivial
  FaceId w_ = kNone;     // its far end, kNone while unknown
  DartId piq_last_ = kNone;

  std::vector<Entry> registry_;
  size_t cursor_ = 0;
  DartId scan_start_ = kNone;
  Stage stage_ = Stage::One;
  FaceId finger_ = kNone;
  DartId finger_in_ = kNone;

  std::vector<Item> items_;
  std::vector<int> item_face_;
  std::vector<int> next_;
  std::vector<int> path_item_;
  int piq_item_ = kNone, rq_item_ = kNone;
  std::vector<int> scratch_;
  std::vector<int> stamp_;
  int stamp_now_ = 0;

  std::vector<PivotEvent> events_;
};

int LinearEngine::make_path(std::span<const DartId> darts, FaceId a, FaceId b) {
  int k = new_path();
  CutPath& p = paths_[k];
  p.a = a;
  p.b = b;
  EdgeId prev = kNone;
  for (DartId d : darts) {
    EdgeId e = edge_of(d);
    fwd_[e] = d;
    prv_[e] = prev;
    nxt_[e] = kNone;
    if (prev != kNone) nxt_[prev] = e;
    prev = e;
  }
  p.first = edge_of(darts.front());
  p.last = prev;
  p.len = relabel(p.first, k);
  inc_[a].push_back({k, 0});
  inc_[b].push_back({k, 1});
  return k;
}

void LinearEngine::split_at(FaceId x) {
  int k = vstate_[x];
  EdgeId es = edge_of(succ_[x]);
  check(pid_[es] == k, "interior successor off its path");
  EdgeId e1, e2;
  if (g_.face_of(fwd_[es]) == x) {
    e1 = es;
    e2 = nxt_[es];
  } else {
    e2 = es;
    e1 = prv_[es];
  }
  check(e1 != kNone && e2 != kNone, "split at an endpoint");
  // Walk both halves at once so only the shorter one is relabelled.
  EdgeId i = e1, j = e2;
  while (i != kNone && j != kNone) {
    i = prv_[i];
    j = nxt_[j];
  }
  bool left_small = i == kNone;
  int n = new_path();
  CutPath& pk = paths_[k];
  CutPath& pn = paths_[n];
  pn.sig = pk.sig;
  nxt_[e1] = kNone;
  prv_[e2] = kNone;
  if (left_small) {
    pn.a = pk.a;
    pn.b = x;
    pn.first = pk.first;
    pn.last = e1;
    pk.first = e2;
    pk.a = x;
    pn.len = relabel(pn.first, n);
    inc_replace(pn.a, k, 0, n, 0);
    inc_[x] = {{n, 1}, {k, 0}};
  } else {
    pn.a = x;
    pn.b = pk.b;
    pn.first = e2;
    pn.last = pk.last;
    pk.last = e1;
    pk.b = x;
    pn.len = relabel(pn.first, n);
    inc_replace(pn.b, k, 1, n, 1);
    inc_[x] = {{k, 1}, {n, 0}};
  }
  pk.len -= pn.len;
  vstate_[x] = kCut;
}

void LinearEngine::flip(int k) {
  CutPath& p = paths_[k];
  for (EdgeId e = p.first; e != kNone;) {
    EdgeId nx = nxt_[e];
    std::swap(nxt_[e], prv_[e]);
    fwd_[e] = rev(fwd_[e]);
    e = nx;
  }
  std::swap(p.first, p.last);
  if (p.a != p.b) {
    inc_replace(p.a, k, 0, k, 1);
    inc_replace(p.b, k, 1, k, 0);
  }
  std::swap(p.a, p.b);
  for (auto& s : p.sig) s = -s;
}

void LinearEngine::merge_at(FaceId x) {
  check(inc_[x].size() == 2, "merge needs degree two");
  auto [k1, e1] = inc_[x][0];
  auto [k2, e2] = inc_[x][1];
  check(k1 != k2, "merge of a lone loop");
  bool keep_first = paths_[k1].len >= paths_[k2].len;
  int keep = keep_first ? k1 : k2, oth = keep_first ? k2 : k1;
  int ek = keep_first ? e1 : e2, eo = keep_first ? e2 : e1;
  if (ek == 1) {
    if (eo != 0) flip(oth);
  } else if (eo != 1) {
    flip(oth);
  }
  CutPath& pk = paths_[keep];
  CutPath& po = paths_[oth];
  check(pk.sig == po.sig, "merged paths disagree on signature");
  if (ek == 1) {
    nxt_[pk.last] = po.first;
    prv_[po.first] = pk.last;
    relabel(po.first, keep);
    pk.last = po.last;
    pk.b = po.b;
    inc_replace(po.b, oth, 1, keep, 1);
  } else {
    nxt_[po.last] = pk.first;
    prv_[pk.first] = po.last;
    EdgeId old_first = pk.first;
    pk.first = po.first;
    for (EdgeId e = po.first; e != old_first; e = nxt_[e]) {
      pid_[e] = keep;
      vstate_[g_.face_of(fwd_[e])] = keep;
    }
    pk.a = po.a;
    inc_replace(po.a, oth, 0, keep, 0);
  }
  vstate_[x] = keep;
  pk.len += po.len;
  inc_[x].clear();
  kill_path(oth);
}

// Turns path k, seen from its endpoint x, into part of the q-path or of the
// hair: every vertex from x up to the far end gets its successor along it.
FaceId LinearEngine::absorb(FaceId x, int k, int end, bool mark, DartId* last) {
  CutPath& p = paths_[k];
  FaceId far = end == 0 ? p.b : p.a;
  for (EdgeId e = end == 0 ? p.first : p.last; e != kNone;) {
    DartId d = end == 0 ? fwd_[e] : rev(fwd_[e]);
    succ_[x] = d;
    visited_[x] = mark;
    if (x != far && vstate_[x] >= 0) vstate_[x] = kHair;
    pid_[e] = kNone;
    x = g_.face_of(d);
    if (last) *last = d;
    e = end == 0 ? nxt_[e] : prv_[e];
  }
  inc_remove(far, k, 1 - end);
  kill_path(k);
  return far;
}

void LinearEngine::hairify(FaceId x, std::vector<FaceId>& work) {
  auto [k, end] = inc_[x][0];
  inc_[x].clear();
  FaceId far = absorb(x, k, end, false, nullptr);
  vstate_[x] = kHair;
  work.push_back(far);
}

void LinearEngine::redirect(FaceId x) {
  if (x == r_) {
    succ_[x] = kNone;
    return;
  }
  if (succ_[x] != kNone && pid_[edge_of(succ_[x])] >= 0) return;
  check(!inc_[x].empty(), "cut vertex without a path");
  succ_[x] = leaving(inc_[x][0].first, inc_[x][0].second);
}

void LinearEngine::fix_degrees(std::vector<FaceId> work) {
  while (!work.empty()) {
    FaceId x = work.back();
    work.pop_back();
    if (vstate_[x] != kCut || x == r_) continue;
    int deg = degree(x);
    if (x == q_) {
      if (piq_) continue;
      check(deg >= 1, "q detached from the cut graph");
      if (deg == 1) {
        auto [k, end] = inc_[x][0];
        inc_[x].clear();
        w_ = absorb(x, k, end, mark_, &piq_last_);
        piq_ = true;
        redirect(w_);
      } else {
        redirect(x);
      }
      continue;
    }
    if (deg >= 3) {
      redirect(x);
    } else if (deg == 2) {
      if (piq_ && x == w_) {
        auto [k, end] = inc_[x][0];
        inc_[x].clear();
        FaceId old = w_;
        w_ = absorb(x, k, end, mark_, &piq_last_);
        vstate_[old] = kHair;
        redirect(w_);
      } else {
        redirect(x);
        merge_at(x);
      }
    } else {
      check(deg == 1 && inc_[x].size() == 1, "dangling q-path");
      hairify(x, work);
    }
  }
}

DartId LinearEngine::arrival(FaceId a) const {
  for (DartId d : g_.face_darts(a)) {
    FaceId x = g_.left_face(d);
    if (visited_[x] && succ_[x] == d) return d;
  }
  check(false, "q-path predecessor not found");
  return kNone;
}

void LinearEngine::split_piq_at(FaceId a) {
  std::vector<DartId> darts;
  for (FaceId x = a; x != w_; x = g_.face_of(succ_[x])) darts.push_back(succ_[x]);
  for (DartId d : darts) visited_[g_.left_face(d)] = 0;
  FaceId w = w_;
  make_path(darts, a, w);
  if (a == q_) {
    piq_ = false;
    w_ = kNone;
    piq_last_ = kNone;
  } else {
    vstate_[a] = kCut;
    w_ = a;
    piq_last_ = arrival(a);
  }
}

void LinearEngine::resolve_endpoint(FaceId x) {
  if (vstate_[x] >= 0)
    split_at(x);
  else if (vstate_[x] == kHair && visited_[x])
    split_piq_at(x);
  else if (x == q_ && piq_ && visited_[x])
    split_piq_at(x);
}

// New cut path through the edge of dm, following hair successors from both ends.
int LinearEngine::add_path_for(DartId dm) {
  FaceId o = g_.left_face(dm), p = g_.face_of(dm);
  auto core = [&](FaceId x) { return vstate_[x] != kHair || visited_[x]; };
  ++stamp_now_;
  std::vector<DartId> fa, eb;
  FaceId a = p;
  while (!core(a)) {
    stamp_[a] = stamp_now_;
    fa.push_back(succ_[a]);
    check(succ_[a] != kNone, "hair without successor");
    a = g_.face_of(succ_[a]);
  }
  FaceId b = o;
  while (!core(b)) {
    check(stamp_[b] != stamp_now_, "hair walks meet");
    eb.push_back(succ_[b]);
    check(succ_[b] != kNone, "hair without successor");
    b = g_.face_of(succ_[b]);
  }
  resolve_endpoint(a);
  resolve_endpoint(b);
  std::vector<DartId> darts;
  darts.reserve(eb.size() + fa.size() + 1);
  for (auto it = eb.rbegin(); it != eb.rend(); ++it) darts.push_back(rev(*it));
  darts.push_back(dm);
  darts.insert(darts.end(), fa.begin(), fa.end());
  return make_path(darts, b, a);
}

// Removes path edge e from the cut graph; both remainders become hair.
void LinearEngine::dissolve(EdgeId e, std::vector<FaceId>& work) {
  int k = pid_[e];
  CutPath& p = paths_[k];
  FaceId x = g_.left_face(fwd_[e]);
  for (EdgeId f = prv_[e]; f != kNone; f = prv_[f]) {
    succ_[x] = rev(fwd_[f]);
    vstate_[x] = kHair;
    pid_[f] = kNone;
    x = g_.left_face(fwd_[f]);
  }
  x = g_.face_of(fwd_[e]);
  for (EdgeId f = nxt_[e]; f != kNone; f = nxt_[f]) {
    succ_[x] = fwd_[f];
    vstate_[x] = kHair;
    pid_[f] = kNone;
    x = g_.face_of(fwd_[f]);
  }
  pid_[e] = kNone;
  inc_remove(p.a, k, 0);
  inc_remove(p.b, k, 1);
  work.push_back(p.a);
  work.push_back(p.b);
  kill_path(k);
}

template <class F>
void LinearEngine::for_darts(int tag, F&& fn) const {
  if (tag == kPiqFwd) {
    for (FaceId x = q_; x != w_; x = g_.face_of(succ_[x]))
      if (fn(succ_[x])) return;
    return;
  }
  const CutPath& p = paths_[tag >> 1];
  if ((tag & 1) == 0) {
    for (EdgeId e = p.first; e != kNone; e = nxt_[e])
      if (fn(fwd_[e])) return;
  } else {
    for (EdgeId e = p.last; e != kNone; e = prv_[e])
      if (fn(rev(fwd_[e]))) return;
  }
}

std::span<const int64_t> LinearEngine::sig_of(int tag, std::vector<int64_t>& buf) const {
  buf.assign(h_, 0);
  if (tag >= 0) {
    const auto& s = paths_[tag >> 1].sig;
    for (int i = 0; i < h_; ++i) buf[i] = (tag & 1) ? -s[i] : s[i];
  }
  return buf;
}

// Faces of the reduced cut graph. Its vertices are the cut vertices and its
// edges the cut paths, the q-path and optionally r->q; the rotation at each
// vertex mirrors the dual rotation (reversed face orbit order).
void LinearEngine::trace(bool with_rq) {
  items_.clear();
  path_item_.assign(paths_.size(), kNone);
  piq_item_ = rq_item_ = kNone;
  for (size_t k = 0; k < paths_.size(); ++k) {
    const CutPath& p = paths_[k];
    if (!p.alive) continue;
    path_item_[k] = static_cast<int>(items_.size());
    int t = 2 * static_cast<int>(k);
    items_.push_back({p.a, p.b, g_.face_pos(fwd_[p.last]), t});
    items_.push_back({p.b, p.a, g_.face_pos(rev(fwd_[p.first])), t + 1});
  }
  if (piq_) {
    piq_item_ = static_cast<int>(items_.size());
    items_.push_back({q_, w_, g_.face_pos(piq_last_), kPiqFwd});
    items_.push_back({w_, q_, g_.face_pos(rev(succ_[q_])), kPiqRev});
  }
  if (with_rq) {
    rq_item_ = static_cast<int>(items_.size());
    items_.push_back({r_, q_, g_.face_pos(vu_), kRq});
    items_.push_back({q_, r_, g_.face_pos(rev(vu_)), kQr});
  }
  const int m = static_cast<int>(items_.size());
  // Group incoming items by head.
  std::vector<FaceId> verts;
  for (const Item& it : items_) {
    if (scratch_[it.head] == kNone) {
      scratch_[it.head] = static_cast<int>(verts.size());
      verts.push_back(it.head);
    }
  }
  std::vector<std::vector<int>> rot(verts.size());
  for (int i = 0; i < m; ++i) rot[scratch_[items_[i].head]].push_back(i);
  std::vector<int> pi(m);
  for (auto& list : rot) {
    std::sort(list.begin(), list.end(), [&](int x, int y) { return items_[x].key > items_[y].key; });
    for (size_t j = 0; j < list.size(); ++j) pi[list[j]] = list[(j + 1) % list.size()];
  }
  for (FaceId x : verts) scratch_[x] = kNone;
  item_face_.assign(m, kNone);
  int nf = 0;
  for (int i = 0; i < m; ++i) {
    if (item_face_[i] != kNone) continue;
    for (int j = i; item_face_[j] == kNone; j = pi[j] ^ 1) item_face_[j] = nf;
    ++nf;
  }
  if (stats_) stats_->registry_ops += m;
  check(m == 0 || nf == 2, "reduced cut graph does not have two faces");
  next_.swap(pi);
}

int LinearEngine::registry_index(int tag) const {
  for (size_t i = 0; i < registry_.size(); ++i)
    if (registry_[i].tag == tag) return static_cast<int>(i);
  return kNone;
}

// Active cut darts ordered by signature, then by position along the blue face
// starting just after r->q.
void LinearEngine::rebuild_registry() {
  trace(true);
  registry_.clear();
  const int blue = item_face_[rq_item_];
  int pos = 0;
  for (int i = next_[rq_item_] ^ 1; i != rq_item_; i = next_[i] ^ 1, ++pos) {
    const Item& it = items_[i];
    if (it.tag == kQr || it.tag == kRq) continue;
    if (item_face_[i ^ 1] == blue) continue;
    registry_.push_back({it.tag, pos});
  }
  std::vector<int64_t> ba, bb;
  std::sort(registry_.begin(), registry_.end(), [&](const Entry& x, const Entry& y) {
    auto sx = sig_of(x.tag, ba);
    auto sy = sig_of(y.tag, bb);
    if (!std::equal(sx.begin(), sx.end(), sy.begin()))
      return std::lexicographical_compare(sx.begin(), sx.end(), sy.begin(), sy.end());
    return x.pos < y.pos;
  });
  for (const Entry& e : registry_) check(e.tag != kPiqRev, "reversed q-path is active");
  if (stats_) stats_->max_registry = std::max(stats_->max_registry, static_cast<int>(registry_.size()));
}

// Adding dm splits the reduced graph of the cut graph plus e(dm) into the side
// holding the subtree that moves and the rest; every cut dart leaving that side
// gains the class of the leaving cycle.
void LinearEngine::update_signatures(DartId dm, const std::vector<int64_t>& sig_plus) {
  trace(false);
  int t = tag_of(rev(dm));
  check(t >= 0, "entering dart is not on a cut path");
  const int sface = item_face_[path_item_[t >> 1] + (t & 1)];
  for (size_t k = 0; k < paths_.size(); ++k) {
    if (!paths_[k].alive) continue;
    int i = path_item_[k];
    bool ts = item_face_[i] == sface, hs = item_face_[i + 1] == sface;
    if (ts == hs) continue;
    auto& s = paths_[k].sig;
    for (int j = 0; j < h_; ++j) s[j] += ts ? sig_plus[j] : -sig_plus[j];
  }
  if (piq_) {
    bool ts = item_face_[piq_item_] == sface, hs = item_face_[piq_item_ + 1] == sface;
    check(ts == hs || std::all_of(sig_plus.begin(), sig_plus.end(), [](int64_t x) { return x == 0; }),
          "q-path would gain a class");
  }
}

bool LinearEngine::negative(int tag) const {
  if (tag < 0) return false;
  for (int64_t x : paths_[tag >> 1].sig)
    if (x != 0) return (tag & 1) ? x > 0 : x < 0;
  return false;
}

// Homology class of the tree path from root to each vertex.
std::vector<int64_t> LinearEngine::potentials(VertexId root) const {
  const int n = g_.num_vertices();
  std::vector<int64_t> pot(static_cast<size_t>(n) * h_, 0);
  std::vector<char> known(n, 0);
  known[root] = 1;
  std::vector<VertexId> chain;
  for (VertexId v = 0; v < n; ++v) {
    // Climb to the nearest vertex with a known potential, then fill back down.
    for (VertexId x = v; !known[x]; x = g_.tail(pred_[x])) chain.push_back(x);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      VertexId y = *it;
      DartId d = pred_[y];
      auto row = costs_.row(d);
      const size_t from = static_cast<size_t>(g_.tail(d)) * h_, to = static_cast<size_t>(y) * h_;
      for (int i = 0; i < h_; ++i) pot[to + i] = pot[from + i] + row[1 + i];
      known[y] = 1;
    }
    chain.clear();
  }
  return pot;
}

// Builds the cut graph of the current tree from scratch: peel the cotree
// complement down to its core (keeping q and r), then cut it into paths.
void LinearEngine::init_structures(VertexId root) {
  const int nf = g_.num_faces(), ne = g_.num_edges();
  succ_.assign(nf, kNone);
  visited_.assign(nf, 0);
  vstate_.assign(nf, kHair);
  inc_.assign(nf, {});
  pid_.assign(ne, kNone);
  fwd_.assign(ne, kNone);
  nxt_.assign(ne, kNone);
  prv_.assign(ne, kNone);
  paths_.clear();
  free_.clear();
  piq_ = false;
  w_ = kNone;
  piq_last_ = kNone;

  std::vector<char> core(ne, 1);
  for (DartId d : pred_)
    if (d != kNone) core[edge_of(d)] = 0;
  std::vector<int> deg(nf, 0);
  for (EdgeId e = 0; e < ne; ++e)
    if (core[e]) {
      ++deg[g_.left_face(2 * e)];
      ++deg[g_.face_of(2 * e)];
    }
  std::vector<FaceId> queue;
  for (FaceId p = 0; p < nf; ++p)
    if (deg[p] == 1 && p != q_ && p != r_) queue.push_back(p);
  std::vector<char> peeled(nf, 0);
  while (!queue.empty()) {
    FaceId p = queue.back();
    queue.pop_back();
    if (deg[p] != 1) continue;
    for (DartId d : g_.face_darts(p)) {
      if (!core[edge_of(d)]) continue;
      core[edge_of(d)] = 0;
      succ_[p] = rev(d);
      peeled[p] = 1;
      deg[p] = 0;
      FaceId o = g_.left_face(d);
      if (--deg[o] == 1 && o != q_ && o != r_) queue.push_back(o);
      break;
    }
  }
  for (FaceId p = 0; p < nf; ++p)
    if (!peeled[p] && (deg[p] != 2 || p == q_ || p == r_) && (deg[p] > 0 || p == q_ || p == r_)) vstate_[p] = kCut;
  std::vector<DartId> darts;
  for (FaceId c = 0; c < nf; ++c) {
    if (vstate_[c] != kCut) continue;
    for (DartId d : g_.face_darts(c)) {
      if (!core[edge_of(d)] || pid_[edge_of(d)] != kNone) continue;
      darts.assign(1, rev(d));
      EdgeId prev = edge_of(d);
      FaceId x = g_.left_face(d);
      while (vstate_[x] != kCut) {
        DartId nd = kNone;
        for (DartId d2 : g_.face_darts(x))
          if (core[edge_of(d2)] && edge_of(d2) != prev) {
            nd = d2;
            break;
          }
        check(nd != kNone, "core path breaks off");
        darts.push_back(rev(nd));
        prev = edge_of(nd);
        x = g_.left_face(nd);
      }
      make_path(darts, c, x);
    }
  }
  for (const CutPath& p : paths_)
    for (EdgeId e = p.first; nxt_[e] != kNone; e = nxt_[e]) succ_[g_.face_of(fwd_[e])] = fwd_[nxt_[e]];
  for (FaceId p = 0; p < nf; ++p)
    if (vstate_[p] == kCut && (p == r_ || !inc_[p].empty())) redirect(p);
  std::vector<int64_t> pot = potentials(root);
  for (CutPath& p : paths_) {
    DartId d = fwd_[p.first];
    auto row = costs_.row(d);
    size_t x = static_cast<size_t>(g_.tail(d)) * h_, y = static_cast<size_t>(g_.head(d)) * h_;
    for (int i = 0; i < h_; ++i) p.sig[i] = pot[x + i] + row[1 + i] - pot[y + i];
  }
  if (q_ != r_ && inc_[q_].size() == 1) {
    auto [k, end] = inc_[q_][0];
    inc_[q_].clear();
    w_ = absorb(q_, k, end, false, &piq_last_);
    piq_ = true;
    redirect(w_);
  }
}

void LinearEngine::emit(PivotEvent ev) {
  events_.push_back(ev);
  if (listener_) listener_->on_pivot(ev);
}

bool LinearEngine::take_fallback(DartId dm, DartId dp) {
  if (dm != vu_) return false;
  // v->u leaves the tree: no red vertex remains for the rest of the iteration.
  pred_[g_.head(dp)] = dp;
  emit({iter_, PivotKind::Regular, dp, dm, lambda0_});
  fallback_ = true;
  return true;
}

void LinearEngine::fallback_rounds() {
  for (int64_t target = costs_.c0(vu_); lambda0_ < target; ++lambda0_) {
    if (listener_) listener_->on_round_complete(iter_, {}, kNone);
    ++slack0_[vu_];
    if (stats_) ++stats_->rounds;
  }
  mark_ = false;
  init_structures(v_);
}

void LinearEngine::pivot13(DartId dp, bool special) {
  VertexId y = g_.head(dp);
  DartId dm = pred_[y];
  if (!special && take_fallback(dm, dp)) return;
  int tp = tag_of(dp);
  check(tp >= 0, "leaving dart is not on a cut path");
  std::vector<int64_t> sp;
  sig_of(tp, sp);
  add_path_for(dm);
  update_signatures(dm, sp);
  std::vector<FaceId> work;
  dissolve(edge_of(dp), work);
  fix_degrees(std::move(work));
  if (special) {
    pred_[v_] = kNone;
    pred_[u_] = vu_;
  } else {
    pred_[y] = dp;
    emit({iter_, PivotKind::Regular, dp, dm, lambda0_});
  }
  rebuild_registry();
  int t = tag_of(rev(dm));
  check(t >= 0, "entering dart left the cut paths");
  int idx = registry_index(t);
  check(idx != kNone, "entering cut dart is not active");
  cursor_ = static_cast<size_t>(idx);
  scan_start_ = rev(dm);
  stage_ = negative(t) ? Stage::One : Stage::Three;
  if (opts_.audit) audit("pivot");
}

void LinearEngine::pivot2(FaceId o, DartId dp, bool special) {
  VertexId y = g_.head(dp);
  DartId dm = pred_[y];
  if (!special && take_fallback(dm, dp)) return;
  FaceId p = g_.face_of(dm);
  std::vector<FaceId> s{p};
  std::vector<DartId> sd;
  for (FaceId x = p; x != o;) {
    check(succ_[x] != kNone && sd.size() < static_cast<size_t>(g_.num_faces()), "hair walk misses the finger");
    sd.push_back(succ_[x]);
    x = g_.face_of(succ_[x]);
    s.push_back(x);
  }
  const size_t k = sd.size();
  for (size_t i = k; i >= 1; --i) succ_[s[i]] = rev(sd[i - 1]);
  succ_[p] = rev(dm);
  size_t a = 0;
  while (!visited_[s[a]]) ++a;
  for (size_t i = 1; i < a; ++i) visited_[s[i]] = 1;
  for (size_t i = a + 1; i <= k; ++i) visited_[s[i]] = 0;
  visited_[s[0]] = 0;
  if (special) {
    pred_[v_] = kNone;
    pred_[u_] = vu_;
  } else {
    pred_[y] = dp;
    emit({iter_, PivotKind::Regular, dp, dm, lambda0_});
  }
  finger_ = p;
}

void LinearEngine::stage1_end(bool& done) {
  if (piq_)
    for (FaceId x = q_; visited_[x]; x = g_.face_of(succ_[x])) visited_[x] = 0;
  if (lambda0_ == costs_.c0(vu_)) {
    done = true;
    return;
  }
  if (piq_) {
    stage_ = Stage::Two;
    finger_ = q_;
  } else {
    stage_ = Stage::Three;
  }
}

void LinearEngine::stage2_end() {
  FaceId f = finger_;
  check(f != q_, "empty q-path");
  if (vstate_[f] >= 0) split_at(f);
  check(vstate_[f] == kCut, "q-path ends off the cut graph");
  FaceId old = w_;
  w_ = f;
  piq_last_ = finger_in_;
  mark_ = true;
  if (old != kNone && old != f) fix_degrees({old});
  rebuild_registry();
  int idx = registry_index(kPiqFwd);
  check(idx != kNone, "q-path is not active");
  cursor_ = static_cast<size_t>(idx) + 1;
  scan_start_ = kNone;
  stage_ = Stage::Three;
  if (opts_.audit) audit("stage two");
}

void LinearEngine::round_complete() {
  ++lambda0_;
  if (stats_) ++stats_->rounds;
  std::vector<DartId> act;
  for (const Entry& e : registry_)
    for_darts(e.tag, [&](DartId d) {
      act.push_back(d);
      return false;
    });
  for (DartId d : act) {
    check(slack0_[d] > 0, "active dart with zero slack survived its round");
    --slack0_[d];
    ++slack0_[rev(d)];
  }
  ++slack0_[rev(vu_)];
  if (listener_) listener_->on_round_complete(iter_, act, vu_);
  cursor_ = 0;
  scan_start_ = kNone;
  stage_ = Stage::One;
  if (opts_.audit) audit("round");
}

void LinearEngine::release_old_q(FaceId qn) {
  if (qn == q_) return;
  FaceId old = q_;
  q_ = qn;
  if (piq_) {
    FaceId w = w_;
    piq_ = false;
    w_ = kNone;
    piq_last_ = kNone;
    vstate_[old] = kHair;
    fix_degrees({w});
  } else if (old != r_) {
    fix_degrees({old});
  }
}

void LinearEngine::spare_new_q() {
  if (vstate_[q_] == kCut) return;
  if (vstate_[q_] >= 0) {
    split_at(q_);
    return;
  }
  // Hair or the old q-path: the new q-path is found by the first stage two.
  vstate_[q_] = kCut;
  piq_ = true;
  w_ = kNone;
  piq_last_ = kNone;
}

void LinearEngine::iteration(int iter, DartId uv) {
  iter_ = iter;
  VertexId u = g_.tail(uv), v = g_.head(uv);
  if (u == v) {
    if (listener_) listener_->on_iteration_end(iter, slack0_);
    return;
  }
  u_ = u;
  v_ = v;
  vu_ = rev(uv);
  FaceId qn = g_.face_of(vu_);
  mark_ = false;
  if (!built_) {
    q_ = qn;
    init_structures(u);
    built_ = true;
  } else {
    release_old_q(qn);
    spare_new_q();
  }
  if (opts_.audit) audit("boundary");
  const int64_t d0 = costs_.c0(uv) - slack0_[uv];
  lambda0_ = -d0;
  const DartId dm = pred_[v];
  if (listener_) listener_->on_special(iter, uv, d0);
  emit({iter, PivotKind::Special, vu_, dm, -d0});
  fallback_ = false;
  slack0_[vu_] = 0;
  mark_ = true;
  if (dm == uv) {
    pred_[v] = kNone;
    pred_[u] = vu_;
    if (piq_) {
      stage_ = Stage::Two;
      finger_ = q_;
    } else {
      rebuild_registry();
      cursor_ = 0;
      while (cursor_ < registry_.size() && negative(registry_[cursor_].tag)) ++cursor_;
      scan_start_ = kNone;
      stage_ = Stage::Three;
    }
  } else if (pid_[edge_of(uv)] >= 0) {
    if (stats_) ++stats_->special_case_a;
    pivot13(uv, true);
  } else {
    check(piq_ && succ_[q_] == uv, "r->q is neither a cut path nor the q-path");
    if (stats_) ++stats_->special_case_b;
    visited_[q_] = 1;
    pivot2(q_, uv, true);
    stage_ = Stage::Two;
  }
  bool done = false;
  while (!done && !fallback_) {
    if (stage_ == Stage::Two) {
      FaceId f = finger_;
      if (f == r_ || pid_[edge_of(succ_[f])] >= 0) {
        stage2_end();
        continue;
      }
      check(!visited_[f], "q-path revisits a vertex");
      visited_[f] = 1;
      DartId d = succ_[f];
      if (stats_) ++stats_->dart_checks;
      if (slack0_[d] == 0) {
        pivot2(f, d, false);
      } else {
        finger_in_ = d;
        finger_ = g_.face_of(d);
      }
      continue;
    }
    if (cursor_ >= registry_.size()) {
      if (stage_ == Stage::One)
        stage1_end(done);
      else
        round_complete();
      continue;
    }
    const int tag = registry_[cursor_].tag;
    if (stage_ == Stage::One && (tag == kPiqFwd || !negative(tag))) {
      stage1_end(done);
      continue;
    }
    check(tag != kPiqFwd, "q-path scanned outside stage two");
    bool started = scan_start_ == kNone || tag_of(scan_start_) != tag;
    DartId hit = kNone;
    for_darts(tag, [&](DartId d) {
      if (!started) {
        if (d != scan_start_) return false;
        started = true;
      }
      if (stats_) ++stats_->dart_checks;
      if (slack0_[d] != 0) return false;
      hit = d;
      return true;
    });
    scan_start_ = kNone;
    if (hit != kNone)
      pivot13(hit, false);
    else
      ++cursor_;
  }
  if (fallback_) fallback_rounds();
  mark_ = false;
  if (opts_.audit) audit("iteration end");
  if (listener_) listener_->on_iteration_end(iter, slack0_);
}

// Recomputes the cut graph, signatures, slacks and active cut darts from the
// current tree and compares them with the maintained state.
void LinearEngine::audit(const char* where) {
  auto bad = [&](const std::string& what) { fail(ErrorCode::InternalInvariantViolation, std::string(where) + ": " + what); };
  const int n = g_.num_vertices(), nf = g_.num_faces(), ne = g_.num_edges();
  const bool vu_in = u_ != kNone && pred_[u_] == vu_;
  VertexId root = kNone;
  std::vector<std::vector<DartId>> kids(n);
  for (VertexId x = 0; x < n; ++x) {
    if (pred_[x] == kNone) {
      if (root != kNone) bad("two roots");
      root = x;
    } else {
      kids[g_.tail(pred_[x])].push_back(pred_[x]);
    }
  }
  auto cost0 = [&](DartId d) { return d == vu_ && vu_in ? lambda0_ : costs_.c0(d); };
  std::vector<int64_t> dist(n, 0);
  std::vector<char> red(n, 0);
  std::vector<VertexId> stack{root};
  int seen = 0;
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    ++seen;
    for (DartId d : kids[x]) {
      VertexId y = g_.head(d);
      dist[y] = dist[x] + cost0(d);
      red[y] = red[x] || d == vu_;
      stack.push_back(y);
    }
  }
  if (seen != n) bad("tree is not spanning");
  for (DartId d = 0; d < g_.num_darts(); ++d)
    if (slack0_[d] != dist[g_.tail(d)] + cost0(d) - dist[g_.head(d)]) bad("slack of dart " + std::to_string(d));

  // Canonical core.
  std::vector<char> core(ne, 1);
  for (DartId d : pred_)
    if (d != kNone) core[edge_of(d)] = 0;
  std::vector<int> deg(nf, 0);
  for (EdgeId e = 0; e < ne; ++e)
    if (core[e]) {
      ++deg[g_.left_face(2 * e)];
      ++deg[g_.face_of(2 * e)];
    }
  std::vector<FaceId> queue;
  for (FaceId p = 0; p < nf; ++p)
    if (deg[p] == 1 && p != q_ && p != r_) queue.push_back(p);
  while (!queue.empty()) {
    FaceId p = queue.back();
    queue.pop_back();
    if (deg[p] != 1) continue;
    for (DartId d : g_.face_darts(p)) {
      if (!core[edge_of(d)]) continue;
      core[edge_of(d)] = 0;
      deg[p] = 0;
      FaceId o = g_.left_face(d);
      if (--deg[o] == 1 && o != q_ && o != r_) queue.push_back(o);
      break;
    }
  }
  const bool lazy = piq_ && w_ == kNone;
  std::vector<char> ours(ne, 0), onpiq(nf, 0);
  for (EdgeId e = 0; e < ne; ++e) ours[e] = pid_[e] >= 0;
  // A lazy q-path is the hair route from q into the rest of the cut graph.
  FaceId w = w_;
  if (lazy) {
    w = q_;
    do {
      if (succ_[w] == kNone) bad("lazy q has no successor");
      w = g_.face_of(succ_[w]);
    } while (vstate_[w] == kHair);
  }
  if (piq_) {
    int steps = 0;
    for (FaceId x = q_; x != w; x = g_.face_of(succ_[x])) {
      if (++steps > nf || succ_[x] == kNone) bad("q-path does not reach its end");
      onpiq[x] = 1;
      ours[edge_of(succ_[x])] = 1;
    }
  }
  for (EdgeId e = 0; e < ne; ++e) {
    if (ours[e] && !core[e]) bad("edge " + std::to_string(e) + " is not in the core");
    if (core[e] && !ours[e]) bad("core edge " + std::to_string(e) + " is missing");
  }
  for (FaceId p = 0; p < nf; ++p) {
    bool cut = (deg[p] > 0 && deg[p] != 2) || p == q_ || p == r_;
    bool in_core = deg[p] > 0 || p == q_ || p == r_;
    if (lazy && p == w) continue;
    if (onpiq[p] && p != q_) {
      if (vstate_[p] != kHair) bad("q-path vertex has a state");
    } else if (!in_core) {
      if (vstate_[p] != kHair) bad("hair vertex has a state");
    } else if (cut || p == w_) {
      if (vstate_[p] != kCut) bad("cut vertex " + std::to_string(p) + " not marked");
    } else if (vstate_[p] < 0) {
      bad("path vertex " + std::to_string(p) + " not marked");
    }
    bool want = mark_ && onpiq[p];
    if (visited_[p] != want) bad("visited flag of " + std::to_string(p));
  }
  // Successors.
  std::vector<char> ok(nf, 0);
  for (FaceId p = 0; p < nf; ++p) {
    if (vstate_[p] == kHair && !onpiq[p]) continue;
    ok[p] = 1;
    if (p == r_) {
      if (succ_[p] != kNone) bad("r has a successor");
      continue;
    }
    if (onpiq[p]) continue;
    if (succ_[p] == kNone || g_.left_face(succ_[p]) != p) bad("successor does not leave its vertex");
    if (!lazy || p != q_) {
      int k = pid_[edge_of(succ_[p])];
      if (k < 0 || (vstate_[p] >= 0 && k != vstate_[p])) bad("core successor off its path");
    }
  }
  for (FaceId p = 0; p < nf; ++p) {
    std::vector<FaceId> trail;
    FaceId x = p;
    while (!ok[x]) {
      if (succ_[x] == kNone || g_.left_face(succ_[x]) != x || ok[x] == 2) bad("hair does not drain into the core");
      ok[x] = 2;
      trail.push_back(x);
      x = g_.face_of(succ_[x]);
    }
    for (FaceId t : trail) ok[t] = 1;
  }
  // Path bookkeeping and signatures.
  std::vector<int64_t> pot = potentials(root);
  for (size_t k = 0; k < paths_.size(); ++k) {
    const CutPath& p = paths_[k];
    if (!p.alive) continue;
    int len = 0;
    FaceId x = p.a;
    for (EdgeId e = p.first; e != kNone; e = nxt_[e]) {
      DartId d = fwd_[e];
      if (pid_[e] != static_cast<int>(k) || g_.left_face(d) != x) bad("broken path list");
      auto row = costs_.row(d);
      size_t tx = static_cast<size_t>(g_.tail(d)) * h_, hy = static_cast<size_t>(g_.head(d)) * h_;
      for (int i = 0; i < h_; ++i)
        if (p.sig[i] != pot[tx + i] + row[1 + i] - pot[hy + i]) bad("signature of path " + std::to_string(k));
      x = g_.face_of(d);
      ++len;
    }
    if (x != p.b || len != p.len) bad("path end or length");
  }
  if (!mark_ || lazy || !vu_in) return;
  // Active cut darts.
  std::vector<int> want;
  for (size_t k = 0; k < paths_.size(); ++k) {
    if (!paths_[k].alive) continue;
    for (int t : {2 * static_cast<int>(k), 2 * static_cast<int>(k) + 1}) {
      int act = -1;
      for_darts(t, [&](DartId d) {
        int a = !red[g_.tail(d)] && red[g_.head(d)];
        if (act >= 0 && act != a) bad("cut dart partly active");
        act = a;
        return false;
      });
      if (act == 1) want.push_back(t);
    }
  }
  if (piq_) {
    for_darts(kPiqFwd, [&](DartId d) {
      if (red[g_.tail(d)] || !red[g_.head(d)]) bad("q-path dart inactive");
      return false;
    });
    want.push_back(kPiqFwd);
  }
  std::vector<int> have;
  for (const Entry& e : registry_) have.push_back(e.tag);
  std::sort(want.begin(), want.end());
  std::sort(have.begin(), have.end());
  if (want != have) bad("registry differs from the active cut darts");
}

void LinearEngine::prime() {
  if (costs_.variant() != Variant::Modified) fail(ErrorCode::VariantMismatch, "linear engine needs the modified variant");
  const int n = g_.num_vertices();
  r_ = s_.r;
  scratch_.assign(g_.num_faces(), kNone);
  stamp_.assign(g_.num_faces(), 0);
  VertexId src = g_.tail(s_.boundary.front());
  HolyTree t = holiest_tree_small_int(g_, costs_, src);
  pred_ = t.pred;
  slack0_.resize(g_.num_darts());
  for (DartId d = 0; d < g_.num_darts(); ++d)
    slack0_[d] = t.dist0(g_.tail(d)) + costs_.c0(d) - t.dist0(g_.head(d));
  if (listener_) {
    std::vector<int64_t> d0(n);
    for (VertexId x = 0; x < n; ++x) d0[x] = t.dist0(x);
    listener_->on_init(src, d0, pred_);
  }
}

std::vector<PivotEvent> LinearEngine::run() {
  if (s_.boundary.empty()) return {};
  prime();
  for (size_t i = 0; i < s_.boundary.size(); ++i) iteration(static_cast<int>(i) + 1, s_.boundary[i]);
  return std::move(events_);
}

CutGraphSummary LinearEngine::inspect() {
  CutGraphSummary out;
  auto it = std::find_if(s_.boundary.begin(), s_.boundary.end(), [&](DartId d) { return g_.tail(d) != g_.head(d); });
  if (it == s_.boundary.end()) return out;
  prime();
  q_ = g_.face_of(rev(*it));
  init_structures(g_.tail(*it));
  for (const CutPath& p : paths_) out.cut_paths += p.alive;
  out.q_path = piq_;
  std::vector<char> onpiq(g_.num_faces(), 0);
  if (piq_)
    for (FaceId x = q_; x != w_; x = g_.face_of(succ_[x])) onpiq[x] = 1;
  for (FaceId p = 0; p < g_.num_faces(); ++p) {
    out.cut_vertices += vstate_[p] == kCut;
    out.hair_faces += vstate_[p] == kHair && !onpiq[p];
  }
  return out;
}

}  // namespace

CutGraphSummary initial_cut_graph(const MsspSetup& setup) {
  return LinearEngine(setup, nullptr, {}, nullptr).inspect();
}

std::vector<PivotEvent> mssp_linear(const MsspSetup& setup, MsspListener* listener, const LinearOptions& opts,
                                    LinearStats* stats) {
  return LinearEngine(setup, listener, opts, stats).run();
}

std::vector<PivotEvent> mssp_linear(const EmbeddedGraph& g, std::span<const int64_t> c, FaceId r) {
  return mssp_linear(prepare_mssp(g, c, r, Variant::Modified));
}

}  // namespace surf
