#include "surf/mssp_ref.hpp"

#include <algorithm>
#include <deque>

#include "surf/errors.hpp"
#include "surf/sssp.hpp"

namespace surf {

namespace {

using Row = std::span<const int64_t>;

bool lex_less(Row a, Row b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

class RefEngine {
 public:
  RefEngine(const MsspSetup& s, MsspListener* l, RefObserver* o)
      : s_(s), g_(*s.g), costs_(s.costs), dim_(costs_.dim()), listener_(l), observer_(o) {}

  std::vector<PivotEvent> run() {
    const int n = g_.num_vertices();
    red_.assign(n, 0);
    dist_.assign(static_cast<size_t>(n) * dim_, 0);
    lambda_.assign(dim_, 0);
    if (s_.boundary.empty()) return {};
    VertexId src = g_.tail(s_.boundary.front());
    HolyTree t = s_.variant == Variant::Standard ? holiest_sssp(g_, costs_, src)
                                                 : holiest_tree_small_int(g_, costs_, src);
    pred_ = t.pred;
    dist_ = t.dist;
    if (listener_) {
      std::vector<int64_t> d0(n);
      for (VertexId x = 0; x < n; ++x) d0[x] = t.dist0(x);
      listener_->on_init(src, d0, pred_);
    }
    for (size_t i = 0; i < s_.boundary.size(); ++i) iteration(static_cast<int>(i) + 1, s_.boundary[i]);
    return std::move(events_);
  }

 private:
  Row cost(DartId d) const { return d == vu_ ? Row(lambda_) : costs_.row(d); }
  Row dist(VertexId x) const { return Row(dist_.data() + static_cast<size_t>(x) * dim_, dim_); }

  void recompute() {
    const int n = g_.num_vertices();
    std::vector<std::vector<DartId>> kids(n);
    for (VertexId x = 0; x < n; ++x)
      if (pred_[x] != kNone) kids[g_.tail(pred_[x])].push_back(pred_[x]);
    std::fill(red_.begin(), red_.end(), 0);
    std::fill(dist_.begin() + static_cast<size_t>(root_) * dim_, dist_.begin() + static_cast<size_t>(root_ + 1) * dim_, 0);
    std::vector<VertexId> stack{root_};
    int seen = 0;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      ++seen;
      for (DartId d : kids[x]) {
        VertexId y = g_.head(d);
        Row dx = dist(x), cd = cost(d);
        int64_t* dy = dist_.data() + static_cast<size_t>(y) * dim_;
        for (int k = 0; k < dim_; ++k) dy[k] = dx[k] + cd[k];
        red_[y] = red_[x] || d == vu_;
        stack.push_back(y);
      }
    }
    if (seen != n) fail(ErrorCode::InternalInvariantViolation, "pred is not a spanning arborescence");
  }

  void collect_active() {
    active_.clear();
    key_.clear();
    for (DartId d = 0; d < g_.num_darts(); ++d) {
      VertexId x = g_.tail(d), y = g_.head(d);
      if (red_[x] || !red_[y] || pred_[y] == d) continue;
      active_.push_back(d);
      Row dx = dist(x), dy = dist(y), cd = cost(d);
      for (int k = 0; k < dim_; ++k) key_.push_back(dx[k] + cd[k] - dy[k] + lambda_[k]);
    }
  }

  RefState snapshot(int iter) const {
    RefState st;
    st.iter = iter;
    st.u = u_;
    st.v = root_;
    st.vu = vu_;
    st.dim = dim_;
    st.pred = pred_;
    st.dist = dist_;
    st.lambda = lambda_;
    st.red = red_;
    st.active = active_;
    st.key = key_;
    return st;
  }

  std::vector<int64_t> slack0() const {
    std::vector<int64_t> sl(g_.num_darts());
    for (DartId d = 0; d < g_.num_darts(); ++d) sl[d] = dist(g_.tail(d))[0] + costs_.c0(d) - dist(g_.head(d))[0];
    return sl;
  }

  void rounds_until(int iter, int64_t from, int64_t to) {
    if (!listener_) return;
    DartId param = pred_[u_] == vu_ ? vu_ : kNone;
    for (int64_t k = from; k < to; ++k) listener_->on_round_complete(iter, active_, param);
  }

  void iteration(int iter, DartId uv) {
    u_ = g_.tail(uv);
    VertexId v = g_.head(uv);
    if (u_ == v) {  // a loop leaves the source and tree where they are
      if (listener_) listener_->on_iteration_end(iter, slack0());
      return;
    }
    // Distances are from u_ with real costs here.
    vu_ = rev(uv);
    Row dv = dist(v);
    for (int k = 0; k < dim_; ++k) lambda_[k] = -dv[k];
    int64_t d0 = dv[0];
    PivotEvent sp{iter, PivotKind::Special, vu_, pred_[v], -d0};
    pred_[v] = kNone;
    pred_[u_] = vu_;
    root_ = v;
    events_.push_back(sp);
    if (listener_) {
      listener_->on_special(iter, uv, d0);
      listener_->on_pivot(sp);
    }
    Row target = costs_.row(vu_);
    recompute();
    collect_active();
    if (observer_) observer_->after_special(snapshot(iter));
    for (;;) {
      int best = -1;
      bool tie = false;
      for (size_t a = 0; a < active_.size(); ++a) {
        Row ka(key_.data() + a * dim_, dim_);
        if (best < 0) {
          best = static_cast<int>(a);
          continue;
        }
        Row kb(key_.data() + static_cast<size_t>(best) * dim_, dim_);
        if (lex_less(ka, kb)) {
          best = static_cast<int>(a);
          tie = false;
        } else if (std::equal(ka.begin(), ka.end(), kb.begin())) {
          tie = true;
        }
      }
      Row kbest = best < 0 ? Row() : Row(key_.data() + static_cast<size_t>(best) * dim_, dim_);
      if (best < 0 || !lex_less(kbest, target)) {
        rounds_until(iter, lambda_[0], target[0]);
        break;
      }
      if (tie) fail(ErrorCode::TieDetected, "iteration " + std::to_string(iter));
      if (lex_less(kbest, lambda_)) fail(ErrorCode::InternalInvariantViolation, "lambda decreased");
      DartId d = active_[best];
      if (observer_) observer_->before_pivot(snapshot(iter), d);
      rounds_until(iter, lambda_[0], kbest[0]);
      VertexId y = g_.head(d);
      PivotEvent ev{iter, PivotKind::Regular, d, pred_[y], kbest[0]};
      std::copy(kbest.begin(), kbest.end(), lambda_.begin());
      pred_[y] = d;
      events_.push_back(ev);
      if (listener_) listener_->on_pivot(ev);
      recompute();
      collect_active();
    }
    std::copy(target.begin(), target.end(), lambda_.begin());
    recompute();
    active_.clear();
    key_.clear();
    if (observer_) observer_->after_iteration(snapshot(iter));
    vu_ = kNone;
    if (listener_) listener_->on_iteration_end(iter, slack0());
  }

  const MsspSetup& s_;
  const EmbeddedGraph& g_;
  const CostTable& costs_;
  int dim_;
  MsspListener* listener_;
  RefObserver* observer_;
  std::vector<DartId> pred_;
  std::vector<int64_t> dist_;
  std::vector<int64_t> lambda_;
  std::vector<char> red_;
  std::vector<DartId> active_;
  std::vector<int64_t> key_;
  std::vector<PivotEvent> events_;
  VertexId root_ = 0, u_ = kNone;
  DartId vu_ = kNone;
};

}  // namespace

std::vector<PivotEvent> mssp_reference(const MsspSetup& setup, MsspListener* listener, RefObserver* observer) {
  return RefEngine(setup, listener, observer).run();
}

std::vector<PivotEvent> mssp_reference(const EmbeddedGraph& g, std::span<const int64_t> c, FaceId r,
                                       Variant variant) {
  MsspSetup s = prepare_mssp(g, c, r, variant);
  return mssp_reference(s);
}

std::vector<DartId> active_darts(const EmbeddedGraph& g, std::span<const char> red) {
  std::vector<DartId> out;
  for (DartId d = 0; d < g.num_darts(); ++d)
    if (!red[g.tail(d)] && red[g.head(d)]) out.push_back(d);
  return out;
}

std::vector<DartId> cotree_walk_to_root(const EmbeddedGraph& g, std::span<const DartId> pred, FaceId q, FaceId r) {
  std::vector<char> tree_edge(g.num_edges(), 0);
  for (DartId d : pred)
    if (d != kNone) tree_edge[edge_of(d)] = 1;
  // BFS over the dual from r using edges outside the tree; toward[p] leads from p toward r.
  std::vector<DartId> toward(g.num_faces(), kNone);
  std::vector<char> seen(g.num_faces(), 0);
  std::deque<FaceId> queue{r};
  seen[r] = 1;
  while (!queue.empty()) {
    FaceId p = queue.front();
    queue.pop_front();
    for (DartId d : g.face_darts(p)) {
      if (tree_edge[edge_of(d)]) continue;
      FaceId o = g.left_face(d);
      if (seen[o]) continue;
      seen[o] = 1;
      toward[o] = d;  // dual of d runs from o (left) to p (right)
      queue.push_back(o);
    }
  }
  std::vector<DartId> walk;
  for (FaceId p = q; p != r; p = g.face_of(toward[p])) {
    if (toward[p] == kNone) fail(ErrorCode::InternalInvariantViolation, "cotree does not reach r");
    walk.push_back(toward[p]);
  }
  return walk;
}

DartId leafmost_planar_pivot(const EmbeddedGraph& g, const CostTable& costs, const RefState& s, FaceId r) {
  if (g.genus() != 0) fail(ErrorCode::NotPlanar);
  if (costs.variant() != Variant::Modified) fail(ErrorCode::VariantMismatch, "leafmost rule needs the modified variant");
  FaceId q = g.face_of(s.vu);
  std::vector<DartId> walk = cotree_walk_to_root(g, s.pred, q, r);
  DartId best = kNone;
  int64_t best_key = 0;
  for (DartId d : walk) {
    auto it = std::find(s.active.begin(), s.active.end(), d);
    if (it == s.active.end()) continue;
    int64_t k = s.key[static_cast<size_t>(it - s.active.begin()) * s.dim];
    if (best == kNone || k < best_key) {
      best = d;
      best_key = k;
    }
  }
  return best;
}

}  // namespace surf
