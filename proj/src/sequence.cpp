#include "tailmoves/sequence.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "tailmoves/errors.hpp"
#include "tailmoves/rewrite.hpp"

namespace tailmoves {

std::vector<Move> MoveSequence::moves() const {
  std::vector<Move> out;
  for (const auto& s : steps) out.push_back(s.move);
  return out;
}

bool audit(const MoveSequence& seq) {
  if (seq.intermediates.size() != seq.steps.size()) return false;
  Network cur = seq.source;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    auto next = try_apply(cur, seq.steps[i].move);
    if (!next) return false;
    if (seq.steps[i].move.kind == MoveKind::Tail && !can_apply(cur, seq.steps[i].move))
      return false;
    if (next->edges() != seq.intermediates[i].edges()) return false;
    cur = *std::move(next);
  }
  return canonical_code(cur) == seq.target;
}

long tail_bound(int taxa, int k) { return 3L * (taxa + 2L * k); }
long rspr_bound(int taxa, int k) { return 2L * taxa + 3L * k - 1; }
long decomposition_bound(int taxa, int k) { return taxa + 3L * k - 1; }
long tail1_bound(int taxa, int k) {
  return tail_bound(taxa, k) * std::max(1L, decomposition_bound(taxa, k));
}

namespace {

enum class Mode { Tail, RSPR };

struct Side {
  Network net;
  std::vector<NodeId> map;  // image on the other side, -1 outside the frontier
  std::vector<SequenceStep> steps;

  bool in(NodeId v) const { return map[v] >= 0; }
  int outside() const { return static_cast<int>(std::count(map.begin(), map.end(), -1)); }

  bool is_lowest(NodeId v) const {
    if (in(v)) return false;
    for (NodeId c : net.children(v))
      if (!in(c)) return false;
    return true;
  }

  std::vector<NodeId> lowest(bool reticulations) const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < net.node_count(); ++v)
      if (is_lowest(v) && net.is_reticulation(v) == reticulations) out.push_back(v);
    return out;
  }

  std::vector<NodeId> parents_outside(NodeId x) const {
    std::vector<NodeId> out;
    for (NodeId p : net.parents(x))
      if (!in(p)) out.push_back(p);
    return out;
  }
};

// Children and roles of frontier nodes are untouched by the moves.
bool frontier_intact(const Network& before, const Network& after, const Side& s) {
  for (NodeId v = 0; v < before.node_count(); ++v) {
    if (!s.in(v)) continue;
    if (before.role(v) != after.role(v)) return false;
    auto a = before.children(v), b = after.children(v);
    if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) return false;
  }
  return true;
}

class GreenLine {
 public:
  GreenLine(const Network& a, const Network& b, Mode mode)
      : a_{a, std::vector<NodeId>(a.node_count(), -1), {}},
        b_{b, std::vector<NodeId>(b.node_count(), -1), {}},
        mode_(mode) {
    for (NodeId v : a.leaves()) add(a_, b_, v, *b.leaf_by_label(a.label(v)));
  }

  MoveSequence run(const Network& from, const Network& to) {
    for (;;) {
      while (grow()) {
      }
      check_frontier();
      if (a_.outside() <= 1) break;
      if (!b_.lowest(true).empty())
        case1(a_, b_, "");
      else if (!a_.lowest(true).empty())
        case1(b_, a_, "2:");
      else
        case3();
      check_frontier();
    }
    if (a_.outside() == 1) add(a_, b_, a_.net.root(), b_.net.root());
    check_frontier();

    MoveSequence seq{from, a_.steps, {}, canonical_code(to)};
    std::vector<Move> b_moves;
    for (const auto& s : b_.steps) b_moves.push_back(s.move);
    auto back = reverse_sequence(to, b_moves, a_.net);
    for (std::size_t i = 0; i < back.size(); ++i)
      seq.steps.push_back({back[i], b_.steps[back.size() - 1 - i].tag});
    Network cur = from;
    for (const auto& s : seq.steps) {
      cur = apply(cur, s.move);
      seq.intermediates.push_back(cur);
    }
    if (canonical_code(cur) != seq.target)
      throw std::logic_error("green line endpoint is not isomorphic to the target");
    return seq;
  }

 private:
  static void add(Side& s, Side& o, NodeId v, NodeId w) {
    s.map[v] = w;
    o.map[w] = v;
  }

  static void move(Side& s, const Move& m, const std::string& tag) {
    s.net = apply(s.net, m);
    s.steps.push_back({m, tag});
  }

  // Zero-cost extensions of the frontier. Returns true if one was made.
  bool grow() {
    for (auto [act, oth] : {std::pair<Side*, Side*>{&a_, &b_}, {&b_, &a_}}) {
      for (NodeId r : oth->lowest(true)) {
        const NodeId x = oth->map[oth->net.child(r)];
        for (NodeId z : act->parents_outside(x))
          if (act->net.is_reticulation(z)) {
            add(*act, *oth, z, r);
            return true;
          }
      }
    }
    for (NodeId t : b_.lowest(false)) {
      if (!b_.net.is_tree_node(t)) continue;
      const NodeId x = b_.map[b_.net.children(t)[0]], y = b_.map[b_.net.children(t)[1]];
      for (NodeId p : a_.parents_outside(x))
        if (a_.net.has_edge(p, y)) {
          add(a_, b_, p, t);
          return true;
        }
    }
    return false;
  }

  void check_frontier() const {
    for (NodeId v = 0; v < a_.net.node_count(); ++v) {
      if (!a_.in(v)) continue;
      const NodeId w = a_.map[v];
      bool ok = b_.map[w] == v && a_.net.role(v) == b_.net.role(w);
      if (ok && a_.net.is_leaf(v)) ok = a_.net.label(v) == b_.net.label(w);
      std::vector<NodeId> ca, cb(b_.net.children(w).begin(), b_.net.children(w).end());
      for (NodeId c : a_.net.children(v)) ca.push_back(a_.in(c) ? a_.map[c] : -1);
      std::sort(ca.begin(), ca.end());
      std::sort(cb.begin(), cb.end());
      ok = ok && ca == cb;
      if (!ok)
        throw std::logic_error("frontier isomorphism broken at node " + std::to_string(v));
    }
  }

  static void budget(const Side& s, std::size_t before, int limit, const char* tag) {
    if (static_cast<int>(s.steps.size() - before) > limit)
      throw std::logic_error(std::string("case ") + tag + " exceeded its move budget");
  }

  // A lowest reticulation r of `oth` outside the frontier is matched by
  // giving the corresponding node of `act` a reticulation parent.
  void case1(Side& act, Side& oth, const std::string& prefix) {
    const std::size_t before = act.steps.size();
    const NodeId r = oth.lowest(true).front();
    const NodeId x = oth.map[oth.net.child(r)];
    const auto zs = act.parents_outside(x);
    const NodeId z = zs.front();
    if (!act.net.is_tree_node(z)) throw std::logic_error("case 1 parent is not a tree node");

    if (mode_ == Mode::RSPR) {
      for (NodeId v = 0; v < act.net.node_count(); ++v) {
        if (act.in(v) || !act.net.is_reticulation(v)) continue;
        for (NodeId p : act.net.parents(v)) {
          const Move m{MoveKind::Head, {p, v}, {z, x}};
          if (!can_apply(act.net, m)) continue;
          move(act, m, prefix + "1b.head");
          add(act, oth, v, r);
          budget(act, before, 1, "1b.head");
          return;
        }
      }
    }

    if (is_movable(act.net, {z, x})) {
      attach_reticulation(act, z, x, prefix + "1b.i");
      fix_last(act, oth, x, r);
      budget(act, before, 2, "1b.i");
      return;
    }
    const NodeId c = act.net.parent(z);
    const NodeId d = act.net.other_child(z, x);
    const NodeId b = act.net.parent(c);
    if (b != act.net.root()) {
      const NodeId a = act.net.parents(b).front();
      move(act, {MoveKind::Tail, {c, d}, {a, b}}, prefix + "1b.ii.A");
      attach_reticulation(act, z, x, prefix + "1b.ii.A");
      fix_last(act, oth, x, r);
      budget(act, before, 3, "1b.ii.A");
      return;
    }
    simulate_head(act, z, x, c, d, prefix + "1b.ii.B");
    fix_last(act, oth, x, r);
    budget(act, before, 3, "1b.ii.B");
  }

  // Maps the reticulation parent of x outside the frontier to r.
  static void fix_last(Side& act, Side& oth, NodeId x, NodeId r) {
    for (NodeId p : act.net.parents(x))
      if (act.net.is_reticulation(p) && !act.in(p)) {
        add(act, oth, p, r);
        return;
      }
    throw std::logic_error("case 1 left x without a reticulation parent");
  }

  // With (z,x) movable: bring a reticulation outside the frontier directly
  // above x using at most two tail moves.
  static void attach_reticulation(Side& act, NodeId z, NodeId x, const std::string& tag) {
    NodeId u = -1;
    for (NodeId v = 0; v < act.net.node_count(); ++v)
      if (!act.in(v) && act.net.is_reticulation(v)) {
        u = v;
        break;
      }
    if (u < 0) throw std::logic_error("no reticulation outside the frontier");
    const NodeId v = act.net.child(u);
    if (z != v) move(act, {MoveKind::Tail, {z, x}, {u, v}}, tag);
    const NodeId c = act.net.other_child(z, x);
    const NodeId w = act.net.parents(u).front();
    move(act, {MoveKind::Tail, {z, c}, {w, u}}, tag);
  }

  // Shortest tail-move sequence, up to `depth` moves, after which the frontier
  // is untouched and x has a reticulation parent outside it.
  static std::optional<std::vector<Move>> search_attachment(const Side& act, NodeId x,
                                                            int depth) {
    struct State {
      Network net;
      std::vector<Move> path;
    };
    std::set<std::vector<Edge>> seen{act.net.edges()};
    std::vector<State> layer{{act.net, {}}};
    for (int d = 0; d < depth; ++d) {
      std::vector<State> next;
      for (const State& s : layer)
        for (const Move& m : enumerate_moves(s.net, MoveClass::Tail)) {
          Network n = apply(s.net, m);
          if (!seen.insert(n.edges()).second) continue;
          auto path = s.path;
          path.push_back(m);
          if (frontier_intact(act.net, n, act))
            for (NodeId p : n.parents(x))
              if (n.is_reticulation(p) && !act.in(p)) return path;
          next.push_back({std::move(n), std::move(path)});
        }
      layer = std::move(next);
    }
    return std::nullopt;
  }

  // Triangle c,z,d directly below the root child c: three tail moves with the
  // effect of moving the head of (c,d) onto (z,x).
  static void simulate_head(Side& act, NodeId z, NodeId x, NodeId c, NodeId d,
                            const std::string& tag) {
    const Network& net = act.net;
    const NodeId e = net.child(d);
    std::vector<std::vector<Move>> cands;
    auto t = [](NodeId a, NodeId b, NodeId p, NodeId q) {
      return Move{MoveKind::Tail, {a, b}, {p, q}};
    };
    // When one of x, e is a child of the other a single move suffices.
    if (net.is_tree_node(x) && net.has_edge(x, e))
      cands.push_back({t(x, net.other_child(x, e), d, e)});
    if (net.is_tree_node(e) && net.has_edge(e, x))
      cands.push_back({t(e, net.other_child(e, x), z, x)});
    if (net.is_tree_node(x))
      for (int i = 0; i < 2; ++i) {
        const NodeId s = net.children(x)[i], o = net.children(x)[1 - i];
        cands.push_back({t(x, s, d, e), t(x, e, z, o), t(x, o, d, s)});
      }
    if (net.is_tree_node(e))
      for (int i = 0; i < 2; ++i) {
        const NodeId s = net.children(e)[i], o = net.children(e)[1 - i];
        cands.push_back({t(e, s, z, x), t(e, x, d, o), t(e, o, z, s)});
      }
    (void)c;
    for (const auto& seq : cands) {
      auto end = replay_tail(net, seq);
      if (!end || !frontier_intact(net, *end, act)) continue;
      bool attached = false;
      for (NodeId p : end->parents(x))
        if (end->is_reticulation(p) && !act.in(p)) attached = true;
      if (!attached) continue;
      for (const Move& m : seq) move(act, m, tag);
      return;
    }
    if (net.is_leaf(x) && net.is_leaf(e))
      throw ExceptionalNetwork("two leaves, one reticulation and no valid tail move");
    if (auto seq = search_attachment(act, x, 3)) {
      for (const Move& m : *seq) move(act, m, tag + ".search");
      return;
    }
    throw std::logic_error("no three-move head simulation found");
  }

  void case3() {
    const std::size_t before = a_.steps.size();
    const NodeId t = b_.lowest(false).front();
    const NodeId x = b_.map[b_.net.children(t)[0]], y = b_.map[b_.net.children(t)[1]];
    const NodeId zx = a_.parents_outside(x).front(), zy = a_.parents_outside(y).front();
    auto finish = [&](NodeId parent, const char* tag, int limit) {
      add(a_, b_, parent, t);
      budget(a_, before, limit, tag);
    };
    if (is_movable(a_.net, {zx, x})) {
      move(a_, {MoveKind::Tail, {zx, x}, {zy, y}}, "3b.i");
      return finish(zx, "3b.i", 1);
    }
    if (is_movable(a_.net, {zy, y})) {
      move(a_, {MoveKind::Tail, {zy, y}, {zx, x}}, "3b.ii");
      return finish(zy, "3b.ii", 1);
    }
    const NodeId root_child = a_.net.child(a_.net.root());
    for (auto [z, w, zo, wo] : {std::tuple{zx, x, zy, y}, std::tuple{zy, y, zx, x}}) {
      const NodeId c = a_.net.parent(z);
      if (c == root_child) continue;
      const NodeId d = a_.net.other_child(z, w);
      const NodeId b = a_.net.parent(c);
      const NodeId a = a_.net.parents(b).front();
      move(a_, {MoveKind::Tail, {c, d}, {a, b}}, "3b.iii");
      move(a_, {MoveKind::Tail, {z, w}, {zo, wo}}, "3b.iii");
      return finish(z, "3b.iii", 2);
    }
    throw std::logic_error("case 3: both triangles hang from the root child");
  }

  Side a_, b_;
  Mode mode_;
};

void check_tier(const Network& a, const Network& b) {
  if (a.taxa() != b.taxa()) throw TierMismatch("the networks have different taxa");
  if (a.reticulation_count() != b.reticulation_count())
    throw TierMismatch("reticulation numbers differ: " +
                       std::to_string(a.reticulation_count()) + " and " +
                       std::to_string(b.reticulation_count()));
}

}  // namespace

MoveSequence green_line_tail(const Network& from, const Network& to) {
  check_tier(from, to);
  if (isomorphic(from, to)) return {from, {}, {}, canonical_code(to)};
  if (is_exceptional(from) || is_exceptional(to))
    throw ExceptionalNetwork("two leaves, one reticulation and no valid tail move");
  return GreenLine(from, to, Mode::Tail).run(from, to);
}

MoveSequence green_line_rspr(const Network& from, const Network& to) {
  check_tier(from, to);
  if (isomorphic(from, to)) return {from, {}, {}, canonical_code(to)};
  return GreenLine(from, to, Mode::RSPR).run(from, to);
}

MoveSequence tail1_sequence(const Network& from, const Network& to) {
  MoveSequence coarse = green_line_tail(from, to);
  MoveSequence fine{from, {}, {}, coarse.target};
  Network cur = from;
  for (const auto& step : coarse.steps) {
    for (const Move& m : decompose_tail_move(cur, step.move)) {
      cur = apply(cur, m);
      fine.steps.push_back({m, step.tag});
      fine.intermediates.push_back(cur);
    }
  }
  return fine;
}

}  // namespace tailmoves
