#include "tailmoves/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "tailmoves/canonical.hpp"
#include "tailmoves/errors.hpp"

namespace tailmoves {

namespace {

Move tail(NodeId a, NodeId b, NodeId c, NodeId d) {
  return {MoveKind::Tail, {a, b}, {c, d}};
}

Move relabel(const Move& m, const std::vector<NodeId>& map) {
  return {m.kind, {map[m.moving.tail], map[m.moving.head]},
          {map[m.target.tail], map[m.target.head]}};
}

Edge root_edge(const Network& net) { return {net.root(), net.child(net.root())}; }

// Movable edges (s,r) in id order, optionally preferring those whose tail is
// in `first`.
std::vector<Edge> extra_tails(const Network& net, const std::vector<NodeId>& first = {}) {
  std::vector<Edge> preferred, rest;
  for (const Edge& e : net.edges()) {
    if (!is_movable(net, e)) continue;
    if (std::find(first.begin(), first.end(), e.tail) != first.end())
      preferred.push_back(e);
    else
      rest.push_back(e);
  }
  preferred.insert(preferred.end(), rest.begin(), rest.end());
  return preferred;
}

// Breadth-first search over tail moves for a network with the given code.
std::optional<std::vector<Move>> search_tail(const Network& net, const CanonicalCode& goal,
                                             int max_depth, std::size_t max_states) {
  struct State {
    Network net;
    int parent;
    Move move;
    int depth;
  };
  std::vector<State> states{{net, -1, {}, 0}};
  std::unordered_map<CanonicalCode, int, CanonicalCodeHash> seen{{canonical_code(net), 0}};
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (seen.size() > max_states) break;
    if (canonical_code(states[i].net) == goal) {
      std::vector<Move> path;
      for (int j = static_cast<int>(i); states[j].parent >= 0; j = states[j].parent)
        path.push_back(states[j].move);
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (states[i].depth == max_depth) continue;
    const Network cur = states[i].net;
    const int depth = states[i].depth;
    for (const Move& m : enumerate_moves(cur, MoveClass::Tail)) {
      Network next = apply(cur, m);
      auto code = canonical_code(next);
      if (seen.emplace(code, static_cast<int>(states.size())).second)
        states.push_back({std::move(next), static_cast<int>(i), m, depth + 1});
    }
  }
  return std::nullopt;
}

struct Rewriter {
  const Network& net;
  Network image;  // net after the head move
  CanonicalCode goal;

  bool reaches_goal(const std::vector<Move>& seq) const {
    auto end = replay_tail(net, seq);
    return end && canonical_code(*end) == goal;
  }

  // seq is a sequence on the image; its reversal runs on net.
  std::optional<std::vector<Move>> reversed(const std::vector<Move>& seq) const {
    auto end = replay_tail(image, seq);
    if (!end || !isomorphic(*end, net)) return std::nullopt;
    auto back = reverse_sequence(image, seq, net);
    if (!reaches_goal(back)) return std::nullopt;
    return back;
  }

  std::optional<std::vector<Move>> first_valid(
      const std::vector<std::vector<Move>>& candidates) const {
    for (const auto& seq : candidates)
      if (reaches_goal(seq)) return seq;
    return std::nullopt;
  }
};

// Case b with x an LCA of x and y, built on network g. Returns candidates and
// the subcase tag.
std::vector<std::pair<std::string, std::vector<Move>>> case_b2(const Network& g, NodeId u,
                                                               NodeId v, NodeId x, NodeId y,
                                                               NodeId z) {
  std::vector<std::pair<std::string, std::vector<Move>>> out;
  if (!g.is_tree_node(x)) return out;
  const NodeId p = g.parent(x);
  const NodeId t = g.other_child(x, v);
  if (is_movable(g, {x, v})) {
    out.push_back({"b.2.i", {tail(x, v, y, z), tail(x, z, p, t)}});
    return out;
  }
  if (!g.is_tree_node(p)) return out;
  const Edge re = root_edge(g);
  if (g.parent(p) != g.root()) {
    const NodeId q = g.parent(p);
    out.push_back({"b.2.ii", {tail(p, t, re.tail, re.head), tail(x, v, y, z),
                              tail(x, z, q, t), tail(p, t, q, x)}});
  }
  const auto lcas = lca_set(g, u, y);
  for (const Edge& e : extra_tails(g, lcas)) {
    if (g.reaches(e.tail, x)) continue;
    const NodeId ps = g.parent(e.tail), os = g.other_child(e.tail, e.head);
    out.push_back({"b.2.ii", {tail(e.tail, e.head, x, t), tail(x, v, y, z),
                              tail(x, z, p, e.tail), tail(e.tail, e.head, ps, os)}});
  }
  return out;
}

// Case d on network g with roles (U,V,X,Z,Y,W): the head move (U,V)->(Z,W).
std::vector<std::pair<std::string, std::vector<Move>>> case_d(const Network& g, NodeId U,
                                                              NodeId V, NodeId Z, NodeId Y) {
  std::vector<std::pair<std::string, std::vector<Move>>> out;
  const Edge re = root_edge(g);
  if (g.is_tree_node(U)) {
    const NodeId p = g.parent(U);
    const NodeId t = g.other_child(U, V);
    if (is_movable(g, {U, V})) {
      out.push_back({"d.1", {tail(U, V, Y, Z), tail(U, Z, p, t)}});
      return out;
    }
    if (g.is_tree_node(p) && g.parent(p) != g.root()) {
      const NodeId q = g.parent(p);
      out.push_back({"d.2", {tail(p, t, re.tail, re.head), tail(U, V, Y, Z),
                             tail(U, Z, q, t), tail(p, t, q, U)}});
    }
    const NodeId X = g.other_parent(V, U);
    for (const Edge& e : extra_tails(g, lca_set(g, X, U))) {
      if (g.reaches(e.tail, U)) continue;
      const NodeId ps = g.parent(e.tail), os = g.other_child(e.tail, e.head);
      out.push_back({"d.2", {tail(e.tail, e.head, U, t), tail(U, V, Y, Z),
                             tail(U, Z, p, e.tail), tail(e.tail, e.head, ps, os)}});
    }
    return out;
  }
  for (const Edge& e : extra_tails(g)) {
    const NodeId s = e.tail, r = e.head;
    const NodeId ps = g.parent(s), os = g.other_child(s, r);
    out.push_back({"d.3", {tail(s, r, U, V), tail(s, V, Y, Z), tail(s, Z, U, r),
                           tail(s, r, ps, os)}});
  }
  return out;
}

}  // namespace

HeadCase classify_head_move(const Network& net, const Move& m) {
  if (m.kind != MoveKind::Head || !can_apply(net, m))
    throw NotDistanceOne(to_string(m) + ": not a valid head move");
  if (move_distance(net, m) != 1)
    throw NotDistanceOne(to_string(m) + ": distance " +
                         std::to_string(move_distance(net, m)));
  HeadCase h;
  h.u = m.moving.tail;
  h.v = m.moving.head;
  const NodeId other = net.other_parent(h.v, h.u);
  const NodeId below = net.child(h.v);
  const Edge f = m.target;
  if (f.head == other && net.is_tree_node(other)) {
    h.letter = 'e';
    h.z = other;
    h.w = f.tail;
    h.y = net.other_child(other, h.v);
    h.x = below;
  } else if (f.head == other && net.is_reticulation(other)) {
    h.letter = 'f';
    h.z = other;
    h.y = f.tail;
    h.x = net.other_parent(other, f.tail);
    h.w = below;
  } else if (f.tail == other && net.is_tree_node(other)) {
    h.letter = 'a';
    h.z = other;
    h.w = net.parent(other);
    h.y = f.head;
    h.x = below;
  } else if (f.tail == below && net.is_tree_node(below)) {
    h.letter = 'c';
    h.w = other;
    h.z = below;
    h.x = f.head;
    h.y = net.other_child(below, f.head);
  } else if (f.tail == below && net.is_reticulation(below)) {
    h.letter = 'd';
    h.x = other;
    h.z = below;
    h.y = net.other_parent(below, h.v);
    h.w = f.head;
  } else if (f.head == below && net.is_reticulation(below)) {
    h.letter = 'b';
    h.x = other;
    h.z = below;
    h.y = f.tail;
  } else {
    throw NotDistanceOne(to_string(m) + ": target not adjacent to the reticulation");
  }
  h.u_eq_w = h.u == h.w;
  h.x_eq_y = h.x == h.y;
  h.u_eq_y = h.u == h.y;
  return h;
}

bool is_exceptional(const Network& net) {
  return net.leaf_count() == 2 && net.reticulation_count() == 1 &&
         enumerate_moves(net, MoveClass::Tail, true).empty();
}

std::optional<Network> replay_tail(const Network& net, const std::vector<Move>& moves) {
  std::optional<Network> cur = net;
  for (const Move& m : moves) {
    if (m.kind != MoveKind::Tail || !can_apply(*cur, m)) return std::nullopt;
    cur = apply(*cur, m);
  }
  return cur;
}

std::vector<Move> reverse_sequence(const Network& from, const std::vector<Move>& moves,
                                   const Network& to) {
  std::vector<Network> trail{from};
  for (const Move& m : moves) trail.push_back(apply(trail.back(), m));
  auto phi = find_isomorphism(to, trail.back());
  if (!phi) throw InvalidMove("sequence endpoint is not isomorphic to the target");
  std::vector<NodeId> psi(phi->size());
  for (std::size_t i = 0; i < phi->size(); ++i) psi[(*phi)[i]] = static_cast<NodeId>(i);
  std::vector<Move> out;
  for (std::size_t i = moves.size(); i-- > 0;)
    out.push_back(relabel(reverse_move(trail[i], moves[i]), psi));
  return out;
}

RewritePlan rewrite_head_move(const Network& net, const Move& m) {
  const HeadCase h = classify_head_move(net, m);
  Network image = apply(net, m);
  Rewriter rw{net, image, canonical_code(image)};
  RewritePlan plan{m, {}, std::string(1, h.letter)};
  if (rw.goal == canonical_code(net)) {
    plan.tag += ".iso";
    return plan;
  }
  if (is_exceptional(net))
    throw ExceptionalNetwork("two leaves, one reticulation and no valid tail move");

  auto finish = [&](std::string tag, std::vector<Move> seq) {
    plan.tag = std::move(tag);
    plan.replacement = std::move(seq);
    return plan;
  };
  auto fallback = [&](const std::string& tag) {
    const bool one_leaf = net.leaf_count() == 1;
    auto seq = search_tail(net, rw.goal, one_leaf ? 24 : 4, one_leaf ? 2000000 : 200000);
    if (!seq) throw InvalidMove(to_string(m) + ": no tail sequence found for case " + tag);
    return finish(one_leaf ? tag : tag + ".search", *seq);
  };

  switch (h.letter) {
    case 'a': {
      if (!h.u_eq_w) {
        std::vector<Move> seq{tail(h.z, h.y, h.v, h.x), tail(h.z, h.x, h.w, h.v)};
        if (rw.reaches_goal(seq)) return finish("a.1", seq);
        return fallback("a.1");
      }
      std::vector<std::vector<Move>> cands;
      for (const Edge& e : extra_tails(net)) {
        if (net.reaches(e.tail, h.u)) continue;
        const NodeId s = e.tail, t = e.head;
        const NodeId p = net.parent(s), r = net.other_child(s, t);
        cands.push_back({tail(s, t, h.z, h.y), tail(s, h.y, h.v, h.x), tail(s, h.x, h.z, t),
                         tail(s, t, p, r)});
      }
      if (net.is_tree_node(h.y))
        for (int i = 0; i < 2; ++i) {
          const NodeId t1 = net.children(h.y)[i], t2 = net.children(h.y)[1 - i];
          cands.push_back(
              {tail(h.y, t1, h.v, h.x), tail(h.y, h.x, h.z, h.v), tail(h.z, t2, h.v, t1)});
        }
      if (auto seq = rw.first_valid(cands)) return finish("a.2.i", *seq);
      // The image has x and y exchanged, so the same swap runs backwards.
      if (image.is_tree_node(h.x))
        for (int i = 0; i < 2; ++i) {
          const NodeId t1 = image.children(h.x)[i], t2 = image.children(h.x)[1 - i];
          if (auto seq = rw.reversed({tail(h.x, t1, h.v, h.y), tail(h.x, h.y, h.z, h.v),
                                      tail(h.z, t2, h.v, t1)}))
            return finish("a.2.i", *seq);
        }
      if (net.parent(h.u) != net.root()) {
        const NodeId q = net.parent(h.u);
        const Edge re = root_edge(net);
        std::vector<Move> seq{tail(h.z, h.v, re.tail, re.head), tail(h.u, h.y, h.v, h.x),
                              tail(h.u, h.x, q, h.v), tail(h.z, h.v, h.u, h.x)};
        if (rw.reaches_goal(seq)) return finish("a.2.ii", seq);
      }
      return fallback("a.2");
    }
    case 'b': {
      const auto lcas = lca_set(net, h.x, h.y);
      const bool x_lca = std::find(lcas.begin(), lcas.end(), h.x) != lcas.end();
      const bool y_lca = std::find(lcas.begin(), lcas.end(), h.y) != lcas.end();
      if (x_lca) {
        for (auto& [tag, seq] : case_b2(net, h.u, h.v, h.x, h.y, h.z))
          if (rw.reaches_goal(seq)) return finish(tag, seq);
        return fallback("b.2");
      }
      if (y_lca) {
        // On the image the reverse move is of the same shape with x and y
        // exchanged, and there y is the LCA.
        for (auto& [tag, seq] : case_b2(image, h.u, h.v, h.y, h.x, h.z))
          if (auto back = rw.reversed(seq)) return finish("b.3", *back);
        return fallback("b.3");
      }
      for (NodeId s : lcas) {
        for (NodeId t : net.children(s)) {
          if (!is_movable(net, {s, t})) continue;
          const NodeId p = net.parent(s), r = net.other_child(s, t);
          if (net.reaches(t, h.y)) {
            std::vector<Move> seq{tail(s, t, h.x, h.v), tail(s, h.v, h.y, h.z),
                                  tail(s, h.z, h.x, t), tail(s, t, p, r)};
            if (rw.reaches_goal(seq)) return finish("b.1.i", seq);
          }
          if (net.reaches(t, h.x) && image.has_edge(s, t) && is_movable(image, {s, t})) {
            const NodeId ip = image.parent(s), ir = image.other_child(s, t);
            std::vector<Move> seq{tail(s, t, h.y, h.v), tail(s, h.v, h.x, h.z),
                                  tail(s, h.z, h.y, t), tail(s, t, ip, ir)};
            if (auto back = rw.reversed(seq)) return finish("b.1.ii", *back);
          }
        }
      }
      return fallback("b.1");
    }
    case 'c': {
      std::vector<Move> seq{tail(h.z, h.y, h.w, h.v)};
      if (rw.reaches_goal(seq)) return finish("c", seq);
      return fallback("c");
    }
    case 'd': {
      for (auto& [tag, seq] : case_d(net, h.u, h.v, h.z, h.y))
        if (rw.reaches_goal(seq)) {
          if (tag == "d.3") break;
          return finish(tag, seq);
        }
      // The image turns back into net by the head move (y,z)->(v,w), which
      // has the same shape with u and y (and v and z) exchanged.
      for (auto& [tag, seq] : case_d(image, h.y, h.z, h.v, h.u)) {
        if (tag == "d.3") break;
        if (auto back = rw.reversed(seq)) return finish(tag, *back);
      }
      std::string tag = net.leaf_count() >= 2 ? "d.3.i"
                        : net.is_leaf(h.w)    ? "d.3.iii"
                                              : "d.3.ii";
      if (tag != "d.3.iii") {
        for (auto& [t, seq] : case_d(net, h.u, h.v, h.z, h.y))
          if (t == "d.3" && rw.reaches_goal(seq)) return finish(tag, seq);
        for (auto& [t, seq] : case_d(image, h.y, h.z, h.v, h.u))
          if (t == "d.3")
            if (auto back = rw.reversed(seq)) return finish(tag, *back);
      }
      return fallback(tag);
    }
    case 'e':
    case 'f': {
      const Move back = reverse_move(net, m);
      std::optional<RewritePlan> inner;
      try {
        inner = rewrite_head_move(image, back);
      } catch (const ExceptionalNetwork&) {
        return fallback(std::string(1, h.letter));
      }
      auto seq = reverse_sequence(image, inner->replacement, net);
      if (!rw.reaches_goal(seq)) return fallback(std::string(1, h.letter));
      return finish(std::string(1, h.letter) + ":" + inner->tag, seq);
    }
  }
  throw NotDistanceOne(to_string(m) + ": unclassified");
}

std::vector<Move> decompose_tail_move(const Network& net, const Move& m) {
  if (m.kind != MoveKind::Tail || !can_apply(net, m))
    throw InvalidMove(to_string(m) + ": not a valid tail move");
  const int d = move_distance(net, m);
  if (d == 0) return {};
  if (d == 1) return {m};
  const NodeId u = m.moving.tail, v = m.moving.head, s = m.target.tail;
  const auto lcas = lca_set(net, u, s);
  NodeId l = lcas.front();
  if (std::find(lcas.begin(), lcas.end(), u) != lcas.end())
    l = u;
  else if (std::find(lcas.begin(), lcas.end(), s) != lcas.end())
    l = s;

  auto path = [&](NodeId to) {
    std::vector<NodeId> prev(net.node_count(), -1);
    std::deque<NodeId> queue{l};
    prev[l] = l;
    while (!queue.empty()) {
      const NodeId a = queue.front();
      queue.pop_front();
      for (NodeId b : net.children(a))
        if (prev[b] < 0) {
          prev[b] = a;
          queue.push_back(b);
        }
    }
    std::vector<Edge> edges;
    for (NodeId b = to; b != l; b = prev[b]) edges.push_back({prev[b], b});
    std::reverse(edges.begin(), edges.end());
    return edges;
  };

  const NodeId pu = net.parent(u), cu = net.other_child(u, v);
  auto squeeze = [&](Edge e) -> Edge {
    if (e.head == u) return {e.tail, cu};
    if (e.tail == u) return {pu, e.head};
    return e;
  };
  std::vector<Edge> positions;
  auto up = path(u);
  for (auto it = up.rbegin(); it != up.rend(); ++it) positions.push_back(squeeze(*it));
  for (const Edge& e : path(s)) positions.push_back(squeeze(e));
  positions.push_back(m.target);

  std::vector<Move> seq;
  Edge at{pu, cu};
  for (const Edge& e : positions) {
    if (e == at) continue;
    seq.push_back({MoveKind::Tail, m.moving, e});
    at = e;
    if (e == m.target) break;
  }
  auto end = replay_tail(net, seq);
  if (!end) throw InvalidMove(to_string(m) + ": decomposition left the valid moves");
  if (end->edges() != apply(net, m).edges())
    throw InvalidMove(to_string(m) + ": decomposition reached a different network");
  return seq;
}

}  // namespace tailmoves
