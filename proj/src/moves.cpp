#include "tailmoves/moves.hpp"

#include <algorithm>
#include <deque>

#include "tailmoves/canonical.hpp"
#include "tailmoves/errors.hpp"

namespace tailmoves {

std::string to_string(const Move& m) {
  auto edge = [](Edge e) {
    return "(" + std::to_string(e.tail) + "," + std::to_string(e.head) + ")";
  };
  return std::string(m.kind == MoveKind::Tail ? "tail " : "head ") + edge(m.moving) +
         "->" + edge(m.target);
}

const char* to_string(MoveClass c) {
  switch (c) {
    case MoveClass::Tail: return "tail";
    case MoveClass::Head: return "head";
    case MoveClass::RSPR: return "rspr";
    case MoveClass::Tail1: return "tail1";
    case MoveClass::Head1: return "head1";
    case MoveClass::RNNI: return "rnni";
  }
  return "?";
}

std::optional<MoveClass> parse_move_class(const std::string& name) {
  for (auto c : {MoveClass::Tail, MoveClass::Head, MoveClass::RSPR, MoveClass::Tail1,
                 MoveClass::Head1, MoveClass::RNNI})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

bool includes_tail(MoveClass c) {
  return c == MoveClass::Tail || c == MoveClass::RSPR || c == MoveClass::Tail1 ||
         c == MoveClass::RNNI;
}

bool includes_head(MoveClass c) {
  return c == MoveClass::Head || c == MoveClass::RSPR || c == MoveClass::Head1 ||
         c == MoveClass::RNNI;
}

bool distance_one_only(MoveClass c) {
  return c == MoveClass::Tail1 || c == MoveClass::Head1 || c == MoveClass::RNNI;
}

namespace {

struct Surgery {
  std::vector<Edge> edges;
  NodeId fresh = -1;    // subdivision node, not yet renamed
  NodeId detached = -1; // endpoint left with one in and one out edge
};

bool remove_edge(std::vector<Edge>& edges, Edge e) {
  auto it = std::find(edges.begin(), edges.end(), e);
  if (it == edges.end()) return false;
  edges.erase(it);
  return true;
}

// Steps 1 and 2: delete the moving edge and subdivide the target.
Surgery cut(const Network& net, const Move& m) {
  Surgery s{net.edges(), net.node_count(),
            m.kind == MoveKind::Tail ? m.moving.tail : m.moving.head};
  remove_edge(s.edges, m.moving);
  remove_edge(s.edges, m.target);
  s.edges.push_back({m.target.tail, s.fresh});
  s.edges.push_back({s.fresh, m.target.head});
  return s;
}

const char* structural_problem(const Network& net, const Move& m) {
  if (m.moving == m.target) return "moving edge equals target edge";
  if (!net.has_edge(m.moving)) return "moving edge not in network";
  if (!net.has_edge(m.target)) return "target edge not in network";
  return nullptr;
}

}  // namespace

bool is_movable(const Network& net, Edge e) {
  if (!net.has_edge(e)) return false;
  const NodeId u = e.tail;
  if (!net.is_tree_node(u)) return false;
  const NodeId c = net.other_child(u, e.head);
  return !net.has_edge(net.parent(u), c);
}

bool can_apply(const Network& net, const Move& m) {
  if (structural_problem(net, m)) return false;
  if (m.kind == MoveKind::Tail) {
    return is_movable(net, m.moving) && !net.reaches(m.moving.head, m.target.tail) &&
           m.target.head != m.moving.head;
  }
  if (!net.is_reticulation(m.moving.head)) return false;
  return try_apply(net, m).has_value();
}

std::optional<Network> try_apply(const Network& net, const Move& m) {
  if (structural_problem(net, m)) return std::nullopt;
  const NodeId x = m.kind == MoveKind::Tail ? m.moving.tail : m.moving.head;
  if (m.kind == MoveKind::Tail ? !net.is_tree_node(x) : !net.is_reticulation(x))
    return std::nullopt;
  Surgery s = cut(net, m);
  // Step 3: suppress the detached endpoint.
  NodeId in = -1, out = -1;
  for (const Edge& e : s.edges) {
    if (e.head == x) in = e.tail;
    if (e.tail == x) out = e.head;
  }
  remove_edge(s.edges, {in, x});
  remove_edge(s.edges, {x, out});
  s.edges.push_back({in, out});
  // Step 4: reattach, then let the subdivision node take over the free id.
  if (m.kind == MoveKind::Tail)
    s.edges.push_back({s.fresh, m.moving.head});
  else
    s.edges.push_back({m.moving.tail, s.fresh});
  for (Edge& e : s.edges) {
    if (e.tail == s.fresh) e.tail = x;
    if (e.head == s.fresh) e.head = x;
  }
  CandidateGraph g{net.node_count(), std::move(s.edges), net.leaf_labels()};
  if (!validate(g).ok()) return std::nullopt;
  return Network::from_candidate(g);
}

Network apply(const Network& net, const Move& m) {
  if (const char* why = structural_problem(net, m))
    throw InvalidMove(to_string(m) + ": " + why);
  if (m.kind == MoveKind::Tail) {
    if (!is_movable(net, m.moving))
      throw InvalidMove(to_string(m) + ": moving edge is not movable");
    if (net.reaches(m.moving.head, m.target.tail))
      throw InvalidMove(to_string(m) + ": target is below the moving edge");
    if (m.target.head == m.moving.head)
      throw InvalidMove(to_string(m) + ": target ends at the moving edge's head");
  } else if (!net.is_reticulation(m.moving.head)) {
    throw InvalidMove(to_string(m) + ": head of moving edge is not a reticulation");
  }
  auto result = try_apply(net, m);
  if (!result) throw InvalidMove(to_string(m) + ": result is not a network");
  return *std::move(result);
}

int move_distance(const Network& net, const Move& m) {
  if (!can_apply(net, m)) throw InvalidMove(to_string(m) + ": not applicable");
  Surgery s = cut(net, m);
  std::vector<std::vector<NodeId>> adj(net.node_count() + 1);
  for (const Edge& e : s.edges) {
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  std::vector<int> dist(adj.size(), -1);
  std::deque<NodeId> queue{s.detached};
  dist[s.detached] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (v == s.fresh) return dist[v] - 1;
    for (NodeId w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  throw InvalidMove(to_string(m) + ": subdivision node unreachable");
}

std::vector<Move> enumerate_moves(const Network& net, MoveClass c, bool skip_trivial) {
  std::vector<Move> result;
  const auto edges = net.edges();
  std::optional<CanonicalCode> self;
  auto keep = [&](const Move& m) {
    if (distance_one_only(c) && move_distance(net, m) != 1) return;
    if (skip_trivial) {
      if (!self) self = canonical_code(net);
      if (canonical_code(apply(net, m)) == *self) return;
    }
    result.push_back(m);
  };
  if (includes_tail(c))
    for (const Edge& e : edges) {
      if (!is_movable(net, e)) continue;
      for (const Edge& f : edges) {
        Move m{MoveKind::Tail, e, f};
        if (can_apply(net, m)) keep(m);
      }
    }
  if (includes_head(c))
    for (const Edge& e : edges) {
      if (!net.is_reticulation(e.head)) continue;
      for (const Edge& f : edges) {
        Move m{MoveKind::Head, e, f};
        if (can_apply(net, m)) keep(m);
      }
    }
  return result;
}

std::optional<Triangle> find_triangle(const Network& net, NodeId u) {
  if (!net.is_tree_node(u)) return std::nullopt;
  const NodeId x = net.parent(u);
  for (NodeId y : net.children(u))
    if (net.has_edge(x, y)) return Triangle{x, u, y};
  return std::nullopt;
}

Edge movable_edge_avoiding(const Network& net, NodeId x, NodeId y) {
  const auto lcas = lca_set(net, x, y);
  for (NodeId l : lcas)
    if (l == x || l == y)
      throw PreconditionViolated("node " + std::to_string(l) +
                                 " is an LCA of the pair itself");
  for (NodeId l : lcas)
    for (NodeId c : net.children(l))
      if (is_movable(net, {l, c})) return {l, c};
  throw PreconditionViolated("no LCA has a movable child edge");
}

Move reverse_move(const Network& before, const Move& m) {
  Edge back;
  if (m.kind == MoveKind::Tail) {
    const NodeId u = m.moving.tail;
    back = {before.parent(u), before.other_child(u, m.moving.head)};
  } else {
    const NodeId v = m.moving.head;
    back = {before.other_parent(v, m.moving.tail), before.child(v)};
  }
  const NodeId x = m.kind == MoveKind::Tail ? m.moving.tail : m.moving.head;
  if (m.target == Edge{back.tail, x} || m.target == Edge{x, back.head}) return m;
  return {m.kind, m.moving, back};
}

}  // namespace tailmoves
