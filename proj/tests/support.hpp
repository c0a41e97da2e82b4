#pragma once

#include <algorithm>
#include <functional>
#include <ostream>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tailmoves/canonical.hpp"
#include "tailmoves/moves.hpp"
#include "tailmoves/network.hpp"
#include "tailmoves/newick.hpp"

// Reference implementations used by the unit tests. They share no code with
// the library apart from the Network container and validate().
namespace oracle {

using namespace tailmoves;

inline const char* kExceptional = "((a,(b)#H1),#H1);";
inline const char* kOneLeafTwoRetics = "(((a)#H2)#H1,(#H1,#H2));";

inline Network net(const char* text) { return parse_enewick(text); }

// Plain adjacency view of a graph.
struct Digraph {
  int n = 0;
  std::set<std::pair<int, int>> edges;
  std::map<int, std::string> labels;

  static Digraph of(const Network& net) {
    Digraph g;
    g.n = net.node_count();
    for (const Edge& e : net.edges()) g.edges.insert({e.tail, e.head});
    g.labels = net.leaf_labels();
    return g;
  }
  std::vector<int> out(int v) const {
    std::vector<int> r;
    for (auto [a, b] : edges)
      if (a == v) r.push_back(b);
    return r;
  }
  std::vector<int> in(int v) const {
    std::vector<int> r;
    for (auto [a, b] : edges)
      if (b == v) r.push_back(a);
    return r;
  }
};

// Exhaustive search for a label preserving bijection of nodes that maps the
// edge set onto the edge set.
inline bool brute_isomorphic(const Digraph& a, const Digraph& b) {
  if (a.n != b.n || a.edges.size() != b.edges.size() || a.labels.size() != b.labels.size())
    return false;
  std::vector<int> image(a.n, -1);
  std::vector<bool> used(b.n, false);
  std::map<std::string, int> label_b;
  for (auto& [v, l] : b.labels) label_b[l] = v;
  for (auto& [v, l] : a.labels) {
    auto it = label_b.find(l);
    if (it == label_b.end()) return false;
    image[v] = it->second;
    used[it->second] = true;
  }
  std::vector<int> free;
  for (int v = 0; v < a.n; ++v)
    if (image[v] < 0) free.push_back(v);
  const auto consistent = [&](int v) {
    for (auto [x, y] : a.edges) {
      if (x != v && y != v) continue;
      if (image[x] < 0 || image[y] < 0) continue;
      if (!b.edges.count({image[x], image[y]})) return false;
    }
    return a.out(v).size() == b.out(image[v]).size() && a.in(v).size() == b.in(image[v]).size();
  };
  for (auto& [v, l] : a.labels)
    if (!consistent(v)) return false;
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == free.size()) return true;
    const int v = free[i];
    for (int w = 0; w < b.n; ++w) {
      if (used[w] || b.labels.count(w)) continue;
      image[v] = w;
      used[w] = true;
      if (consistent(v) && go(i + 1)) return true;
      used[w] = false;
      image[v] = -1;
    }
    return false;
  };
  return go(0);
}

inline bool brute_isomorphic(const Network& a, const Network& b) {
  return brute_isomorphic(Digraph::of(a), Digraph::of(b));
}

// Transitive closure by Floyd-Warshall; reach[a][b] iff b is reachable from a.
inline std::vector<std::vector<bool>> closure(const Network& net) {
  const int n = net.node_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int v = 0; v < n; ++v) r[v][v] = true;
  for (const Edge& e : net.edges()) r[e.tail][e.head] = true;
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a)
      if (r[a][m])
        for (int b = 0; b < n; ++b)
          if (r[m][b]) r[a][b] = true;
  return r;
}

inline std::vector<int> brute_lca(const Network& net, int u, int v) {
  const auto r = closure(net);
  std::vector<int> common, out;
  for (int x = 0; x < net.node_count(); ++x)
    if (r[x][u] && r[x][v]) common.push_back(x);
  for (int x : common) {
    bool lowest = true;
    for (int y : common)
      if (y != x && r[x][y]) lowest = false;
    if (lowest) out.push_back(x);
  }
  return out;
}

// The four steps of a move carried out on an edge list, followed by
// validate(). The subdivision node gets a fresh id; the suppressed node is
// removed and ids are compacted.
inline std::optional<Network> surgery(const Network& net, const Move& m) {
  if (m.moving == m.target) return std::nullopt;
  Digraph g = Digraph::of(net);
  if (!g.edges.count({m.moving.tail, m.moving.head}) ||
      !g.edges.count({m.target.tail, m.target.head}))
    return std::nullopt;
  const bool tail = m.kind == MoveKind::Tail;
  const int detached = tail ? m.moving.tail : m.moving.head;
  const int kept = tail ? m.moving.head : m.moving.tail;
  g.edges.erase({m.moving.tail, m.moving.head});
  const int fresh = g.n++;
  g.edges.erase({m.target.tail, m.target.head});
  g.edges.insert({m.target.tail, fresh});
  g.edges.insert({fresh, m.target.head});
  const auto in = g.in(detached), out = g.out(detached);
  if (in.size() != 1 || out.size() != 1) return std::nullopt;
  g.edges.erase({in[0], detached});
  g.edges.erase({detached, out[0]});
  if (g.edges.count({in[0], out[0]})) return std::nullopt;
  g.edges.insert({in[0], out[0]});
  if (tail)
    g.edges.insert({fresh, kept});
  else
    g.edges.insert({kept, fresh});
  CandidateGraph c;
  c.node_count = g.n - 1;
  const auto id = [&](int v) { return v > detached ? v - 1 : v; };
  for (auto [a, b] : g.edges) {
    if (a == detached || b == detached) return std::nullopt;
    c.edges.push_back({id(a), id(b)});
  }
  for (auto& [v, l] : g.labels) c.leaf_labels[id(v)] = l;
  if (c.edges.size() != static_cast<std::size_t>(net.edge_count())) return std::nullopt;
  if (!validate(c).ok()) return std::nullopt;
  return Network::from_candidate(c);
}

// Deleting e and suppressing its tail leaves a network without parallel
// edges.
inline bool brute_movable(const Network& net, Edge e) {
  Digraph g = Digraph::of(net);
  g.edges.erase({e.tail, e.head});
  const auto in = g.in(e.tail), out = g.out(e.tail);
  if (in.size() != 1 || out.size() != 1) return false;
  return !g.edges.count({in[0], out[0]});
}

// Every (kind, edge, edge) triple whose surgery yields a network. With
// `movable_tails`, tail moves of unmovable edges are dropped; the only such
// surgeries that succeed put the edge back in place.
inline std::vector<Move> brute_moves(const Network& net, MoveKind kind,
                                     bool movable_tails = true) {
  std::vector<Move> out;
  for (const Edge& a : net.edges()) {
    if (kind == MoveKind::Tail && movable_tails && !brute_movable(net, a)) continue;
    for (const Edge& b : net.edges())
      if (!(a == b) && surgery(net, {kind, a, b})) out.push_back({kind, a, b});
  }
  return out;
}

// Undirected BFS distance from detached endpoint to subdivision node, on the
// graph after deleting the moving edge and subdividing the target.
inline int brute_move_distance(const Network& net, const Move& m) {
  Digraph g = Digraph::of(net);
  const int detached = m.kind == MoveKind::Tail ? m.moving.tail : m.moving.head;
  g.edges.erase({m.moving.tail, m.moving.head});
  const int fresh = g.n++;
  g.edges.erase({m.target.tail, m.target.head});
  g.edges.insert({m.target.tail, fresh});
  g.edges.insert({fresh, m.target.head});
  std::vector<std::vector<int>> adj(g.n);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[detached] = 0;
  q.push(detached);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist[fresh] - 1;
}

// Exact distance by BFS over surgery results, deduplicated with brute force
// isomorphism against every visited network.
inline std::optional<int> brute_distance(const Network& from, const Network& to,
                                         bool tails, bool heads) {
  std::vector<Network> seen{from};
  std::vector<int> dist{0};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (brute_isomorphic(seen[i], to)) return dist[i];
    std::vector<Move> ms;
    if (tails) ms = brute_moves(seen[i], MoveKind::Tail);
    if (heads)
      for (auto& m : brute_moves(seen[i], MoveKind::Head)) ms.push_back(m);
    for (const Move& m : ms) {
      Network r = *surgery(seen[i], m);
      bool known = false;
      for (const Network& s : seen)
        if (brute_isomorphic(s, r)) known = true;
      if (!known) {
        seen.push_back(r);
        dist.push_back(dist[i] + 1);
      }
    }
  }
  return std::nullopt;
}

// Copy of net with node ids permuted.
inline Network shuffled(const Network& net, std::mt19937& rng) {
  std::vector<int> perm(net.node_count());
  for (int i = 0; i < net.node_count(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (const Edge& e : net.edges()) edges.push_back({perm[e.tail], perm[e.head]});
  std::map<NodeId, std::string> labels;
  for (auto& [v, l] : net.leaf_labels()) labels[perm[v]] = l;
  return Network::from_edges(net.node_count(), edges, labels);
}

inline std::set<Move> as_set(const std::vector<Move>& v) { return {v.begin(), v.end()}; }

}  // namespace oracle

namespace tailmoves {
inline void PrintTo(const Move& m, std::ostream* os) { *os << to_string(m); }
}  // namespace tailmoves
