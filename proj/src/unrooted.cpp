#include "tailmoves/unrooted.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

#include "tailmoves/errors.hpp"
#include "tailmoves/sequence.hpp"

namespace tailmoves {

namespace {

std::string edge_name(UEdge e) {
  return "{" + std::to_string(e.a) + "," + std::to_string(e.b) + "}";
}

}  // namespace

UnrootedNetwork UnrootedNetwork::from_edges(int node_count, const std::vector<UEdge>& edges,
                                            std::map<NodeId, std::string> leaf_labels) {
  if (node_count < 0) throw StructureError("negative node count");
  UnrootedNetwork net;
  net.adj_.assign(node_count, {});
  net.labels_.assign(node_count, {});
  std::set<UEdge> seen;
  for (const UEdge& e : edges) {
    if (e.a < 0 || e.b >= node_count)
      throw StructureError("edge " + edge_name(e) + " has an unknown endpoint");
    if (e.a == e.b) throw StructureError("self loop at node " + std::to_string(e.a));
    if (!seen.insert(e).second) throw StructureError("parallel edges " + edge_name(e));
    net.adj_[e.a].push_back(e.b);
    net.adj_[e.b].push_back(e.a);
  }
  net.edge_count_ = static_cast<int>(edges.size());
  for (auto& a : net.adj_) std::sort(a.begin(), a.end());

  int leaves = 0;
  for (NodeId v = 0; v < node_count; ++v)
    if (net.adj_[v].size() == 1) ++leaves;
  if (leaves < 2) throw TooFewLeaves("an unrooted network needs at least two leaves");

  std::set<std::string> used;
  for (NodeId v = 0; v < node_count; ++v) {
    const auto d = net.adj_[v].size();
    if (d != 1 && d != 3)
      throw StructureError("node " + std::to_string(v) + " has degree " + std::to_string(d));
    auto it = leaf_labels.find(v);
    if (d == 1) {
      if (it == leaf_labels.end() || it->second.empty())
        throw StructureError("leaf " + std::to_string(v) + " has no label");
      if (!used.insert(it->second).second)
        throw StructureError("duplicate label '" + it->second + "'");
      net.labels_[v] = it->second;
      net.leaves_.push_back(v);
    } else if (it != leaf_labels.end()) {
      throw StructureError("label on non-leaf node " + std::to_string(v));
    }
  }
  for (const auto& [v, l] : leaf_labels)
    if (v < 0 || v >= node_count)
      throw StructureError("label '" + l + "' on unknown node " + std::to_string(v));

  std::vector<bool> reached(node_count, false);
  std::deque<NodeId> queue{0};
  reached[0] = true;
  int count = 1;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId w : net.adj_[v])
      if (!reached[w]) {
        reached[w] = true;
        ++count;
        queue.push_back(w);
      }
  }
  if (count != node_count) throw StructureError("graph is disconnected");
  return net;
}

bool UnrootedNetwork::has_edge(NodeId a, NodeId b) const {
  if (a < 0 || a >= node_count()) return false;
  return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::vector<UEdge> UnrootedNetwork::edges() const {
  std::vector<UEdge> out;
  for (NodeId v = 0; v < node_count(); ++v)
    for (NodeId w : adj_[v])
      if (v < w) out.emplace_back(v, w);
  return out;
}

std::optional<NodeId> UnrootedNetwork::leaf_by_label(const std::string& label) const {
  for (NodeId v : leaves_)
    if (labels_[v] == label) return v;
  return std::nullopt;
}

std::vector<std::string> UnrootedNetwork::taxa() const {
  std::vector<std::string> out;
  for (NodeId v : leaves_) out.push_back(labels_[v]);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<NodeId, std::string> UnrootedNetwork::leaf_labels() const {
  std::map<NodeId, std::string> out;
  for (NodeId v : leaves_) out[v] = labels_[v];
  return out;
}

CanonicalForm unrooted_canonical_form(const UnrootedNetwork& net) {
  ColoredGraph g;
  g.directed = false;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    g.keys.push_back(net.is_leaf(v) ? "L:" + net.label(v) : "T");
    g.out.emplace_back(net.neighbors(v).begin(), net.neighbors(v).end());
  }
  auto lab = canonical_labeling(g);
  return {{std::move(lab.code), net.leaf_count(), net.reticulation_number()},
          std::move(lab.order),
          std::move(lab.index)};
}

CanonicalCode unrooted_code(const UnrootedNetwork& net) {
  return unrooted_canonical_form(net).code;
}

std::optional<std::vector<NodeId>> find_unrooted_isomorphism(const UnrootedNetwork& a,
                                                             const UnrootedNetwork& b) {
  if (a.node_count() != b.node_count()) return std::nullopt;
  const auto fa = unrooted_canonical_form(a), fb = unrooted_canonical_form(b);
  if (fa.code != fb.code) return std::nullopt;
  std::vector<NodeId> map(a.node_count());
  for (std::size_t i = 0; i < fa.order.size(); ++i) map[fa.order[i]] = fb.order[i];
  return map;
}

bool unrooted_isomorphic(const UnrootedNetwork& a, const UnrootedNetwork& b) {
  return unrooted_code(a) == unrooted_code(b);
}

UnrootedNetwork underlying(const Network& net, const std::string& root_label) {
  std::string name = root_label;
  while (net.leaf_by_label(name)) name += '_';
  std::vector<UEdge> edges;
  for (const Edge& e : net.edges()) edges.emplace_back(e.tail, e.head);
  auto labels = net.leaf_labels();
  labels[net.root()] = name;
  return UnrootedNetwork::from_edges(net.node_count(), edges, std::move(labels));
}

BlobDecomposition decompose(const UnrootedNetwork& net) {
  const int n = net.node_count();
  BlobDecomposition d;
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  std::function<void(NodeId, NodeId)> dfs = [&](NodeId v, NodeId from) {
    disc[v] = low[v] = timer++;
    for (NodeId w : net.neighbors(v)) {
      if (w == from) continue;
      if (disc[w] >= 0) {
        low[v] = std::min(low[v], disc[w]);
        continue;
      }
      dfs(w, v);
      low[v] = std::min(low[v], low[w]);
      if (low[w] > disc[v]) d.bridges.emplace_back(v, w);
    }
  };
  if (n > 0) dfs(0, -1);
  std::sort(d.bridges.begin(), d.bridges.end());
  const std::set<UEdge> bridge_set(d.bridges.begin(), d.bridges.end());

  // Components of the graph without its bridges.
  std::vector<int> comp(n, -1);
  std::vector<std::vector<NodeId>> comps;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comps.emplace_back();
    std::deque<NodeId> queue{s};
    comp[s] = static_cast<int>(comps.size()) - 1;
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      comps.back().push_back(v);
      for (NodeId w : net.neighbors(v))
        if (comp[w] < 0 && !bridge_set.count(UEdge(v, w))) {
          comp[w] = comp[s];
          queue.push_back(w);
        }
    }
  }
  for (auto& c : comps) {
    if (c.size() < 2) continue;
    std::sort(c.begin(), c.end());
    d.blobs.push_back(c);
  }
  std::sort(d.blobs.begin(), d.blobs.end());
  d.component.assign(n, -1);
  for (int i = 0; i < static_cast<int>(d.blobs.size()); ++i)
    for (NodeId v : d.blobs[i]) d.component[v] = i;

  // A bridge is redundant when one of its sides holds no leaf.
  for (const UEdge& e : d.bridges) {
    for (auto [start, block] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
      std::vector<bool> seen(n, false);
      seen[start] = seen[block] = true;
      std::deque<NodeId> queue{start};
      bool leaf = false;
      while (!queue.empty() && !leaf) {
        const NodeId v = queue.front();
        queue.pop_front();
        if (net.is_leaf(v)) leaf = true;
        for (NodeId w : net.neighbors(v))
          if (!seen[w]) {
            seen[w] = true;
            queue.push_back(w);
          }
      }
      if (!leaf) {
        d.redundant_bridges.push_back(e);
        break;
      }
    }
  }
  for (int i = 0; i < static_cast<int>(d.blobs.size()); ++i) {
    int incident = 0;
    for (const UEdge& e : d.bridges)
      if (d.component[e.a] == i || d.component[e.b] == i) ++incident;
    if (incident == 1) d.terminal_components.push_back(i);
  }
  return d;
}

bool is_rootable(const UnrootedNetwork& net) { return decompose(net).redundant_bridges.empty(); }

namespace {

// Ear insertion order of a blob with `entry` first and `exit` last; every
// other vertex has a neighbour on each side of it.
std::vector<NodeId> bipolar_order(const UnrootedNetwork& net, const std::vector<int>& component,
                                  int blob, NodeId entry, NodeId exit) {
  const int n = net.node_count();
  std::vector<bool> covered(n, false);
  std::vector<NodeId> order{entry, exit};
  covered[entry] = covered[exit] = true;
  auto in_blob = [&](NodeId v) { return component[v] == blob; };
  for (;;) {
    bool grew = false;
    for (std::size_t i = 0; i < order.size() && !grew; ++i) {
      const NodeId a = order[i];
      for (NodeId w : net.neighbors(a)) {
        if (!in_blob(w) || covered[w]) continue;
        // Search through uncovered vertices for a covered vertex other than a.
        std::vector<NodeId> prev(n, -1);
        std::deque<NodeId> queue{w};
        prev[w] = a;
        NodeId last = -1, b = -1;
        while (!queue.empty() && b < 0) {
          const NodeId v = queue.front();
          queue.pop_front();
          for (NodeId y : net.neighbors(v)) {
            if (!in_blob(y)) continue;
            if (covered[y]) {
              if (y != a) {
                last = v;
                b = y;
                break;
              }
            } else if (prev[y] < 0) {
              prev[y] = v;
              queue.push_back(y);
            }
          }
        }
        if (b < 0) continue;
        std::vector<NodeId> path;
        for (NodeId v = last; v != a; v = prev[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());  // a -> ... -> b
        const auto pa = std::find(order.begin(), order.end(), a) - order.begin();
        const auto pb = std::find(order.begin(), order.end(), b) - order.begin();
        if (pb < pa) std::reverse(path.begin(), path.end());
        for (NodeId v : path) covered[v] = true;
        order.insert(order.begin() + std::min(pa, pb) + 1, path.begin(), path.end());
        grew = true;
        break;
      }
    }
    if (!grew) break;
  }
  for (NodeId v = 0; v < n; ++v)
    if (in_blob(v) && !covered[v])
      throw std::logic_error("blob is not biconnected at node " + std::to_string(v));
  return order;
}

}  // namespace

Network root_at(const UnrootedNetwork& net, NodeId r) {
  if (r < 0 || r >= net.node_count() || !net.is_leaf(r))
    throw PreconditionViolated("node " + std::to_string(r) + " is not a leaf");
  const auto d = decompose(net);
  if (!d.redundant_bridges.empty())
    throw Unrootable("redundant cut-edge " + edge_name(d.redundant_bridges.front()));
  const int n = net.node_count();
  const std::set<UEdge> bridge_set(d.bridges.begin(), d.bridges.end());

  std::vector<Edge> edges;
  // Bridges point away from r. The first node of a blob reached is its entry.
  std::vector<NodeId> entry(d.blobs.size(), -1);
  std::vector<bool> seen(n, false);
  std::deque<NodeId> queue{r};
  seen[r] = true;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId w : net.neighbors(v)) {
      if (seen[w]) continue;
      seen[w] = true;
      queue.push_back(w);
      if (bridge_set.count(UEdge(v, w))) {
        edges.push_back({v, w});
        if (d.component[w] >= 0 && entry[d.component[w]] < 0) entry[d.component[w]] = w;
      }
    }
  }
  for (int i = 0; i < static_cast<int>(d.blobs.size()); ++i) {
    const NodeId t = entry[i];
    NodeId x = -1;
    for (NodeId v : d.blobs[i]) {
      if (v == t) continue;
      for (NodeId w : net.neighbors(v))
        if (d.component[w] != i) x = v;
      if (x >= 0) break;
    }
    if (x < 0) throw Unrootable("blob containing node " + std::to_string(t) + " has one exit");
    const auto order = bipolar_order(net, d.component, i, t, x);
    std::vector<int> pos(n, -1);
    for (std::size_t j = 0; j < order.size(); ++j) pos[order[j]] = static_cast<int>(j);
    for (NodeId v : d.blobs[i])
      for (NodeId w : net.neighbors(v))
        if (d.component[w] == i && pos[v] < pos[w]) edges.push_back({v, w});
  }
  auto labels = net.leaf_labels();
  labels.erase(r);
  return Network::from_edges(n, std::move(edges), std::move(labels));
}

std::optional<UnrootedNetwork> try_apply_spr(const UnrootedNetwork& net, const SprMove& m) {
  const int n = net.node_count();
  auto valid = [&](NodeId v) { return v >= 0 && v < n; };
  if (!valid(m.end) || !valid(m.other) || !net.has_edge(m.end, m.other)) return std::nullopt;
  if (!net.has_edge(m.target.a, m.target.b)) return std::nullopt;
  if (m.target == UEdge(m.end, m.other) || net.degree(m.end) != 3) return std::nullopt;

  auto edges = net.edges();
  auto drop = [&](UEdge e) { edges.erase(std::find(edges.begin(), edges.end(), e)); };
  const NodeId fresh = n;
  drop(m.target);
  edges.emplace_back(m.target.a, fresh);
  edges.emplace_back(fresh, m.target.b);
  drop(UEdge(m.end, m.other));
  std::vector<NodeId> rest;
  for (const UEdge& e : edges) {
    if (e.a == m.end) rest.push_back(e.b);
    if (e.b == m.end) rest.push_back(e.a);
  }
  drop(UEdge(m.end, rest[0]));
  drop(UEdge(m.end, rest[1]));
  if (rest[0] == rest[1]) return std::nullopt;
  edges.emplace_back(rest[0], rest[1]);
  edges.emplace_back(fresh, m.other);
  for (UEdge& e : edges) e = UEdge(e.a == fresh ? m.end : e.a, e.b == fresh ? m.end : e.b);
  try {
    return UnrootedNetwork::from_edges(n, edges, net.leaf_labels());
  } catch (const Error&) {
    return std::nullopt;
  }
}

UnrootedNetwork apply_spr(const UnrootedNetwork& net, const SprMove& m) {
  auto r = try_apply_spr(net, m);
  if (!r)
    throw InvalidMove("spr " + std::to_string(m.end) + "-end of " +
                      edge_name(UEdge(m.end, m.other)) + " onto " + edge_name(m.target) +
                      " is not valid");
  return *std::move(r);
}

SprMove reverse_spr(const UnrootedNetwork& before, const SprMove& m) {
  std::vector<NodeId> rest;
  for (NodeId w : before.neighbors(m.end))
    if (w != m.other) rest.push_back(w);
  if (rest.size() != 2) throw InvalidMove("moving end is not an inner node");
  if (m.target.a == m.end || m.target.b == m.end) return m;
  return {m.end, m.other, UEdge(rest[0], rest[1])};
}

Elimination eliminate_terminal_components(const UnrootedNetwork& net) {
  Elimination out{net, {}, static_cast<int>(decompose(net).terminal_components.size())};
  for (;;) {
    const auto d = decompose(out.result);
    if (d.terminal_components.empty()) break;
    const int blob = d.terminal_components.front();
    NodeId v = -1;
    for (const UEdge& e : d.bridges) {
      if (d.component[e.a] == blob) v = e.a;
      if (d.component[e.b] == blob) v = e.b;
    }
    bool done = false;
    for (NodeId x : out.result.neighbors(v)) {
      if (d.component[x] != blob || done) continue;
      for (NodeId leaf : out.result.leaves()) {
        const SprMove m{v, x, UEdge(leaf, out.result.neighbors(leaf)[0])};
        auto next = try_apply_spr(out.result, m);
        if (!next) continue;
        if (decompose(*next).terminal_components.size() >= d.terminal_components.size())
          continue;
        out.result = *std::move(next);
        out.moves.push_back(m);
        done = true;
        break;
      }
    }
    if (!done)
      throw std::logic_error("no move removes the terminal component at node " +
                             std::to_string(v));
  }
  return out;
}

SprSequence spr_sequence(const UnrootedNetwork& from, const UnrootedNetwork& to) {
  if (from.taxa() != to.taxa()) throw TierMismatch("the networks have different taxa");
  if (from.reticulation_number() != to.reticulation_number())
    throw TierMismatch("reticulation numbers differ: " +
                       std::to_string(from.reticulation_number()) + " and " +
                       std::to_string(to.reticulation_number()));
  SprSequence seq;
  if (unrooted_isomorphic(from, to)) return seq;

  const auto e1 = eliminate_terminal_components(from);
  const auto e2 = eliminate_terminal_components(to);
  seq.elimination_source = static_cast<int>(e1.moves.size());
  seq.elimination_target = static_cast<int>(e2.moves.size());

  UnrootedNetwork cur = from;
  auto push = [&](const SprMove& m) {
    cur = apply_spr(cur, m);
    seq.moves.push_back(m);
    seq.intermediates.push_back(cur);
  };
  for (const SprMove& m : e1.moves) push(m);

  const std::string root = from.taxa().front();
  const Network n1 = root_at(e1.result, *e1.result.leaf_by_label(root));
  const Network n2 = root_at(e2.result, *e2.result.leaf_by_label(root));
  for (const Move& m : green_line_rspr(n1, n2).moves()) {
    if (m.kind == MoveKind::Tail)
      push({m.moving.tail, m.moving.head, UEdge(m.target.tail, m.target.head)});
    else
      push({m.moving.head, m.moving.tail, UEdge(m.target.tail, m.target.head)});
  }

  // Undo the target's eliminations, carried over to the current node ids.
  std::vector<UnrootedNetwork> states{to};
  for (const SprMove& m : e2.moves) states.push_back(apply_spr(states.back(), m));
  const auto iso = find_unrooted_isomorphism(e2.result, cur);
  if (!iso) throw std::logic_error("rooted sequence did not reach the eliminated target");
  const auto& f = *iso;
  for (std::size_t i = e2.moves.size(); i-- > 0;) {
    const SprMove back = reverse_spr(states[i], e2.moves[i]);
    push({f[back.end], f[back.other], UEdge(f[back.target.a], f[back.target.b])});
  }
  if (!unrooted_isomorphic(cur, to))
    throw std::logic_error("spr sequence endpoint is not isomorphic to the target");
  return seq;
}

long spr_sequence_bound(int taxa, int k) { return rspr_bound(taxa, k) + 2L * (k / 3); }

}  // namespace tailmoves
