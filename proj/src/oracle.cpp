#include "tailmoves/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "tailmoves/errors.hpp"

namespace tailmoves {

int node_count_of_tier(int taxa, int k) { return 2 * taxa + 2 * k; }

void check_scale(int nodes, int max_nodes, const std::string& what) {
  if (max_nodes > kMaxNodesCap)
    throw ScaleLimitExceeded("node limit " + std::to_string(max_nodes) +
                             " is above the compiled cap " + std::to_string(kMaxNodesCap));
  if (nodes > max_nodes)
    throw ScaleLimitExceeded(what + " needs " + std::to_string(nodes) +
                             " nodes, limit is " + std::to_string(max_nodes));
}

std::optional<int> TierCatalog::find(const Network& net) const {
  auto it = index.find(canonical_code(net));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<Network> enumerate_trees(const std::vector<std::string>& taxa) {
  if (taxa.empty()) throw PreconditionViolated("a tree needs at least one taxon");
  struct Partial {
    int nodes;
    std::vector<Edge> edges;
    std::map<NodeId, std::string> labels;
  };
  std::vector<Partial> trees{{2, {{0, 1}}, {{1, taxa[0]}}}};
  for (std::size_t i = 1; i < taxa.size(); ++i) {
    std::vector<Partial> next;
    for (const Partial& t : trees)
      for (std::size_t j = 0; j < t.edges.size(); ++j) {
        Partial p = t;
        const Edge e = p.edges[j];
        const NodeId w = p.nodes, leaf = p.nodes + 1;
        p.nodes += 2;
        p.edges[j] = {e.tail, w};
        p.edges.push_back({w, e.head});
        p.edges.push_back({w, leaf});
        p.labels[leaf] = taxa[i];
        next.push_back(std::move(p));
      }
    trees = std::move(next);
  }
  std::vector<Network> out;
  for (auto& t : trees) out.push_back(Network::from_edges(t.nodes, t.edges, t.labels));
  return out;
}

namespace {

// Binary network in which parallel edges are allowed.
struct Multigraph {
  int nodes = 0;
  std::vector<Edge> edges;
  std::map<NodeId, std::string> labels;
};

// Isomorphism invariant key: every edge becomes a node of its own, so
// parallel edges stay distinguishable.
std::string multigraph_code(const Multigraph& g) {
  const int n = g.nodes, m = static_cast<int>(g.edges.size());
  ColoredGraph c;
  c.keys.assign(n + m, "E");
  c.out.assign(n + m, {});
  c.in.assign(n + m, {});
  for (int v = 0; v < n; ++v) {
    auto it = g.labels.find(v);
    c.keys[v] = it == g.labels.end() ? "V" : "L:" + it->second;
  }
  for (int e = 0; e < m; ++e) {
    c.out[g.edges[e].tail].push_back(n + e);
    c.in[n + e].push_back(g.edges[e].tail);
    c.out[n + e].push_back(g.edges[e].head);
    c.in[g.edges[e].head].push_back(n + e);
  }
  return canonical_labeling(c).code;
}

bool reaches(const Multigraph& g, NodeId from, NodeId to) {
  std::vector<std::vector<NodeId>> out(g.nodes);
  for (const Edge& e : g.edges) out[e.tail].push_back(e.head);
  std::vector<bool> seen(g.nodes, false);
  std::vector<NodeId> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (NodeId w : out[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return false;
}

// All multigraph networks of a tier, one per isomorphism class. Removing an
// in-edge of a topmost reticulation (whose parents are tree nodes) and
// suppressing leaves a multigraph network one tier down, so inserting an
// edge between two subdivision points in every possible way reaches them all.
std::vector<Multigraph> multigraph_tier(const std::vector<std::string>& taxa, int k) {
  std::vector<Multigraph> out;
  if (k == 0) {
    for (const Network& tree : enumerate_trees(taxa))
      out.push_back({tree.node_count(), tree.edges(), tree.leaf_labels()});
    return out;
  }
  std::set<std::string> seen;
  for (const Multigraph& g : multigraph_tier(taxa, k - 1)) {
    const int n = g.nodes;
    const int m = static_cast<int>(g.edges.size());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const Edge ei = g.edges[i], ej = g.edges[j];
        if (i != j && reaches(g, ej.head, ei.tail)) continue;
        const NodeId s = n, h = n + 1;
        Multigraph r{n + 2, {}, g.labels};
        for (int e = 0; e < m; ++e)
          if (e != i && e != j) r.edges.push_back(g.edges[e]);
        if (i == j) {
          r.edges.insert(r.edges.end(), {{ei.tail, s}, {s, h}, {h, ei.head}});
        } else {
          r.edges.insert(r.edges.end(), {{ei.tail, s}, {s, ei.head}, {ej.tail, h}, {h, ej.head}});
        }
        r.edges.push_back({s, h});
        if (seen.insert(multigraph_code(r)).second) out.push_back(std::move(r));
      }
  }
  return out;
}

}  // namespace

TierCatalog enumerate_tier(const Tier& tier, int max_nodes) {
  Tier t = tier;
  std::sort(t.taxa.begin(), t.taxa.end());
  if (t.taxa.empty() || std::adjacent_find(t.taxa.begin(), t.taxa.end()) != t.taxa.end())
    throw PreconditionViolated("taxa must be non-empty and distinct");
  if (t.k < 0) throw PreconditionViolated("negative reticulation number");
  check_scale(node_count_of_tier(static_cast<int>(t.taxa.size()), t.k), max_nodes,
              "tier enumeration");

  std::map<CanonicalCode, Network> found;
  for (const Multigraph& g : multigraph_tier(t.taxa, t.k)) {
    CandidateGraph c{g.nodes, g.edges, g.labels};
    if (!validate(c).ok()) continue;
    Network net = Network::from_candidate(c);
    auto code = canonical_code(net);
    found.try_emplace(std::move(code), std::move(net));
  }

  TierCatalog cat{t, {}, {}};
  for (auto& [code, net] : found) {
    cat.index[code] = static_cast<int>(cat.members.size());
    cat.members.push_back(std::move(net));
  }
  return cat;
}

std::optional<int> exact_distance(const Network& from, const Network& to, MoveClass c,
                                  int max_nodes) {
  check_scale(from.node_count(), max_nodes, "exact distance");
  if (from.taxa() != to.taxa() || from.reticulation_count() != to.reticulation_count())
    throw TierMismatch("networks are in different tiers");
  const auto target = canonical_code(to);
  auto start = canonical_code(from);
  if (start == target) return 0;
  std::unordered_map<CanonicalCode, int, CanonicalCodeHash> dist{{start, 0}};
  std::deque<Network> queue{from};
  while (!queue.empty()) {
    const Network net = std::move(queue.front());
    queue.pop_front();
    const int d = dist.at(canonical_code(net));
    for (const Move& m : enumerate_moves(net, c, false)) {
      Network next = apply(net, m);
      auto code = canonical_code(next);
      if (code == target) return d + 1;
      if (dist.emplace(std::move(code), d + 1).second) queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

MoveGraph build_move_graph(const TierCatalog& catalog, MoveClass c) {
  MoveGraph g{&catalog, c, std::vector<std::vector<int>>(catalog.size())};
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const Network& net = catalog.members[i];
    std::set<int> nbrs;
    for (const Move& m : enumerate_moves(net, c, false)) {
      auto j = catalog.find(apply(net, m));
      if (!j) throw std::logic_error("tier catalog is not closed under " + to_string(m));
      if (*j != static_cast<int>(i)) nbrs.insert(*j);
    }
    g.adjacency[i].assign(nbrs.begin(), nbrs.end());
  }
  return g;
}

std::vector<int> distances_from(const MoveGraph& g, int source) {
  std::vector<int> dist(g.adjacency.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.adjacency[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

MoveGraphStats move_graph_stats(const MoveGraph& g) {
  const int n = static_cast<int>(g.adjacency.size());
  std::vector<std::vector<int>> undirected(n);
  for (int v = 0; v < n; ++v)
    for (int w : g.adjacency[v]) {
      undirected[v].push_back(w);
      undirected[w].push_back(v);
    }
  MoveGraphStats s;
  s.component.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (s.component[v] >= 0) continue;
    const int id = s.component_count();
    s.component_sizes.push_back(0);
    s.diameters.push_back(0);
    std::deque<int> queue{v};
    s.component[v] = id;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      ++s.component_sizes[id];
      for (int y : undirected[x])
        if (s.component[y] < 0) {
          s.component[y] = id;
          queue.push_back(y);
        }
    }
  }
  for (int v = 0; v < n; ++v) {
    const auto dist = distances_from(g, v);
    for (int w = 0; w < n; ++w)
      if (s.component[w] == s.component[v] && dist[w] > s.diameters[s.component[v]])
        s.diameters[s.component[v]] = dist[w];
  }
  return s;
}

std::string move_graph_dot(const MoveGraph& g) {
  std::ostringstream out;
  out << "graph moves {\n";
  for (std::size_t v = 0; v < g.adjacency.size(); ++v) out << "  " << v << ";\n";
  for (std::size_t v = 0; v < g.adjacency.size(); ++v)
    for (int w : g.adjacency[v])
      if (static_cast<int>(v) < w) out << "  " << v << " -- " << w << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

// A tree with the root standing in for the extra element of the ground set.
struct RootedTree {
  const Network* net;
  std::vector<int> depth;
  std::vector<NodeId> item;  // 0 is the root, then taxa in sorted order

  explicit RootedTree(const Network& n, const std::vector<std::string>& taxa) : net(&n) {
    depth.assign(n.node_count(), 0);
    std::deque<NodeId> queue{n.root()};
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      for (NodeId c : n.children(v)) {
        depth[c] = depth[v] + 1;
        queue.push_back(c);
      }
    }
    item.push_back(n.root());
    for (const auto& x : taxa) item.push_back(*n.leaf_by_label(x));
  }

  NodeId lca(NodeId a, NodeId b) const {
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      a = net->parent(a);
    }
    return a;
  }

  // Nodes of the minimal subtree spanning the block and its restriction as a
  // string that identifies it up to isomorphism. Empty string on overlap.
  std::string restrict(const std::vector<int>& block, std::vector<int>& owner, int id) const {
    NodeId top = item[block[0]];
    for (int b : block) top = lca(top, item[b]);
    std::vector<bool> in(net->node_count(), false);
    for (int b : block)
      for (NodeId v = item[b];; v = net->parent(v)) {
        in[v] = true;
        if (v == top) break;
      }
    for (NodeId v = 0; v < net->node_count(); ++v)
      if (in[v]) {
        if (owner[v] >= 0 && owner[v] != id) return {};
        owner[v] = id;
      }
    std::function<std::string(NodeId)> f = [&](NodeId v) -> std::string {
      std::vector<std::string> parts;
      for (NodeId c : net->children(v))
        if (in[c]) parts.push_back(f(c));
      if (v == net->root()) return "^" + (parts.empty() ? std::string() : parts[0]);
      if (net->is_leaf(v)) return "'" + net->label(v) + "'";
      if (parts.size() == 1) return parts[0];
      std::sort(parts.begin(), parts.end());
      return "(" + parts[0] + "," + parts[1] + ")";
    };
    return f(top);
  }
};

}  // namespace

int maf_distance(const Network& t1, const Network& t2, int max_taxa) {
  if (t1.reticulation_count() != 0 || t2.reticulation_count() != 0)
    throw PreconditionViolated("agreement forests need trees");
  const auto taxa = t1.taxa();
  if (taxa != t2.taxa()) throw TierMismatch("the trees have different taxa");
  if (static_cast<int>(taxa.size()) > max_taxa)
    throw ScaleLimitExceeded("agreement forest search is limited to " +
                             std::to_string(max_taxa) + " taxa");
  const RootedTree a(t1, taxa), b(t2, taxa);
  const int items = static_cast<int>(taxa.size()) + 1;
  int best = items - 1;
  std::vector<int> block_of(items, 0);
  // Restricted growth strings enumerate every set partition once.
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (blocks - 1 >= best) return;
    if (i == items) {
      std::vector<std::vector<int>> parts(blocks);
      for (int j = 0; j < items; ++j) parts[block_of[j]].push_back(j);
      std::vector<int> own_a(t1.node_count(), -1), own_b(t2.node_count(), -1);
      for (int p = 0; p < blocks; ++p) {
        const auto ra = a.restrict(parts[p], own_a, p);
        const auto rb = b.restrict(parts[p], own_b, p);
        if (ra.empty() || rb.empty() || ra != rb) return;
      }
      best = blocks - 1;
      return;
    }
    for (int c = 0; c <= blocks; ++c) {
      block_of[i] = c;
      rec(i + 1, std::max(blocks, c + 1));
    }
  };
  block_of[0] = 0;
  rec(1, 1);
  return best;
}

namespace {

bool connected_without(const std::vector<std::vector<NodeId>>& adj,
                       const std::vector<bool>& keep, NodeId skip) {
  NodeId start = -1;
  int total = 0;
  for (NodeId v = 0; v < static_cast<NodeId>(adj.size()); ++v)
    if (keep[v] && v != skip) {
      ++total;
      if (start < 0) start = v;
    }
  if (total <= 1) return true;
  std::vector<bool> seen(adj.size(), false);
  std::deque<NodeId> queue{start};
  seen[start] = true;
  int count = 1;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId w : adj[v])
      if (keep[w] && w != skip && !seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
  }
  return count == total;
}

}  // namespace

Network build_mycorrhizal(const std::vector<Network>& trees, const Network& root_component) {
  const Network& r = root_component;
  if (static_cast<int>(trees.size()) != r.leaf_count())
    throw CompositionInvalid("root component has " + std::to_string(r.leaf_count()) +
                             " leaves for " + std::to_string(trees.size()) + " trees");
  std::set<std::string> seen_taxa;
  for (const Network& t : trees) {
    if (t.reticulation_count() != 0) throw CompositionInvalid("tree component has reticulations");
    for (const auto& x : t.taxa())
      if (!seen_taxa.insert(x).second)
        throw CompositionInvalid("taxon '" + x + "' occurs in two trees");
  }

  std::vector<std::vector<NodeId>> adj(r.node_count());
  std::vector<bool> keep(r.node_count(), true);
  for (const Edge& e : r.edges()) {
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  keep[r.root()] = false;
  for (NodeId v : r.leaves()) keep[v] = false;
  if (!connected_without(adj, keep, -1))
    throw CompositionInvalid("root component core is not connected");
  const int core = static_cast<int>(std::count(keep.begin(), keep.end(), true));
  if (core > 2)
    for (NodeId v = 0; v < r.node_count(); ++v)
      if (keep[v] && !connected_without(adj, keep, v))
        throw CompositionInvalid("root component core has cut vertex " + std::to_string(v));

  std::vector<Edge> edges;
  std::map<NodeId, std::string> labels;
  std::map<NodeId, NodeId> graft;  // leaf of R -> top of its tree
  int next = r.node_count();
  const auto slots = r.taxa();
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const Network& t = trees[i];
    std::vector<NodeId> id(t.node_count(), -1);
    for (NodeId v = 0; v < t.node_count(); ++v)
      if (v != t.root()) id[v] = next++;
    for (const Edge& e : t.edges())
      if (e.tail != t.root()) edges.push_back({id[e.tail], id[e.head]});
    for (NodeId v : t.leaves()) labels[id[v]] = t.label(v);
    graft[*r.leaf_by_label(slots[i])] = id[t.child(t.root())];
  }
  for (const Edge& e : r.edges()) {
    auto it = graft.find(e.head);
    edges.push_back({e.tail, it == graft.end() ? e.head : it->second});
  }
  // The grafted leaves of R become isolated; give their ids to the last nodes.
  std::vector<NodeId> rename(next);
  for (NodeId v = 0; v < next; ++v) rename[v] = v;
  std::vector<NodeId> holes;
  for (const auto& [leaf, top] : graft) holes.push_back(leaf);
  NodeId last = next - 1;
  for (NodeId h : holes) {
    while (std::find(holes.begin(), holes.end(), last) != holes.end() && last > h) --last;
    if (last <= h) break;
    rename[last] = h;
    --last;
  }
  const int total = next - static_cast<int>(holes.size());
  for (Edge& e : edges) e = {rename[e.tail], rename[e.head]};
  std::map<NodeId, std::string> renamed;
  for (const auto& [v, l] : labels) renamed[rename[v]] = l;
  try {
    return Network::from_edges(total, std::move(edges), std::move(renamed));
  } catch (const StructureError& e) {
    throw CompositionInvalid(std::string("composed network is invalid: ") + e.what());
  }
}

}  // namespace tailmoves
