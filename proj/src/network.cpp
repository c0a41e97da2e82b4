#include "tailmoves/network.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "tailmoves/errors.hpp"

namespace tailmoves {

const char* to_string(NodeRole role) {
  switch (role) {
    case NodeRole::Root: return "root";
    case NodeRole::Tree: return "tree";
    case NodeRole::Reticulation: return "reticulation";
    case NodeRole::Leaf: return "leaf";
  }
  return "?";
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptyGraph: return "empty-graph";
    case ViolationKind::BadNodeId: return "bad-node-id";
    case ViolationKind::SelfLoop: return "self-loop";
    case ViolationKind::ParallelEdge: return "parallel-edge";
    case ViolationKind::Cycle: return "cycle";
    case ViolationKind::RootCount: return "root-count";
    case ViolationKind::BadDegree: return "bad-degree";
    case ViolationKind::UnlabeledLeaf: return "unlabeled-leaf";
    case ViolationKind::LabelOnNonLeaf: return "label-on-non-leaf";
    case ViolationKind::DuplicateLabel: return "duplicate-label";
  }
  return "?";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << tailmoves::to_string(v.kind);
    if (!v.witness.empty()) {
      out << " [";
      for (std::size_t i = 0; i < v.witness.size(); ++i)
        out << (i ? " " : "") << v.witness[i];
      out << "]";
    }
    if (!v.detail.empty()) out << " " << v.detail;
    out << "\n";
  }
  return out.str();
}

namespace {

// Finds one directed cycle among the nodes Kahn's algorithm could not remove.
std::vector<NodeId> cycle_witness(const std::vector<std::vector<NodeId>>& out,
                                  const std::vector<int>& indeg_left) {
  const int n = static_cast<int>(out.size());
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<NodeId> stack;
  std::vector<NodeId> found;
  auto dfs = [&](auto&& self, NodeId v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    for (NodeId w : out[v]) {
      if (indeg_left[w] == 0) continue;
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        found.assign(it, stack.end());
        return true;
      }
      if (state[w] == 0 && self(self, w)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (NodeId v = 0; v < n; ++v)
    if (indeg_left[v] > 0 && state[v] == 0 && dfs(dfs, v)) break;
  return found;
}

}  // namespace

ValidationReport validate(const CandidateGraph& graph) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::vector<NodeId> witness,
                 std::string detail = {}) {
    report.violations.push_back({kind, std::move(witness), std::move(detail)});
  };
  const int n = graph.node_count;
  if (n <= 0) {
    add(ViolationKind::EmptyGraph, {});
    return report;
  }
  std::vector<std::vector<NodeId>> out(n), in(n);
  std::set<Edge> seen;
  for (const Edge& e : graph.edges) {
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) {
      add(ViolationKind::BadNodeId, {e.tail, e.head});
      continue;
    }
    if (e.tail == e.head) {
      add(ViolationKind::SelfLoop, {e.tail});
      continue;
    }
    if (!seen.insert(e).second) {
      add(ViolationKind::ParallelEdge, {e.tail, e.head});
      continue;
    }
    out[e.tail].push_back(e.head);
    in[e.head].push_back(e.tail);
  }
  for (const auto& [v, label] : graph.leaf_labels)
    if (v < 0 || v >= n) add(ViolationKind::BadNodeId, {v}, "label " + label);

  std::vector<NodeId> roots;
  for (NodeId v = 0; v < n; ++v) {
    const auto ind = in[v].size(), outd = out[v].size();
    if (ind == 0 && outd == 1) {
      roots.push_back(v);
    } else if (!((ind == 1 && outd == 2) || (ind == 2 && outd == 1) ||
                 (ind == 1 && outd == 0))) {
      add(ViolationKind::BadDegree, {v},
          "in=" + std::to_string(ind) + " out=" + std::to_string(outd));
    }
  }
  if (roots.size() != 1)
    add(ViolationKind::RootCount, roots,
        std::to_string(roots.size()) + " nodes with in=0 out=1");

  std::vector<int> indeg(n);
  for (NodeId v = 0; v < n; ++v) indeg[v] = static_cast<int>(in[v].size());
  std::vector<NodeId> queue;
  for (NodeId v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (NodeId w : out[queue[i]])
      if (--indeg[w] == 0) queue.push_back(w);
  if (static_cast<int>(queue.size()) != n)
    add(ViolationKind::Cycle, cycle_witness(out, indeg));

  std::map<std::string, NodeId> by_label;
  for (NodeId v = 0; v < n; ++v) {
    const bool leaf = in[v].size() == 1 && out[v].empty();
    auto it = graph.leaf_labels.find(v);
    if (leaf && (it == graph.leaf_labels.end() || it->second.empty()))
      add(ViolationKind::UnlabeledLeaf, {v});
    if (!leaf && it != graph.leaf_labels.end())
      add(ViolationKind::LabelOnNonLeaf, {v}, it->second);
    if (it != graph.leaf_labels.end() && !it->second.empty()) {
      auto [pos, inserted] = by_label.emplace(it->second, v);
      if (!inserted)
        add(ViolationKind::DuplicateLabel, {pos->second, v}, it->second);
    }
  }
  return report;
}

struct Network::Reachability {
  std::once_flag once;
  int words = 0;
  std::vector<std::uint64_t> bits;  // row-major, one row per node
};

Network Network::from_candidate(const CandidateGraph& graph) {
  auto report = validate(graph);
  if (!report.ok()) throw StructureError(report.to_string());
  Network net;
  const int n = graph.node_count;
  net.role_.resize(n);
  net.children_.resize(n);
  net.parents_.resize(n);
  net.labels_.resize(n);
  for (const Edge& e : graph.edges) {
    net.children_[e.tail].push_back(e.head);
    net.parents_[e.head].push_back(e.tail);
  }
  for (NodeId v = 0; v < n; ++v) {
    std::sort(net.children_[v].begin(), net.children_[v].end());
    std::sort(net.parents_[v].begin(), net.parents_[v].end());
    const auto ind = net.parents_[v].size(), outd = net.children_[v].size();
    if (ind == 0) {
      net.role_[v] = NodeRole::Root;
      net.root_ = v;
    } else if (outd == 0) {
      net.role_[v] = NodeRole::Leaf;
      net.leaves_.push_back(v);
      net.labels_[v] = graph.leaf_labels.at(v);
    } else if (ind == 2) {
      net.role_[v] = NodeRole::Reticulation;
      ++net.reticulation_count_;
    } else {
      net.role_[v] = NodeRole::Tree;
    }
  }
  net.edge_count_ = static_cast<int>(graph.edges.size());
  net.reach_ = std::make_shared<Reachability>();
  return net;
}

Network Network::from_edges(int node_count, std::vector<Edge> edges,
                            std::map<NodeId, std::string> leaf_labels) {
  return from_candidate({node_count, std::move(edges), std::move(leaf_labels)});
}

NodeId Network::other_child(NodeId v, NodeId c) const {
  const auto& ch = children_[v];
  return ch.size() == 2 ? (ch[0] == c ? ch[1] : ch[0]) : -1;
}

NodeId Network::other_parent(NodeId v, NodeId p) const {
  const auto& pa = parents_[v];
  return pa.size() == 2 ? (pa[0] == p ? pa[1] : pa[0]) : -1;
}

bool Network::has_edge(NodeId tail, NodeId head) const {
  if (tail < 0 || tail >= node_count() || head < 0 || head >= node_count())
    return false;
  const auto& ch = children_[tail];
  return std::find(ch.begin(), ch.end(), head) != ch.end();
}

std::vector<Edge> Network::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (NodeId v = 0; v < node_count(); ++v)
    for (NodeId c : children_[v]) result.push_back({v, c});
  return result;
}

std::optional<NodeId> Network::leaf_by_label(const std::string& label) const {
  for (NodeId v : leaves_)
    if (labels_[v] == label) return v;
  return std::nullopt;
}

std::vector<std::string> Network::taxa() const {
  std::vector<std::string> result;
  for (NodeId v : leaves_) result.push_back(labels_[v]);
  std::sort(result.begin(), result.end());
  return result;
}

std::map<NodeId, std::string> Network::leaf_labels() const {
  std::map<NodeId, std::string> result;
  for (NodeId v : leaves_) result.emplace(v, labels_[v]);
  return result;
}

CandidateGraph Network::to_candidate() const {
  return {node_count(), edges(), leaf_labels()};
}

bool Network::reaches(NodeId from, NodeId to) const {
  std::call_once(reach_->once, [this] {
    const int n = node_count();
    reach_->words = (n + 63) / 64;
    reach_->bits.assign(static_cast<std::size_t>(n) * reach_->words, 0);
    // Post-order from the root gives a reverse topological order.
    std::vector<NodeId> order;
    std::vector<char> seen(n, 0);
    auto dfs = [&](auto&& self, NodeId v) -> void {
      seen[v] = 1;
      for (NodeId c : children_[v])
        if (!seen[c]) self(self, c);
      order.push_back(v);
    };
    dfs(dfs, root_);
    for (NodeId v : order) {
      std::uint64_t* row = &reach_->bits[static_cast<std::size_t>(v) * reach_->words];
      row[v / 64] |= std::uint64_t{1} << (v % 64);
      for (NodeId c : children_[v]) {
        const std::uint64_t* crow =
            &reach_->bits[static_cast<std::size_t>(c) * reach_->words];
        for (int w = 0; w < reach_->words; ++w) row[w] |= crow[w];
      }
    }
  });
  return (reach_->bits[static_cast<std::size_t>(from) * reach_->words + to / 64] >>
          (to % 64)) & 1U;
}

int reticulation_number(const Network& net) {
  return net.edge_count() - net.node_count() + 1;
}

bool is_above(const Network& net, NodeId a, NodeId b) {
  return net.reaches(a, b);
}

bool is_above(const Network& net, Edge a, NodeId b) {
  return net.reaches(a.head, b);
}

std::vector<NodeId> lca_set(const Network& net, NodeId u, NodeId v) {
  std::vector<NodeId> common;
  for (NodeId x = 0; x < net.node_count(); ++x)
    if (net.reaches(x, u) && net.reaches(x, v)) common.push_back(x);
  std::vector<NodeId> lowest;
  for (NodeId x : common) {
    bool has_lower = false;
    for (NodeId y : common)
      if (y != x && net.reaches(x, y)) {
        has_lower = true;
        break;
      }
    if (!has_lower) lowest.push_back(x);
  }
  return lowest;
}

bool is_downward_closed(const Network& net, const std::vector<bool>& members) {
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!members[v]) continue;
    for (NodeId c : net.children(v))
      if (!members[c]) return false;
  }
  return true;
}

bool is_downward_closed(const Network& net, const std::vector<NodeId>& members) {
  std::vector<bool> mask(net.node_count(), false);
  for (NodeId v : members) mask.at(v) = true;
  return is_downward_closed(net, mask);
}

}  // namespace tailmoves
