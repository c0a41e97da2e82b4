#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tailmoves {

using NodeId = int;

struct Edge {
  NodeId tail = -1;
  NodeId head = -1;
  auto operator<=>(const Edge&) const = default;
};

enum class NodeRole { Root, Tree, Reticulation, Leaf };

const char* to_string(NodeRole role);

// A directed graph with a proposed leaf labelling, not yet known to be a
// network. Node ids are 0..node_count-1.
struct CandidateGraph {
  int node_count = 0;
  std::vector<Edge> edges;
  std::map<NodeId, std::string> leaf_labels;
};

enum class ViolationKind {
  EmptyGraph,
  BadNodeId,
  SelfLoop,
  ParallelEdge,
  Cycle,
  RootCount,
  BadDegree,
  UnlabeledLeaf,
  LabelOnNonLeaf,
  DuplicateLabel,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<NodeId> witness;  // nodes involved; cycles are listed in order
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string to_string() const;
};

ValidationReport validate(const CandidateGraph& graph);

struct Tier {
  std::vector<std::string> taxa;  // sorted, distinct
  int k = 0;
};

// Rooted binary phylogenetic network. Immutable once built; copies share the
// lazily computed reachability table.
class Network {
 public:
  // Throws StructureError carrying the validation report when the candidate
  // is not a network.
  static Network from_candidate(const CandidateGraph& graph);
  static Network from_edges(int node_count, std::vector<Edge> edges,
                            std::map<NodeId, std::string> leaf_labels);

  int node_count() const { return static_cast<int>(role_.size()); }
  int edge_count() const { return edge_count_; }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  int reticulation_count() const { return reticulation_count_; }

  NodeId root() const { return root_; }
  NodeRole role(NodeId v) const { return role_[v]; }
  bool is_leaf(NodeId v) const { return role_[v] == NodeRole::Leaf; }
  bool is_tree_node(NodeId v) const { return role_[v] == NodeRole::Tree; }
  bool is_reticulation(NodeId v) const {
    return role_[v] == NodeRole::Reticulation;
  }

  std::span<const NodeId> children(NodeId v) const { return children_[v]; }
  std::span<const NodeId> parents(NodeId v) const { return parents_[v]; }
  NodeId parent(NodeId v) const { return parents_[v].front(); }
  NodeId child(NodeId v) const { return children_[v].front(); }
  // Other child of tree node v, or other parent of reticulation v.
  NodeId other_child(NodeId v, NodeId c) const;
  NodeId other_parent(NodeId v, NodeId p) const;

  bool has_edge(NodeId tail, NodeId head) const;
  bool has_edge(Edge e) const { return has_edge(e.tail, e.head); }
  std::vector<Edge> edges() const;  // sorted

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<NodeId>& leaves() const { return leaves_; }
  std::optional<NodeId> leaf_by_label(const std::string& label) const;
  std::vector<std::string> taxa() const;  // sorted
  std::map<NodeId, std::string> leaf_labels() const;
  Tier tier() const { return {taxa(), reticulation_count_}; }

  // Reflexive reachability: true iff `to` can be reached from `from`.
  bool reaches(NodeId from, NodeId to) const;

  CandidateGraph to_candidate() const;

 private:
  Network() = default;
  struct Reachability;

  std::vector<NodeRole> role_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::string> labels_;
  std::vector<NodeId> leaves_;
  NodeId root_ = -1;
  int edge_count_ = 0;
  int reticulation_count_ = 0;
  std::shared_ptr<Reachability> reach_;
};

// |E| - |V| + 1; equals the number of reticulation nodes.
int reticulation_number(const Network& net);

bool is_above(const Network& net, NodeId a, NodeId b);
// An edge (x,y) is above b iff y is above b.
bool is_above(const Network& net, Edge a, NodeId b);

// Lowest common ancestors: common ancestors with no other common ancestor
// strictly below them. Sorted by node id.
std::vector<NodeId> lca_set(const Network& net, NodeId u, NodeId v);

bool is_downward_closed(const Network& net, const std::vector<bool>& members);
bool is_downward_closed(const Network& net, const std::vector<NodeId>& members);

}  // namespace tailmoves
