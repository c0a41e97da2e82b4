#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailmoves/canonical.hpp"
#include "tailmoves/network.hpp"

namespace tailmoves {

// Undirected edge, normalised so that a < b.
struct UEdge {
  NodeId a = -1;
  NodeId b = -1;
  UEdge() = default;
  UEdge(NodeId x, NodeId y) : a(x < y ? x : y), b(x < y ? y : x) {}
  auto operator<=>(const UEdge&) const = default;
};

// Connected graph whose nodes have degree 1 (labelled leaves) or 3, with no
// parallel edges and at least two leaves.
class UnrootedNetwork {
 public:
  // Throws TooFewLeaves for fewer than two leaves and StructureError for any
  // other defect.
  static UnrootedNetwork from_edges(int node_count, const std::vector<UEdge>& edges,
                                    std::map<NodeId, std::string> leaf_labels);

  int node_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return edge_count_; }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  int reticulation_number() const { return edge_count_ - node_count() + 1; }

  std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
  int degree(NodeId v) const { return static_cast<int>(adj_[v].size()); }
  bool is_leaf(NodeId v) const { return adj_[v].size() == 1; }
  bool has_edge(NodeId a, NodeId b) const;
  std::vector<UEdge> edges() const;  // sorted

  const std::string& label(NodeId v) const { return labels_[v]; }
  const std::vector<NodeId>& leaves() const { return leaves_; }
  std::optional<NodeId> leaf_by_label(const std::string& label) const;
  std::vector<std::string> taxa() const;
  std::map<NodeId, std::string> leaf_labels() const;

 private:
  UnrootedNetwork() = default;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<std::string> labels_;
  std::vector<NodeId> leaves_;
  int edge_count_ = 0;
};

CanonicalForm unrooted_canonical_form(const UnrootedNetwork& net);
CanonicalCode unrooted_code(const UnrootedNetwork& net);
std::optional<std::vector<NodeId>> find_unrooted_isomorphism(
    const UnrootedNetwork& a, const UnrootedNetwork& b);
bool unrooted_isomorphic(const UnrootedNetwork& a, const UnrootedNetwork& b);

// Forgets edge directions. The root stays in the graph as a leaf carrying
// `root_label` (extended with '_' until it is not a taxon). Node ids are kept.
UnrootedNetwork underlying(const Network& net, const std::string& root_label = "rho");

struct BlobDecomposition {
  std::vector<UEdge> bridges;
  std::vector<UEdge> redundant_bridges;
  std::vector<std::vector<NodeId>> blobs;  // each sorted, blobs sorted
  std::vector<int> terminal_components;    // indices into blobs
  std::vector<int> component;              // node -> index into blobs, or -1
};

BlobDecomposition decompose(const UnrootedNetwork& net);
bool is_rootable(const UnrootedNetwork& net);

// Rooted network on the same node ids whose root is leaf r. Throws Unrootable
// naming a redundant bridge.
Network root_at(const UnrootedNetwork& net, NodeId r);

// Moves the `end` side of edge {end, other} onto `target`.
struct SprMove {
  NodeId end = -1;
  NodeId other = -1;
  UEdge target;
  auto operator<=>(const SprMove&) const = default;
};

std::optional<UnrootedNetwork> try_apply_spr(const UnrootedNetwork& net, const SprMove& m);
UnrootedNetwork apply_spr(const UnrootedNetwork& net, const SprMove& m);  // throws InvalidMove
// A move on the result of m that restores a network isomorphic to `before`.
SprMove reverse_spr(const UnrootedNetwork& before, const SprMove& m);

struct Elimination {
  UnrootedNetwork result;
  std::vector<SprMove> moves;
  int components = 0;  // terminal components present initially
};

Elimination eliminate_terminal_components(const UnrootedNetwork& net);

struct SprSequence {
  std::vector<SprMove> moves;
  std::vector<UnrootedNetwork> intermediates;  // network after each move
  int elimination_source = 0;
  int elimination_target = 0;
};

// Throws TierMismatch when the taxa or reticulation numbers differ.
SprSequence spr_sequence(const UnrootedNetwork& from, const UnrootedNetwork& to);

long spr_sequence_bound(int taxa, int k);

}  // namespace tailmoves
