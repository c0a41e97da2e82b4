#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tailmoves/canonical.hpp"
#include "tailmoves/moves.hpp"
#include "tailmoves/network.hpp"

namespace tailmoves {

// Networks with more nodes than this are refused by the exhaustive routines.
inline constexpr int kDefaultMaxNodes = 12;
// Overrides of the limit above this value are refused as well.
inline constexpr int kMaxNodesCap = 16;

int node_count_of_tier(int taxa, int k);  // 2|X| + 2k

// Throws ScaleLimitExceeded if `nodes` exceeds `max_nodes`, or `max_nodes`
// exceeds the compiled cap.
void check_scale(int nodes, int max_nodes, const std::string& what);

struct TierCatalog {
  Tier tier;
  std::vector<Network> members;               // ordered by canonical code
  std::map<CanonicalCode, int> index;         // code -> position in members

  std::size_t size() const { return members.size(); }
  std::optional<int> find(const Network& net) const;
};

// Every rooted binary tree on `taxa` (root edge included), one per shape.
std::vector<Network> enumerate_trees(const std::vector<std::string>& taxa);

TierCatalog enumerate_tier(const Tier& tier, int max_nodes = kDefaultMaxNodes);

// Breadth-first search over canonical codes. nullopt when unreachable.
std::optional<int> exact_distance(const Network& from, const Network& to, MoveClass c,
                                  int max_nodes = kDefaultMaxNodes);

struct MoveGraph {
  const TierCatalog* catalog = nullptr;
  MoveClass move_class = MoveClass::Tail;
  std::vector<std::vector<int>> adjacency;  // sorted, loops dropped
};

MoveGraph build_move_graph(const TierCatalog& catalog, MoveClass c);
// Shortest path lengths from one vertex; -1 when unreachable.
std::vector<int> distances_from(const MoveGraph& g, int source);

struct MoveGraphStats {
  std::vector<int> component;           // vertex -> component index
  std::vector<int> component_sizes;
  std::vector<int> diameters;           // per component
  int component_count() const { return static_cast<int>(component_sizes.size()); }
};

MoveGraphStats move_graph_stats(const MoveGraph& g);
std::string move_graph_dot(const MoveGraph& g);

// Size of a maximum agreement forest minus one, by enumerating partitions of
// the taxa together with the root. Both networks must be trees on one taxon set.
int maf_distance(const Network& t1, const Network& t2, int max_taxa = 7);

// Grafts trees[i] onto the i-th leaf of `root_component` in label order.
// Throws CompositionInvalid.
Network build_mycorrhizal(const std::vector<Network>& trees, const Network& root_component);

}  // namespace tailmoves
