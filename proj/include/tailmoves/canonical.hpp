#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "tailmoves/network.hpp"

namespace tailmoves {

struct CanonicalCode {
  std::string bytes;
  int taxa = 0;
  int k = 0;
  auto operator<=>(const CanonicalCode&) const = default;
};

struct CanonicalCodeHash {
  std::size_t operator()(const CanonicalCode& c) const noexcept {
    return std::hash<std::string>{}(c.bytes);
  }
};

// Input to the shared refinement engine. For undirected graphs `in` is left
// empty and `out` holds the symmetric neighbourhoods.
struct ColoredGraph {
  std::vector<std::string> keys;  // initial colour key per node
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> in;
  bool directed = true;
};

struct CanonicalLabeling {
  std::string code;
  std::vector<int> order;  // order[i] is the node placed at canonical index i
  std::vector<int> index;  // inverse of order
};

CanonicalLabeling canonical_labeling(const ColoredGraph& g);

struct CanonicalForm {
  CanonicalCode code;
  std::vector<NodeId> order;
  std::vector<int> index;
};

CanonicalForm canonical_form(const Network& net);
CanonicalCode canonical_code(const Network& net);

// Label-respecting isomorphism a -> b (result[v] is the image of v), if any.
std::optional<std::vector<NodeId>> find_isomorphism(const Network& a,
                                                    const Network& b);
bool isomorphic(const Network& a, const Network& b);

}  // namespace tailmoves
