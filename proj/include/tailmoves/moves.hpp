#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "tailmoves/network.hpp"

namespace tailmoves {

enum class MoveKind { Tail, Head };

// Relocates the tail (or head) of `moving` onto `target`. Applying a move
// keeps the node count and reuses the id of the detached endpoint for the
// node that subdivides the target, so ids stay stable along a sequence.
struct Move {
  MoveKind kind = MoveKind::Tail;
  Edge moving;
  Edge target;
  auto operator<=>(const Move&) const = default;
};

std::string to_string(const Move& m);  // raw ids, e.g. "tail (3,4)->(0,1)"

enum class MoveClass { Tail, Head, RSPR, Tail1, Head1, RNNI };

const char* to_string(MoveClass c);
std::optional<MoveClass> parse_move_class(const std::string& name);
bool includes_tail(MoveClass c);
bool includes_head(MoveClass c);
bool distance_one_only(MoveClass c);

struct Triangle {
  NodeId apex = -1;
  NodeId side = -1;
  NodeId base = -1;
  Edge long_edge() const { return {apex, base}; }
  Edge bottom_edge() const { return {side, base}; }
};

bool is_movable(const Network& net, Edge e);
bool can_apply(const Network& net, const Move& m);

// Performs the surgery and validates; nullopt if the result is not a network.
std::optional<Network> try_apply(const Network& net, const Move& m);
// Throws InvalidMove naming the violated condition.
Network apply(const Network& net, const Move& m);

// Shortest undirected path length minus one between the detached endpoint
// and the subdivision node, measured before suppression.
int move_distance(const Network& net, const Move& m);

// Valid moves of the class in deterministic order. With skip_trivial, moves
// whose result is isomorphic to the input are dropped.
std::vector<Move> enumerate_moves(const Network& net, MoveClass c,
                                  bool skip_trivial = false);

std::optional<Triangle> find_triangle(const Network& net, NodeId u);

// A movable child edge of an LCA of x and y. Throws PreconditionViolated if
// x or y is itself an LCA of the pair.
Edge movable_edge_avoiding(const Network& net, NodeId x, NodeId y);

// A move on apply(before, m) whose result is isomorphic to `before`.
Move reverse_move(const Network& before, const Move& m);

}  // namespace tailmoves
