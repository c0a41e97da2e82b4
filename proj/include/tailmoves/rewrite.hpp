#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tailmoves/moves.hpp"
#include "tailmoves/network.hpp"

namespace tailmoves {

// Local picture of a distance-1 head move of (u,v). Which names are bound
// depends on the case:
//   a  other parent z is a tree node, target (z,y), y the other child of z
//   b  child z is a reticulation, target (y,z), y the other parent of z
//   c  child z is a tree node, target (z,x)
//   d  child z is a reticulation, target (z,w), w the child of z
//   e  other parent z is a tree node, target (w,z), w the parent of z
//   f  other parent z is a reticulation, target (y,z)
struct HeadCase {
  char letter = '?';
  NodeId u = -1, v = -1, w = -1, x = -1, y = -1, z = -1;
  bool u_eq_w = false;
  bool x_eq_y = false;
  bool u_eq_y = false;
};

// Throws NotDistanceOne unless m is a valid head move of distance 1.
HeadCase classify_head_move(const Network& net, const Move& m);

struct RewritePlan {
  Move original;
  std::vector<Move> replacement;  // tail moves, valid in sequence
  std::string tag;
};

// The network with two leaves and one reticulation in which every tail move
// yields an isomorphic network.
bool is_exceptional(const Network& net);

// Throws ExceptionalNetwork or NotDistanceOne.
RewritePlan rewrite_head_move(const Network& net, const Move& m);

// Applies tail moves in order; nullopt as soon as one is not applicable.
std::optional<Network> replay_tail(const Network& net, const std::vector<Move>& moves);

// Reverses a sequence that turns `from` into a network isomorphic to `to`:
// the result turns `to` into a network isomorphic to `from`.
std::vector<Move> reverse_sequence(const Network& from, const std::vector<Move>& moves,
                                   const Network& to);

// Distance-1 tail moves along shortest directed paths from an LCA of the
// moving tail and the target tail. Throws InvalidMove.
std::vector<Move> decompose_tail_move(const Network& net, const Move& m);

}  // namespace tailmoves
