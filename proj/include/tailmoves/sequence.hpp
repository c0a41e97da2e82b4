#pragma once

#include <string>
#include <vector>

#include "tailmoves/canonical.hpp"
#include "tailmoves/moves.hpp"
#include "tailmoves/network.hpp"

namespace tailmoves {

struct SequenceStep {
  Move move;
  std::string tag;  // case of the construction that produced the move
};

struct MoveSequence {
  Network source;
  std::vector<SequenceStep> steps;
  std::vector<Network> intermediates;  // network after each step
  CanonicalCode target;

  std::size_t size() const { return steps.size(); }
  std::vector<Move> moves() const;
  const Network& endpoint() const { return intermediates.empty() ? source : intermediates.back(); }
};

// Re-applies every step from the source; true iff each is valid for its
// kind and the endpoint has the declared target code.
bool audit(const MoveSequence& seq);

// Tail moves only. Throws TierMismatch, or ExceptionalNetwork when either
// network is the two-leaf network without tail moves.
MoveSequence green_line_tail(const Network& from, const Network& to);
// Tail and head moves. Throws TierMismatch.
MoveSequence green_line_rspr(const Network& from, const Network& to);
// Distance-1 tail moves only.
MoveSequence tail1_sequence(const Network& from, const Network& to);

long tail_bound(int taxa, int k);   // 3(|X| + 2k)
long rspr_bound(int taxa, int k);   // 2|X| + 3k - 1
long tail1_bound(int taxa, int k);  // 3(|X| + 2k)(|X| + 3k - 1)
long decomposition_bound(int taxa, int k);  // |X| + 3k - 1

}  // namespace tailmoves
