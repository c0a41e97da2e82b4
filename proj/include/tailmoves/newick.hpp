#pragma once

#include <string>
#include <string_view>

#include "tailmoves/network.hpp"
#include "tailmoves/unrooted.hpp"

namespace tailmoves {

// Extended Newick. Hybrid nodes are written `#Hn`; the occurrence carrying
// children defines the reticulation, the other is a reference. Internal
// names, branch lengths and [comments] are accepted and dropped.
Network parse_enewick(std::string_view text);
std::string write_enewick(const Network& net);

// Edge-list text: `u -- v` lines and `leaf <node> <label>` lines. Blank lines
// and `#` comments are ignored. Node names are arbitrary tokens.
UnrootedNetwork parse_edge_list(std::string_view text);
std::string write_edge_list(const UnrootedNetwork& net);

}  // namespace tailmoves
