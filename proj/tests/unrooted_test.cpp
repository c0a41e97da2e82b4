#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tailmoves/errors.hpp"
#include "tailmoves/oracle.hpp"
#include "tailmoves/sequence.hpp"
#include "tailmoves/unrooted.hpp"

using namespace tailmoves;

namespace {

// Leaves a, b on a path; the middle path node carries a pendant bridge to a
// leafless K4. a=0 b=1 p=2 q=3 r=4 s=5 t=6 u=7
UnrootedNetwork unrootable() {
  return UnrootedNetwork::from_edges(
      8, {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}},
      {{0, "a"}, {1, "b"}});
}

std::vector<UnrootedNetwork> pool() {
  std::vector<UnrootedNetwork> out;
  for (int k = 0; k <= 2; ++k)
    for (const auto& n : enumerate_tier({{"a", "b", "c"}, k}).members) out.push_back(underlying(n));
  for (int k = 0; k <= 2; ++k)
    for (const auto& n : enumerate_tier({{"a", "b"}, k}).members) out.push_back(underlying(n));
  return out;
}

bool undirected_acyclic_orientation(const Network& n) {
  const auto r = oracle::closure(n);
  for (int a = 0; a < n.node_count(); ++a)
    for (int b = 0; b < n.node_count(); ++b)
      if (a != b && r[a][b] && r[b][a]) return false;
  return true;
}

}  // namespace

TEST(Unrooted, FromEdgesChecks) {
  EXPECT_THROW(UnrootedNetwork::from_edges(2, {{0, 1}}, {{0, "a"}}), Error);
  EXPECT_THROW(UnrootedNetwork::from_edges(3, {{0, 1}, {1, 2}}, {{0, "a"}, {2, "b"}}),
               StructureError);
  EXPECT_NO_THROW(UnrootedNetwork::from_edges(2, {{0, 1}}, {{0, "a"}, {1, "b"}}));
}

TEST(Underlying, DegreesAndReticulationNumber) {
  for (int k = 0; k <= 2; ++k)
    for (const auto& n : enumerate_tier({{"a", "b", "c"}, k}).members) {
      const auto u = underlying(n);
      for (int v = 0; v < u.node_count(); ++v) EXPECT_TRUE(u.degree(v) == 1 || u.degree(v) == 3);
      EXPECT_EQ(u.reticulation_number(), n.reticulation_count());
      EXPECT_EQ(u.leaf_count(), n.leaf_count() + 1);
    }
  const auto cherry = underlying(parse_enewick("(a,b);"));
  EXPECT_EQ(cherry.taxa(), (std::vector<std::string>{"a", "b", "rho"}));
  EXPECT_EQ(underlying(parse_enewick("(rho,a);")).leaf_count(), 3);
}

TEST(Underlying, IsomorphicInputsGiveIsomorphicOutputs) {
  std::mt19937 rng(17);
  for (const auto& n : enumerate_tier({{"a", "b", "c"}, 1}).members)
    EXPECT_EQ(unrooted_code(underlying(oracle::shuffled(n, rng))), unrooted_code(underlying(n)));
}

TEST(Decompose, Tree) {
  const auto u = underlying(parse_enewick("((a,b),(c,d));"));
  const auto d = decompose(u);
  EXPECT_EQ(d.bridges.size(), static_cast<std::size_t>(u.edge_count()));
  EXPECT_TRUE(d.redundant_bridges.empty());
  EXPECT_TRUE(d.blobs.empty());
  EXPECT_TRUE(is_rootable(u));
}

TEST(Decompose, PendantLeaflessBlob) {
  const auto u = unrootable();
  const auto d = decompose(u);
  EXPECT_EQ(d.bridges, (std::vector<UEdge>{{0, 2}, {1, 2}, {2, 3}}));
  EXPECT_EQ(d.redundant_bridges, (std::vector<UEdge>{{2, 3}}));
  ASSERT_EQ(d.blobs.size(), 1u);
  EXPECT_EQ(d.blobs[0], (std::vector<NodeId>{3, 4, 5, 6, 7}));
  EXPECT_EQ(d.terminal_components, std::vector<int>{0});
  EXPECT_FALSE(is_rootable(u));
  try {
    root_at(u, 0);
    FAIL();
  } catch (const Unrootable& e) {
    EXPECT_NE(std::string(e.what()).find("{2,3}"), std::string::npos) << e.what();
  }
}

TEST(Decompose, BlobsAndBridgesByDefinition) {
  for (const auto& u : pool()) {
    const auto d = decompose(u);
    // a bridge disconnects the graph when removed
    for (const UEdge& e : u.edges()) {
      std::vector<bool> seen(u.node_count(), false);
      std::vector<int> stack{0};
      seen[0] = true;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : u.neighbors(v))
          if (!seen[w] && UEdge(v, w) != e) {
            seen[w] = true;
            stack.push_back(w);
          }
      }
      const bool cut = std::count(seen.begin(), seen.end(), false) > 0;
      EXPECT_EQ(cut, std::count(d.bridges.begin(), d.bridges.end(), e) == 1);
    }
    EXPECT_TRUE(d.redundant_bridges.empty());
    EXPECT_TRUE(is_rootable(u));
  }
}

TEST(RootAt, ProducesAnOrientationOfTheGraph) {
  for (const auto& u : pool())
    for (NodeId r : u.leaves()) {
      const auto n = root_at(u, r);
      EXPECT_TRUE(validate(n.to_candidate()).ok());
      EXPECT_TRUE(undirected_acyclic_orientation(n));
      EXPECT_EQ(n.root(), r);
      EXPECT_TRUE(unrooted_isomorphic(underlying(n, u.label(r)), u));
    }
}

TEST(RootAt, RootabilityAgreesWithTryingEveryLeaf) {
  auto nets = pool();
  nets.push_back(unrootable());
  for (const auto& u : nets) {
    bool some = false;
    for (NodeId r : u.leaves()) {
      try {
        root_at(u, r);
        some = true;
      } catch (const Unrootable&) {
      }
    }
    EXPECT_EQ(some, is_rootable(u));
  }
}

TEST(Spr, PreservesCounts) {
  for (const auto& u : pool())
    for (const UEdge& e : u.edges())
      for (const UEdge& f : u.edges())
        if (auto r = try_apply_spr(u, {e.a, e.b, f})) {
          EXPECT_EQ(r->node_count(), u.node_count());
          EXPECT_EQ(r->edge_count(), u.edge_count());
          const auto back = reverse_spr(u, {e.a, e.b, f});
          EXPECT_TRUE(unrooted_isomorphic(apply_spr(*r, back), u));
        }
}

TEST(Eliminate, RootableInputUnchanged) {
  for (const auto& u : pool()) {
    const auto e = eliminate_terminal_components(u);
    EXPECT_TRUE(e.moves.empty());
    EXPECT_EQ(e.components, 0);
    EXPECT_TRUE(unrooted_isomorphic(e.result, u));
  }
}

TEST(Eliminate, OneTerminalComponent) {
  const auto u = unrootable();
  EXPECT_EQ(u.reticulation_number(), 3);
  const auto d = decompose(u);
  EXPECT_LE(3 * static_cast<int>(d.terminal_components.size()), u.reticulation_number());
  const auto& blob = d.blobs[d.terminal_components[0]];
  int inner = 0;
  for (NodeId v : blob)
    for (NodeId w : u.neighbors(v))
      if (v < w && std::count(blob.begin(), blob.end(), w)) ++inner;
  // with its bridge the component adds at least 3 to k
  EXPECT_GE(blob.size(), 5u);
  EXPECT_GE(inner + 1 - static_cast<int>(blob.size()), 3);
  const auto e = eliminate_terminal_components(u);
  EXPECT_EQ(e.components, 1);
  ASSERT_EQ(e.moves.size(), 1u);
  EXPECT_TRUE(is_rootable(e.result));
  EXPECT_EQ(e.result.reticulation_number(), 3);
  EXPECT_TRUE(unrooted_isomorphic(apply_spr(u, e.moves[0]), e.result));
}

TEST(SprSequence, PairsWithinBound) {
  std::vector<UnrootedNetwork> nets;
  for (const auto& n : enumerate_tier({{"a", "b", "c"}, 1}).members) nets.push_back(underlying(n));
  // leaf count includes the root leaf, so 4 taxa and k = 1
  EXPECT_EQ(spr_sequence_bound(4, 1), rspr_bound(4, 1));
  EXPECT_EQ(spr_sequence_bound(3, 1), 8);
  for (const auto& a : nets)
    for (const auto& b : nets) {
      const auto s = spr_sequence(a, b);
      EXPECT_LE(static_cast<long>(s.moves.size()), spr_sequence_bound(a.leaf_count(), 1));
      UnrootedNetwork cur = a;
      for (std::size_t i = 0; i < s.moves.size(); ++i) {
        const auto r = try_apply_spr(cur, s.moves[i]);
        ASSERT_TRUE(r);
        EXPECT_TRUE(unrooted_isomorphic(*r, s.intermediates[i]));
        cur = *r;
      }
      EXPECT_EQ(unrooted_code(cur), unrooted_code(b));
      if (unrooted_isomorphic(a, b)) EXPECT_TRUE(s.moves.empty());
    }
}

TEST(SprSequence, UnrootableEndpoints) {
  const auto u = unrootable();
  const auto v = underlying(enumerate_tier({{"a"}, 3}).members.front(), "b");
  ASSERT_EQ(v.reticulation_number(), 3);
  for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}, std::pair{u, u}}) {
    const auto s = spr_sequence(x, y);
    EXPECT_LE(static_cast<long>(s.moves.size()), spr_sequence_bound(2, 3));
    UnrootedNetwork cur = x;
    for (const auto& m : s.moves) cur = apply_spr(cur, m);
    EXPECT_TRUE(unrooted_isomorphic(cur, y));
  }
}

TEST(SprSequence, TierMismatch) {
  const auto a = underlying(parse_enewick("((a,b),c);"));
  const auto b = underlying(enumerate_tier({{"a", "b", "c"}, 1}).members.front());
  EXPECT_THROW(spr_sequence(a, b), TierMismatch);
}
