#include <gtest/gtest.h>

#include "support.hpp"
#include "tailmoves/errors.hpp"
#include "tailmoves/oracle.hpp"
#include "tailmoves/verify.hpp"

using namespace tailmoves;

namespace {

// Closure of one member under every surgery, deduplicated by canonical code.
std::set<CanonicalCode> closure_of(const Network& seed) {
  std::set<CanonicalCode> seen{canonical_code(seed)};
  std::vector<Network> todo{seed};
  while (!todo.empty()) {
    Network n = todo.back();
    todo.pop_back();
    for (MoveKind kind : {MoveKind::Tail, MoveKind::Head})
      for (const Move& m : oracle::brute_moves(n, kind)) {
        Network r = *oracle::surgery(n, m);
        if (seen.insert(canonical_code(r)).second) todo.push_back(r);
      }
  }
  return seen;
}

long double_factorial(int n) { return n <= 1 ? 1 : n * double_factorial(n - 2); }

}  // namespace

TEST(EnumerateTier, TreeCounts) {
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(static_cast<long>(enumerate_trees(first_taxa(n)).size()), double_factorial(2 * n - 3));
}

TEST(EnumerateTier, MembersAreDistinctAndValid) {
  for (const Tier& tr : {Tier{{"a", "b", "c"}, 1}, Tier{{"a", "b"}, 2}, Tier{{"a"}, 3}}) {
    const auto cat = enumerate_tier(tr);
    std::set<CanonicalCode> codes;
    std::mt19937 rng(1);
    for (std::size_t i = 0; i < cat.size(); ++i) {
      const auto& n = cat.members[i];
      EXPECT_TRUE(validate(n.to_candidate()).ok());
      EXPECT_EQ(n.taxa(), tr.taxa);
      EXPECT_EQ(n.reticulation_count(), tr.k);
      EXPECT_TRUE(codes.insert(canonical_code(n)).second);
      EXPECT_EQ(cat.find(oracle::shuffled(n, rng)), static_cast<int>(i));
    }
  }
}

TEST(EnumerateTier, MatchesMoveClosure) {
  for (const Tier& tr : {Tier{{"a"}, 2}, Tier{{"a"}, 3}, Tier{{"a", "b"}, 1}, Tier{{"a", "b"}, 2},
                         Tier{{"a", "b", "c"}, 1}}) {
    const auto cat = enumerate_tier(tr);
    std::set<CanonicalCode> listed;
    for (const auto& n : cat.members) listed.insert(canonical_code(n));
    EXPECT_EQ(closure_of(cat.members.front()), listed);
  }
}

TEST(EnumerateTier, ScaleGuard) {
  EXPECT_EQ(node_count_of_tier(3, 2), 10);
  EXPECT_THROW(enumerate_tier({first_taxa(4), 3}), ScaleLimitExceeded);
  EXPECT_THROW(enumerate_tier({first_taxa(2), 1}, kMaxNodesCap + 1), ScaleLimitExceeded);
  EXPECT_NO_THROW(check_scale(12, 12, "x"));
  EXPECT_THROW(check_scale(13, 12, "x"), ScaleLimitExceeded);
}

TEST(ExactDistance, MatchesBruteBfs) {
  const auto cat = enumerate_tier({{"a", "b"}, 2});
  for (const auto& a : cat.members)
    for (const auto& b : cat.members) {
      EXPECT_EQ(exact_distance(a, b, MoveClass::Tail), oracle::brute_distance(a, b, true, false));
      EXPECT_EQ(exact_distance(a, b, MoveClass::RSPR), oracle::brute_distance(a, b, true, true));
    }
}

TEST(ExactDistance, Errors) {
  EXPECT_THROW(exact_distance(parse_enewick("(a,b);"), parse_enewick("((a,b),c);"), MoveClass::Tail),
               TierMismatch);
  const auto big = parse_enewick("(((a,b),(c,d)),((e,f),g));");
  EXPECT_THROW(exact_distance(big, big, MoveClass::Tail), ScaleLimitExceeded);
}

TEST(MoveGraph, ExceptionalTierIsDisconnected) {
  const auto cat = enumerate_tier({{"a", "b"}, 1});
  const auto g = build_move_graph(cat, MoveClass::Tail);
  EXPECT_EQ(move_graph_stats(g).component_count(), 2);
  EXPECT_EQ(move_graph_stats(build_move_graph(cat, MoveClass::RSPR)).component_count(), 1);
}

TEST(MoveGraph, DistancesAgreeWithExactDistance) {
  const auto cat = enumerate_tier({{"a", "b", "c"}, 1});
  for (MoveClass c : {MoveClass::Tail, MoveClass::RSPR, MoveClass::Tail1, MoveClass::RNNI}) {
    const auto g = build_move_graph(cat, c);
    const auto st = move_graph_stats(g);
    EXPECT_EQ(st.component_count(), 1) << to_string(c);
    int diameter = 0;
    for (std::size_t i = 0; i < cat.size(); ++i) {
      const auto d = distances_from(g, static_cast<int>(i));
      for (std::size_t j = 0; j < cat.size(); j += 7) {
        EXPECT_EQ(d[j], *exact_distance(cat.members[i], cat.members[j], c));
      }
      for (int x : d) diameter = std::max(diameter, x);
    }
    EXPECT_EQ(st.diameters[0], diameter);
  }
  const auto dot = move_graph_dot(build_move_graph(cat, MoveClass::Tail));
  EXPECT_EQ(dot.rfind("graph", 0), 0u);
}

TEST(Maf, SmallValues) {
  const auto t1 = parse_enewick("((a,b),c);");
  const auto t2 = parse_enewick("((a,c),b);");
  EXPECT_EQ(maf_distance(t1, t1), 0);
  EXPECT_EQ(maf_distance(t1, t2), 1);
  EXPECT_EQ(maf_distance(parse_enewick("(((a,b),c),d);"), parse_enewick("(((c,d),a),b);")), 2);
}

TEST(Maf, EqualsTreeRsprDistance) {
  const auto trees = enumerate_trees(first_taxa(4));
  for (const auto& a : trees)
    for (const auto& b : trees)
      EXPECT_EQ(maf_distance(a, b), *oracle::brute_distance(a, b, true, false));
}

TEST(Mycorrhizal, GraftsTreesOntoTheCore) {
  const auto core = parse_enewick("((x1,(x2)#H1),#H1);");
  const auto left = parse_enewick("((a,b),c);");
  const auto right = parse_enewick("(d,e);");
  const auto n = build_mycorrhizal({left, right}, core);
  EXPECT_TRUE(validate(n.to_candidate()).ok());
  EXPECT_EQ(n.taxa(), (std::vector<std::string>{"a", "b", "c", "d", "e"}));
  EXPECT_EQ(n.reticulation_count(), 1);
  EXPECT_EQ(n.node_count(), node_count_of_tier(5, 1));
  EXPECT_THROW(build_mycorrhizal({left}, core), CompositionInvalid);
  EXPECT_THROW(build_mycorrhizal({left, parse_enewick("(a,e);")}, core), CompositionInvalid);
  EXPECT_THROW(build_mycorrhizal({left, right, parse_enewick("(f,g);")},
                                  parse_enewick("(((x1,(x2)#H1),#H1),x3);")),
               CompositionInvalid);
}

TEST(Mycorrhizal, TrivialRootComponentGivesTheTree) {
  const auto left = parse_enewick("((a,b),c);");
  EXPECT_TRUE(isomorphic(build_mycorrhizal({left}, parse_enewick("x1;")), left));
  const auto pair = build_mycorrhizal({left, parse_enewick("(d,e);")}, parse_enewick("(x1,x2);"));
  EXPECT_TRUE(isomorphic(pair, parse_enewick("(((a,b),c),(d,e));")));
}

TEST(Mycorrhizal, DistanceIsSumOfTreeDistances) {
  const auto core = parse_enewick("((x1,(x2)#H1),#H1);");
  const auto trees = enumerate_trees({"a", "b", "c"});
  const auto pair = enumerate_trees({"d", "e"});
  for (const auto& t : trees) {
    const auto a = build_mycorrhizal({trees[0], pair[0]}, core);
    const auto b = build_mycorrhizal({t, pair[0]}, core);
    EXPECT_EQ(exact_distance(a, b, MoveClass::Tail), maf_distance(trees[0], t));
    EXPECT_EQ(exact_distance(a, b, MoveClass::RSPR), maf_distance(trees[0], t));
  }
}
