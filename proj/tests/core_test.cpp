#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tailmoves/oracle.hpp"

using namespace tailmoves;

namespace {

CandidateGraph cherry_graph() {
  // rho=0 t=1 a=2 b=3
  return {4, {{0, 1}, {1, 2}, {1, 3}}, {{2, "a"}, {3, "b"}}};
}

}  // namespace

TEST(Validate, CherryIsValid) { EXPECT_TRUE(validate(cherry_graph()).ok()); }

TEST(Validate, DuplicateEdgeIsReported) {
  auto g = cherry_graph();
  g.edges.push_back({1, 2});
  const auto r = validate(g);
  ASSERT_TRUE(r.has(ViolationKind::ParallelEdge));
  bool witnessed = false;
  for (const auto& v : r.violations)
    if (v.kind == ViolationKind::ParallelEdge && v.witness == std::vector<NodeId>{1, 2})
      witnessed = true;
  EXPECT_TRUE(witnessed) << r.to_string();
}

TEST(Validate, CycleIsListed) {
  // rho=0 -> 1, 1 -> 2 -> 3 -> 1 plus leaves so degrees are not the only defect
  CandidateGraph g{7, {{0, 1}, {1, 2}, {2, 3}, {3, 1}, {2, 4}, {3, 5}, {1, 6}},
                   {{4, "a"}, {5, "b"}, {6, "c"}}};
  const auto r = validate(g);
  ASSERT_TRUE(r.has(ViolationKind::Cycle));
  for (const auto& v : r.violations)
    if (v.kind == ViolationKind::Cycle) {
      ASSERT_EQ(v.witness.size(), 3u);
      for (std::size_t i = 0; i < 3; ++i) {
        const Edge e{v.witness[i], v.witness[(i + 1) % 3]};
        EXPECT_NE(std::find(g.edges.begin(), g.edges.end(), e), g.edges.end());
      }
    }
}

TEST(Validate, LabellingDefects) {
  auto g = cherry_graph();
  g.leaf_labels[3] = "a";
  EXPECT_TRUE(validate(g).has(ViolationKind::DuplicateLabel));
  g = cherry_graph();
  g.leaf_labels.erase(3);
  EXPECT_TRUE(validate(g).has(ViolationKind::UnlabeledLeaf));
  g = cherry_graph();
  g.leaf_labels[1] = "t";
  EXPECT_TRUE(validate(g).has(ViolationKind::LabelOnNonLeaf));
}

TEST(Validate, BadDegreeAndRoots) {
  auto g = cherry_graph();
  g.edges.push_back({1, 4});
  g.node_count = 5;
  g.leaf_labels[4] = "c";
  EXPECT_TRUE(validate(g).has(ViolationKind::BadDegree));
  g = cherry_graph();
  g.edges = {{1, 2}, {1, 3}};
  EXPECT_FALSE(validate(g).ok());
}

TEST(ReticulationNumber, Counts) {
  EXPECT_EQ(reticulation_number(oracle::net("((a,b),c);")), 0);
  const auto ex = oracle::net(oracle::kExceptional);
  EXPECT_EQ(reticulation_number(ex), 1);
  EXPECT_EQ(ex.reticulation_count(), 1);
  for (const auto& n : enumerate_tier({{"a", "b", "c"}, 2}).members) {
    EXPECT_EQ(n.edge_count(), 2 * 3 + 3 * 2 - 1);
    EXPECT_EQ(n.node_count(), 2 * 3 + 2 * 2);
    EXPECT_EQ(reticulation_number(n), 2);
  }
}

TEST(IsAbove, Basics) {
  const auto n = oracle::net("(a,b);");
  const NodeId a = *n.leaf_by_label("a"), b = *n.leaf_by_label("b");
  const NodeId t = n.child(n.root());
  for (int v = 0; v < n.node_count(); ++v) EXPECT_TRUE(is_above(n, n.root(), v));
  EXPECT_FALSE(is_above(n, a, n.root()));
  EXPECT_TRUE(is_above(n, t, a));
  EXPECT_FALSE(is_above(n, a, b));
  EXPECT_TRUE(is_above(n, Edge{t, a}, a));
  EXPECT_FALSE(is_above(n, Edge{t, a}, b));
}

TEST(IsAbove, MatchesClosureAndIsPartialOrder) {
  for (const auto& n : enumerate_tier({{"a", "b", "c"}, 1}).members) {
    const auto r = oracle::closure(n);
    for (int x = 0; x < n.node_count(); ++x)
      for (int y = 0; y < n.node_count(); ++y) {
        EXPECT_EQ(is_above(n, x, y), r[x][y]);
        if (x != y && r[x][y]) EXPECT_FALSE(r[y][x]);
      }
  }
}

TEST(LcaSet, CherryAndReflexive) {
  const auto n = oracle::net("(a,b);");
  const NodeId a = *n.leaf_by_label("a"), b = *n.leaf_by_label("b");
  EXPECT_EQ(lca_set(n, a, b), std::vector<NodeId>{n.child(n.root())});
  EXPECT_EQ(lca_set(n, a, a), std::vector<NodeId>{a});
}

TEST(LcaSet, MatchesMaximalityScan) {
  bool saw_two = false;
  for (int k = 1; k <= 2; ++k)
    for (const auto& n : enumerate_tier({{"a", "b", "c"}, k}).members) {
      const auto r = oracle::closure(n);
      for (int u = 0; u < n.node_count(); ++u)
        for (int v = 0; v < n.node_count(); ++v) {
          const auto got = lca_set(n, u, v);
          ASSERT_EQ(got, oracle::brute_lca(n, u, v));
          ASSERT_FALSE(got.empty());
          if (got.size() > 1) saw_two = true;
          for (int x : got)
            for (int y : got)
              if (x != y) EXPECT_FALSE(r[x][y]);
        }
    }
  EXPECT_TRUE(saw_two);
}

TEST(CanonicalCode, InvariantUnderRenaming) {
  std::mt19937 rng(7);
  for (const char* s : {"((a,b),c);", oracle::kExceptional, oracle::kOneLeafTwoRetics,
                        "((a,(b,#H1)),((c)#H1,d));"}) {
    const auto n = oracle::net(s);
    const auto code = canonical_code(n);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(canonical_code(oracle::shuffled(n, rng)), code);
  }
}

TEST(CanonicalCode, LeafLabelsDistinguish) {
  EXPECT_NE(canonical_code(oracle::net("((a,b),c);")), canonical_code(oracle::net("((a,c),b);")));
}

TEST(CanonicalCode, AgreesWithBijectionSearch) {
  std::mt19937 rng(11);
  for (int k = 0; k <= 2; ++k) {
    const auto members = enumerate_tier({{"a", "b"}, k}).members;
    std::vector<Network> pool = members;
    for (const auto& m : members) pool.push_back(oracle::shuffled(m, rng));
    for (const auto& x : pool)
      for (const auto& y : pool)
        EXPECT_EQ(canonical_code(x) == canonical_code(y), oracle::brute_isomorphic(x, y));
  }
}

TEST(CanonicalCode, FindIsomorphismIsAnIsomorphism) {
  std::mt19937 rng(3);
  for (const auto& n : enumerate_tier({{"a", "b", "c"}, 1}).members) {
    const auto m = oracle::shuffled(n, rng);
    const auto phi = find_isomorphism(n, m);
    ASSERT_TRUE(phi);
    for (const Edge& e : n.edges()) EXPECT_TRUE(m.has_edge((*phi)[e.tail], (*phi)[e.head]));
    for (NodeId l : n.leaves()) EXPECT_EQ(m.label((*phi)[l]), n.label(l));
  }
}

TEST(DownwardClosed, Basics) {
  const auto n = oracle::net("((a,b),c);");
  EXPECT_TRUE(is_downward_closed(n, n.leaves()));
  std::vector<NodeId> all;
  for (int v = 0; v < n.node_count(); ++v) all.push_back(v);
  EXPECT_TRUE(is_downward_closed(n, all));
  EXPECT_FALSE(is_downward_closed(n, std::vector<NodeId>{n.root()}));
}
