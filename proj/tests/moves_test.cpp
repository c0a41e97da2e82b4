#include <gtest/gtest.h>

#include "support.hpp"
#include "tailmoves/errors.hpp"
#include "tailmoves/oracle.hpp"

using namespace tailmoves;

namespace {

std::vector<Network> small_networks() {
  std::vector<Network> out;
  for (int k = 0; k <= 2; ++k)
    for (auto& n : enumerate_tier({{"a", "b", "c"}, k}).members) out.push_back(n);
  for (int k = 0; k <= 3; ++k)
    for (auto& n : enumerate_tier({{"a", "b"}, k}).members) out.push_back(n);
  return out;
}

// apex x, side u, base y, u's other child c
struct TriangleInstance {
  Network net;
  NodeId x, u, y, c;
};

TriangleInstance triangle_instance() {
  auto n = parse_enewick("(((c,(b)#H1),#H1),a);");
  const NodeId y = n.parent(*n.leaf_by_label("b"));
  const NodeId c = *n.leaf_by_label("c");
  const NodeId u = n.parent(c);
  return {n, n.parent(u), u, y, c};
}

}  // namespace

TEST(Movable, RootAndReticulationEdges) {
  for (const auto& n : small_networks())
    for (const Edge& e : n.edges()) {
      if (e.tail == n.root() || n.is_reticulation(e.tail)) {
        EXPECT_FALSE(is_movable(n, e));
      }
    }
}

TEST(Movable, Triangle) {
  const auto t = triangle_instance();
  EXPECT_FALSE(is_movable(t.net, {t.u, t.c}));
  EXPECT_TRUE(is_movable(t.net, {t.u, t.y}));
  EXPECT_TRUE(is_movable(t.net, {t.x, t.y}));
}

TEST(Triangle, Detection) {
  const auto t = triangle_instance();
  const auto tri = find_triangle(t.net, t.u);
  ASSERT_TRUE(tri);
  EXPECT_EQ(tri->apex, t.x);
  EXPECT_EQ(tri->side, t.u);
  EXPECT_EQ(tri->base, t.y);
  EXPECT_EQ(tri->long_edge(), (Edge{t.x, t.y}));
  EXPECT_EQ(tri->bottom_edge(), (Edge{t.u, t.y}));
  EXPECT_TRUE(t.net.has_edge(tri->long_edge()));
  EXPECT_TRUE(t.net.has_edge(tri->bottom_edge()));
  for (const auto& n : enumerate_tier({{"a", "b", "c", "d"}, 0}).members)
    for (int v = 0; v < n.node_count(); ++v)
      if (n.is_tree_node(v)) EXPECT_FALSE(find_triangle(n, v));
}

TEST(Triangle, TreeNodesHaveAMovableChildEdge) {
  for (const auto& n : small_networks())
    for (int v = 0; v < n.node_count(); ++v) {
      if (!n.is_tree_node(v)) continue;
      bool any = false;
      for (NodeId c : n.children(v)) any = any || is_movable(n, {v, c});
      EXPECT_TRUE(any) << write_enewick(n);
    }
}

TEST(CanApply, Conditions) {
  const auto n = parse_enewick("(a,b);");
  const NodeId t = n.child(n.root());
  const NodeId a = *n.leaf_by_label("a");
  const Move to_root{MoveKind::Tail, {t, a}, {n.root(), t}};
  ASSERT_TRUE(can_apply(n, to_root));
  EXPECT_TRUE(isomorphic(apply(n, to_root), n));

  const auto c = parse_enewick("(((a,b),c),d);");
  const NodeId pab = c.parent(*c.leaf_by_label("a"));
  const NodeId pc = c.parent(pab);
  // target below the moving edge's head
  EXPECT_FALSE(can_apply(c, {MoveKind::Tail, {pc, pab}, {pab, *c.leaf_by_label("a")}}));
  const NodeId pd = c.parent(pc);
  EXPECT_TRUE(can_apply(c, {MoveKind::Tail, {pd, pc}, {c.root(), pd}}));
  EXPECT_THROW(apply(c, {MoveKind::Tail, {pc, pab}, {pab, *c.leaf_by_label("a")}}),
               InvalidMove);
}

TEST(CanApply, TargetEndingAtMovingHeadIsRefused) {
  const auto n = parse_enewick("((a,(b)#H1),#H1);");
  const NodeId h = n.parent(*n.leaf_by_label("b"));
  const auto ps = n.parents(h);
  const NodeId lower = n.reaches(ps[0], ps[1]) ? ps[1] : ps[0];
  const NodeId upper = n.other_parent(h, lower);
  EXPECT_FALSE(can_apply(n, {MoveKind::Tail, {lower, h}, {upper, h}}));
}

TEST(Enumerate, MatchesTryAllAndValidate) {
  for (const auto& n : small_networks()) {
    EXPECT_EQ(oracle::as_set(enumerate_moves(n, MoveClass::Tail)),
              oracle::as_set(oracle::brute_moves(n, MoveKind::Tail)))
        << write_enewick(n);
    EXPECT_EQ(oracle::as_set(enumerate_moves(n, MoveClass::Head)),
              oracle::as_set(oracle::brute_moves(n, MoveKind::Head)))
        << write_enewick(n);
  }
}

TEST(Enumerate, UnmovableEdgesOnlyReturnInPlace) {
  for (const auto& n : small_networks())
    for (const Edge& e : n.edges()) {
      if (oracle::brute_movable(n, e)) continue;
      EXPECT_FALSE(is_movable(n, e));
      for (const Edge& f : n.edges())
        if (auto r = oracle::surgery(n, {MoveKind::Tail, e, f}))
          EXPECT_TRUE(oracle::brute_isomorphic(*r, n));
    }
}

TEST(Enumerate, DistanceOneClasses) {
  for (const auto& n : small_networks()) {
    std::set<Move> tail1, head1;
    for (const Move& m : oracle::brute_moves(n, MoveKind::Tail))
      if (oracle::brute_move_distance(n, m) == 1) tail1.insert(m);
    for (const Move& m : oracle::brute_moves(n, MoveKind::Head))
      if (oracle::brute_move_distance(n, m) == 1) head1.insert(m);
    EXPECT_EQ(oracle::as_set(enumerate_moves(n, MoveClass::Tail1)), tail1);
    EXPECT_EQ(oracle::as_set(enumerate_moves(n, MoveClass::Head1)), head1);
    std::set<Move> rnni = tail1;
    rnni.insert(head1.begin(), head1.end());
    EXPECT_EQ(oracle::as_set(enumerate_moves(n, MoveClass::RNNI)), rnni);
  }
}

TEST(Enumerate, ExceptionalNetworkHasNoNontrivialTailMove) {
  const auto n = parse_enewick(oracle::kExceptional);
  EXPECT_TRUE(enumerate_moves(n, MoveClass::Tail, true).empty());
  for (const Move& m : enumerate_moves(n, MoveClass::Tail)) EXPECT_TRUE(isomorphic(apply(n, m), n));
}

TEST(Enumerate, OneLeafHeadMovesAreTrivial) {
  const auto n = parse_enewick(oracle::kOneLeafTwoRetics);
  const auto moves = enumerate_moves(n, MoveClass::Head);
  EXPECT_FALSE(moves.empty());
  for (const Move& m : moves) EXPECT_TRUE(isomorphic(apply(n, m), n));
  EXPECT_TRUE(enumerate_moves(n, MoveClass::Head, true).empty());
}

TEST(Apply, MatchesSurgeryAndKeepsTier) {
  for (const auto& n : small_networks())
    for (MoveClass c : {MoveClass::Tail, MoveClass::Head})
      for (const Move& m : enumerate_moves(n, c)) {
        const auto r = apply(n, m);
        EXPECT_TRUE(validate(r.to_candidate()).ok());
        EXPECT_EQ(r.reticulation_count(), n.reticulation_count());
        EXPECT_EQ(r.taxa(), n.taxa());
        EXPECT_EQ(r.node_count(), n.node_count());
        EXPECT_TRUE(oracle::brute_isomorphic(r, *oracle::surgery(n, m))) << to_string(m);
      }
}

TEST(Apply, TailMovesAreReversible) {
  for (const auto& n : small_networks())
    for (const Move& m : enumerate_moves(n, MoveClass::Tail)) {
      const auto r = apply(n, m);
      const Move back = reverse_move(n, m);
      EXPECT_EQ(back.kind, MoveKind::Tail);
      ASSERT_TRUE(can_apply(r, back));
      EXPECT_TRUE(isomorphic(apply(r, back), n));
    }
}

TEST(MoveDistance, MatchesBfs) {
  for (const auto& n : small_networks())
    for (MoveClass c : {MoveClass::Tail, MoveClass::Head})
      for (const Move& m : enumerate_moves(n, c))
        EXPECT_EQ(move_distance(n, m), oracle::brute_move_distance(n, m)) << to_string(m);
}

TEST(MoveDistance, CaterpillarToRootEdge) {
  const auto n = parse_enewick("((((a,b),c),d),e);");
  const NodeId a = *n.leaf_by_label("a");
  const NodeId top = n.child(n.root());
  const Move m{MoveKind::Tail, {n.parent(a), a}, {n.root(), top}};
  ASSERT_TRUE(can_apply(n, m));
  EXPECT_EQ(move_distance(n, m), oracle::brute_move_distance(n, m));
  EXPECT_EQ(move_distance(n, m), 3);
  const NodeId pab = n.parent(a);
  const NodeId b = *n.leaf_by_label("b");
  const NodeId c = *n.leaf_by_label("c");
  EXPECT_EQ(move_distance(n, {MoveKind::Tail, {pab, b}, {n.parent(pab), c}}), 1);
  EXPECT_THROW(move_distance(n, {MoveKind::Tail, {n.root(), top}, {pab, a}}), InvalidMove);
}

TEST(MovableEdgeAvoiding, Cherry) {
  const auto n = parse_enewick("(a,b);");
  const NodeId a = *n.leaf_by_label("a"), b = *n.leaf_by_label("b");
  const Edge e = movable_edge_avoiding(n, a, b);
  EXPECT_TRUE(e == (Edge{n.parent(a), a}) || e == (Edge{n.parent(b), b}));
  EXPECT_THROW(movable_edge_avoiding(n, n.parent(a), a), PreconditionViolated);
}

TEST(MovableEdgeAvoiding, ExhaustiveTierOne) {
  for (const auto& n : enumerate_tier({{"a", "b", "c"}, 1}).members)
    for (int x = 0; x < n.node_count(); ++x)
      for (int y = 0; y < n.node_count(); ++y) {
        const auto l = oracle::brute_lca(n, x, y);
        if (std::count(l.begin(), l.end(), x) || std::count(l.begin(), l.end(), y)) continue;
        const Edge e = movable_edge_avoiding(n, x, y);
        EXPECT_TRUE(n.has_edge(e));
        EXPECT_TRUE(is_movable(n, e));
        const auto r = oracle::closure(n);
        EXPECT_FALSE(r[e.head][x] && r[e.head][y]);
      }
}
