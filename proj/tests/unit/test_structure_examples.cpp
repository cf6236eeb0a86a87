#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "alg1_simulator.hpp"
#include "dynconn/dtree.hpp"
#include "dynconn/euler_structures.hpp"
#include "dynconn/lct.hpp"
#include "dynconn/local_forest.hpp"
#include "dynconn/structural_forest.hpp"
#include "figures.hpp"
#include "test_util.hpp"

namespace dynconn {
namespace {

class EveryStructure : public ::testing::TestWithParam<StructureKind> {
 protected:
  std::unique_ptr<ConnectivityStructure> make() const { return make_structure(GetParam()); }
};

TEST_P(EveryStructure, InsertOutcomes) {
  auto s = make();
  EXPECT_EQ(s->insert_edge(1, 2).kind, OutcomeKind::NewTreeEdge);
  EXPECT_EQ(s->insert_edge(2, 1).kind, OutcomeKind::DuplicateIgnored);
  EXPECT_EQ(s->classify_edge({1, 2}), EdgeClass::tree(0));
  EXPECT_THROW(s->insert_edge(4, 4), Error);
}

TEST_P(EveryStructure, RunningExampleInsertOfDashedEdgeIsNonTree) {
  auto s = make();
  for (const auto& e : testing::running_example())
    if (e.tree || e.u != 1 || e.v != 3) s->insert_edge(e.u, e.v);
  EXPECT_EQ(s->insert_edge(1, 3).kind, OutcomeKind::NewNonTreeEdge);
  EXPECT_EQ(s->classify_edge({1, 3}), EdgeClass::nontree(0));
  EXPECT_TRUE(s->connected(1, 7));
  EXPECT_TRUE(s->connected(4, 8));
}

TEST_P(EveryStructure, RunningExampleDeletes) {
  auto s = make();
  testing::insert_running_example(*s);
  EXPECT_EQ(s->delete_edge(1, 2).kind, OutcomeKind::NonTreeRemoved);
  EXPECT_EQ(s->delete_edge(1, 2).kind, OutcomeKind::MissingIgnored);

  const UpdateOutcome out = s->delete_edge(2, 3);
  ASSERT_EQ(out.kind, OutcomeKind::SplitReconnected);
  ASSERT_TRUE(out.replacement.has_value());
  EXPECT_TRUE(*out.replacement == (EdgeKey{1, 3}) || *out.replacement == (EdgeKey{3, 6}));
  EXPECT_EQ(s->classify_edge(*out.replacement).kind, EdgeClass::Kind::Tree);
  EXPECT_TRUE(s->connected(2, 4));
  EXPECT_TRUE(s->audit().empty()) << testing::describe(s->audit());

  for (auto [u, v] : {std::pair{1, 3}, {3, 6}, {3, 4}}) s->delete_edge(u, v);
  EXPECT_FALSE(s->connected(3, 1));
  EXPECT_TRUE(s->connected(1, 7));
  EXPECT_TRUE(s->audit().empty()) << testing::describe(s->audit());
}

TEST_P(EveryStructure, BridgeDeleteIsPermanent) {
  auto s = make();
  s->insert_edge(1, 2);
  s->insert_edge(2, 3);
  EXPECT_EQ(s->delete_edge(1, 2).kind, OutcomeKind::SplitPermanent);
  EXPECT_FALSE(s->connected(1, 3));
  EXPECT_TRUE(s->connected(2, 3));
  EXPECT_EQ(s->classify_edge({1, 2}), EdgeClass::absent());
}

TEST_P(EveryStructure, IsolatedAndUnknownVertices) {
  auto s = make();
  s->insert_edge(0, 1);
  s->insert_edge(5, 6);
  EXPECT_FALSE(s->connected(0, 5));
  EXPECT_FALSE(s->connected(0, 99));
  EXPECT_TRUE(s->connected(99, 99));
  EXPECT_EQ(s->delete_edge(0, 99).kind, OutcomeKind::MissingIgnored);
}

TEST_P(EveryStructure, RandomGraphAllPairs) {
  auto s = make();
  OracleGraph g;
  std::mt19937_64 rng(11);
  while (g.edge_count() < 30) {
    const VertexId u = rng() % 20, v = rng() % 20;
    if (u != v && g.add_edge(u, v)) s->insert_edge(u, v);
  }
  EXPECT_EQ(testing::count_mismatches(*s, g, 20), 0u);
}

TEST_P(EveryStructure, StatsAreConsistent) {
  auto s = make();
  testing::insert_running_example(*s);
  const StructureStats st = s->stats();
  EXPECT_GT(st.memory_bytes, 0u);
  EXPECT_GT(st.node_count, 0u);
  std::size_t total = 0;
  for (std::size_t c : st.level_histogram) total += c;
  EXPECT_EQ(total, 10u);
  EXPECT_EQ(s->edge_records().size(), 10u);
}

INSTANTIATE_TEST_SUITE_P(All, EveryStructure, ::testing::ValuesIn(all_structure_kinds()),
                         [](const auto& info) {
                           std::string n(display_name(info.param));
                           n.erase(std::remove(n.begin(), n.end(), '-'), n.end());
                           return n;
                         });

// Structures that follow the canonical leveled delete.
class LeveledStructure : public ::testing::TestWithParam<StructureKind> {};

// Path 3-4-5-6-7 with non-tree (3,6),(4,7): deleting (4,5) pushes (3,4) to
// level 1 and reconnects through (3,6); deleting (3,4) then finds nothing at
// level 1 and falls back to (4,7) at level 0.
TEST_P(LeveledStructure, SearchFallsBackToLowerLevel) {
  auto s = make_structure(GetParam());
  testing::Alg1Simulator sim;
  auto ins = [&](VertexId u, VertexId v) {
    s->insert_edge(u, v);
    sim.insert(u, v);
  };
  for (auto [u, v] : {std::pair{3, 4}, {4, 5}, {5, 6}, {6, 7}, {3, 6}, {4, 7}}) ins(u, v);

  UpdateOutcome out = s->delete_edge(4, 5);
  sim.erase(4, 5);
  EXPECT_EQ(out, UpdateOutcome::reconnected({3, 6}));
  EXPECT_EQ(s->classify_edge({3, 4}), EdgeClass::tree(1));
  EXPECT_EQ(s->classify_edge({4, 7}), EdgeClass::nontree(0));

  out = s->delete_edge(3, 4);
  sim.erase(3, 4);
  EXPECT_EQ(out, UpdateOutcome::reconnected({4, 7}));
  EXPECT_TRUE(s->connected(3, 4));
  for (const EdgeRecord& r : s->edge_records()) {
    const auto& info = sim.edges().at(r.key);
    EXPECT_EQ(r.level, info.level);
    EXPECT_EQ(r.kind == EdgeKind::Tree, info.tree);
  }
  EXPECT_TRUE(s->audit().empty()) << testing::describe(s->audit());
}

TEST_P(LeveledStructure, FreshGraphStaysAtLevelZeroOnNonTreeTraffic) {
  auto s = make_structure(GetParam());
  testing::insert_running_example(*s);
  s->delete_edge(1, 2);
  s->insert_edge(1, 2);
  for (const EdgeRecord& r : s->edge_records()) EXPECT_EQ(r.level, 0);
}

INSTANTIATE_TEST_SUITE_P(Canonical, LeveledStructure,
                         ::testing::Values(StructureKind::Hdt, StructureKind::St, StructureKind::Stv,
                                           StructureKind::Lt, StructureKind::Ltv, StructureKind::Lzt),
                         [](const auto& info) { return std::string(display_name(info.param)); });

// Drawn D-tree: root 5 with children 1, 2, 8; 2-3-4 and 8-7-6 below.
DTree running_example_dtree() {
  DTree d;
  testing::insert_running_example(d);
  d.reroot(5);
  return d;
}

TEST(DTree, FindRootOfDrawnTree) {
  DTree d = running_example_dtree();
  EXPECT_EQ(d.find_root(4), (std::pair<VertexId, int>{5, 3}));
  EXPECT_EQ(d.find_root(5), (std::pair<VertexId, int>{5, 0}));
  EXPECT_EQ(d.children(5), (std::vector<VertexId>{1, 2, 8}));
  EXPECT_EQ(d.subtree_size(5), 8u);
  EXPECT_EQ(d.subtree_size(2), 3u);
  EXPECT_THROW(d.find_root(42), Error);
}

TEST(DTree, DeletePicksShallowestAnchor) {
  DTree d = running_example_dtree();
  // Anchor 1 has depth 1, anchor 6 has depth 3.
  EXPECT_EQ(d.delete_edge(2, 3), UpdateOutcome::reconnected({1, 3}));
  EXPECT_EQ(d.parent(3), std::optional<VertexId>(1));
  EXPECT_EQ(d.find_root(4), (std::pair<VertexId, int>{5, 3}));
  EXPECT_EQ(d.classify_edge({3, 6}), EdgeClass::nontree(0));
  EXPECT_TRUE(d.audit().empty());
}

TEST(DTree, RerootReversesPath) {
  DTree d;
  d.insert_tree_edge(5, 1);
  d.insert_tree_edge(1, 3);
  d.reroot(5);
  d.reroot(5);  // no-op at the root
  EXPECT_EQ(d.parent(3), std::optional<VertexId>(1));
  EXPECT_EQ(d.parent(1), std::optional<VertexId>(5));
  d.reroot(3);
  EXPECT_FALSE(d.parent(3).has_value());
  EXPECT_EQ(d.parent(1), std::optional<VertexId>(3));
  EXPECT_EQ(d.parent(5), std::optional<VertexId>(1));
  EXPECT_EQ(d.subtree_size(3), 3u);
  EXPECT_EQ(d.subtree_size(1), 2u);
  EXPECT_EQ(d.subtree_size(5), 1u);
  EXPECT_TRUE(d.audit().empty());
}

TEST(DTree, SmallerTreeHangsUnderLarger) {
  DTree d;
  d.insert_tree_edge(1, 2);
  EXPECT_EQ(d.parent(2), std::optional<VertexId>(1));
  for (VertexId v = 11; v <= 16; ++v) d.insert_tree_edge(10, v);
  d.insert_tree_edge(11, 1);
  EXPECT_EQ(d.find_root(1).first, 10u);
  EXPECT_EQ(d.subtree_size(10), 9u);
  EXPECT_EQ(d.subtree_size(11), 3u);
  EXPECT_THROW(d.insert_tree_edge(2, 16), Error);
}

TEST(LinkCut, FindRootAndEvert) {
  LinkCutForest t;
  t.insert_edge(3, 8);
  t.delete_edge(3, 8);
  EXPECT_EQ(t.find_root(3), 3u);
  LinkCutForest f;
  testing::insert_running_example(f);
  f.evert(5);
  EXPECT_EQ(f.find_root(4), 5u);
  f.evert(5);
  EXPECT_EQ(f.find_root(4), 5u);
  f.evert(4);
  EXPECT_EQ(f.find_root(5), 4u);
  f.evert(1);
  f.evert(6);
  EXPECT_EQ(f.find_root(2), 6u);
  EXPECT_TRUE(f.audit().empty());
}

TEST(LinkCut, LinkCutInverse) {
  LinkCutForest f;
  f.insert_edge(1, 2);
  f.insert_edge(3, 4);
  f.delete_edge(1, 2);
  f.delete_edge(3, 4);
  EXPECT_EQ(f.find_root(1), 1u);
  EXPECT_EQ(f.find_root(2), 2u);
  EXPECT_THROW(f.cut(1, 2), Error);
  f.link(1, 2);
  EXPECT_THROW(f.link(2, 1), Error);
}

TEST(LinkCut, ShadowForestAfterRandomLinksAndCuts) {
  LinkCutForest f;
  OracleGraph shadow;
  std::mt19937_64 rng(5);
  std::vector<EdgeKey> tree;
  const VertexId n = 200;
  for (VertexId v = 0; v + 1 < n; ++v) {
    f.link(v, v + 1);
    f.cut(v, v + 1);
  }
  for (int step = 0; step < 10000; ++step) {
    if (!tree.empty() && rng() % 2 == 0) {
      const std::size_t k = rng() % tree.size();
      f.cut(tree[k].a, tree[k].b);
      shadow.remove_edge(tree[k].a, tree[k].b);
      tree[k] = tree.back();
      tree.pop_back();
    } else {
      const VertexId u = rng() % n, v = rng() % n;
      if (u == v || shadow.connected(u, v)) continue;
      f.link(u, v);
      shadow.add_edge(u, v);
      tree.push_back(normalize_edge(u, v));
    }
  }
  std::set<EdgeKey> got, want(tree.begin(), tree.end());
  for (auto [c, p] : f.represented_parents()) got.insert(normalize_edge(c, p));
  EXPECT_EQ(got, want);
  const auto label = shadow.component_labels(n);
  for (VertexId u = 0; u < n; u += 7)
    for (VertexId v = 0; v < n; v += 5) EXPECT_EQ(f.find_root(u) == f.find_root(v), label[u] == label[v]);
  EXPECT_TRUE(f.audit().empty());
}

TEST(StructuralForest, SmallerTreeJoinsLargerRoot) {
  StructuralForest s;
  for (auto [u, v] : {std::pair{1, 2}, {2, 3}, {3, 4}, {4, 5}}) s.insert_edge(u, v);
  for (auto [u, v] : {std::pair{6, 7}, {7, 8}}) s.insert_edge(u, v);
  const std::uint64_t big = s.find_root(1);
  s.insert_edge(5, 6);
  EXPECT_EQ(s.find_root(8), big);
  EXPECT_EQ(s.leaf_count_under_root(8), 8);
  StructuralForest single;
  single.insert_edge(0, 1);
  single.delete_edge(0, 1);
  EXPECT_NE(single.find_root(0), single.find_root(1));
  EXPECT_EQ(single.leaf_count_under_root(0), 1);
}

// Side {3,4} is smaller: it becomes one level-1 super node hung back in
// the level-0 tree through (1,3).
TEST(StructuralForest, DeleteWrapsSmallSideAsSuperNode) {
  StructuralForest s;
  testing::insert_running_example(s);
  EXPECT_EQ(s.ancestor_chain(4), (std::vector<std::pair<int, int>>{{0, 8}}));
  EXPECT_EQ(s.delete_edge(2, 3), UpdateOutcome::reconnected({1, 3}));
  EXPECT_EQ(s.classify_edge({3, 4}), EdgeClass::tree(1));
  EXPECT_EQ(s.ancestor_chain(4), (std::vector<std::pair<int, int>>{{0, 8}, {1, 2}}));
  EXPECT_EQ(s.ancestor_chain(3), s.ancestor_chain(4));
  EXPECT_EQ(s.ancestor_chain(5), (std::vector<std::pair<int, int>>{{0, 8}}));
  EXPECT_TRUE(s.audit().empty()) << testing::describe(s.audit());
}

TEST(StructuralForest, VariantVisitsAtLeastAsManyEdges) {
  StructuralForest st(AdjacencyMode::Split), stv(AdjacencyMode::Merged);
  testing::insert_running_example(st);
  testing::insert_running_example(stv);
  const std::size_t a = st.edges_visited(), b = stv.edges_visited();
  st.delete_edge(2, 3);
  stv.delete_edge(2, 3);
  EXPECT_GE(stv.edges_visited() - b, st.edges_visited() - a);
  for (VertexId u = 1; u <= 8; ++u)
    for (VertexId v = 1; v <= 8; ++v) EXPECT_EQ(st.connected(u, v), stv.connected(u, v));
}

TEST(StructuralForest, HeightBoundUnderChurn) {
  StructuralForest s;
  const auto ops = generate_churn(128, 384, 4000, 3, 9);
  for (const Operation& op : ops) {
    if (op.type == Operation::Type::Insert)
      s.insert_edge(op.edge.a, op.edge.b);
    else
      s.delete_edge(op.edge.a, op.edge.b);
    ASSERT_LE(s.max_height(), floor_log2(128) + 1);
  }
  EXPECT_TRUE(s.audit().empty());
}

}  // namespace
}  // namespace dynconn
