#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <set>

#include "dynconn/graph_model.hpp"
#include "dynconn/memory_model.hpp"
#include "dynconn/neighbor_sets.hpp"
#include "dynconn/oracle.hpp"
#include "dynconn/structures.hpp"
#include "figures.hpp"
#include "test_util.hpp"

namespace dynconn {
namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::InvalidArgument;
}

TEST(EdgeKey, NormalizesOrder) {
  EXPECT_EQ(normalize_edge(3, 1), (EdgeKey{1, 3}));
  EXPECT_EQ(normalize_edge(1, 3), (EdgeKey{1, 3}));
  EXPECT_EQ(code_of([] { normalize_edge(7, 7); }), ErrorCode::SelfLoop);
}

TEST(EdgeKey, PackedIsInjectiveAndOrdered) {
  EXPECT_LT((EdgeKey{1, 9}), (EdgeKey{2, 3}));
  EXPECT_NE((EdgeKey{1, 2}).packed(), (EdgeKey{2, 1}).packed());
  EXPECT_EQ((EdgeKey{1, 2}).packed(), (std::uint64_t{1} << 32) | 2);
}

TEST(Log2, FloorAndCeil) {
  EXPECT_EQ(floor_log2(0), -1);
  EXPECT_EQ(floor_log2(1), 0);
  EXPECT_EQ(floor_log2(7), 2);
  EXPECT_EQ(floor_log2(8), 3);
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(5), 3);
  EXPECT_EQ(ceil_log2(8), 3);
}

TEST(RstSet, MatchesStdSetUnderRandomOps) {
  RstSet s;
  std::set<VertexId> ref;
  std::mt19937_64 rng(7);
  for (int step = 0; step < 5000; ++step) {
    const VertexId v = static_cast<VertexId>(rng() % 300);
    if (rng() % 3 == 0)
      EXPECT_EQ(s.erase(v), ref.erase(v) > 0);
    else
      EXPECT_EQ(s.insert(v), ref.insert(v).second);
    ASSERT_EQ(s.size(), ref.size());
  }
  EXPECT_TRUE(s.audit());
  const std::vector<VertexId> sorted(ref.begin(), ref.end());
  EXPECT_EQ(s.sorted(), sorted);
  for (std::size_t k = 0; k < sorted.size(); ++k) EXPECT_EQ(s.select(k), sorted[k]);
  EXPECT_LE(s.height(), 4 * std::max(1, floor_log2(ref.size()) + 1));
}

TEST(HashNeighborSet, SortedOrder) {
  HashNeighborSet s;
  for (VertexId v : {9u, 2u, 5u}) EXPECT_TRUE(s.insert(v));
  EXPECT_FALSE(s.insert(2));
  EXPECT_EQ(s.sorted(), (std::vector<VertexId>{2, 5, 9}));
  EXPECT_TRUE(s.erase(5));
  EXPECT_FALSE(s.contains(5));
}

TEST(GraphModel, RecordsLevelNeighbours) {
  GraphModel g;
  g.record_edge({1, 3}, 0, EdgeKind::NonTree);
  g.record_edge({3, 4}, 1, EdgeKind::Tree);
  EXPECT_EQ(g.sorted_nontree(1, 0), (std::vector<VertexId>{3}));
  EXPECT_EQ(g.sorted_nontree(3, 0), (std::vector<VertexId>{1}));
  EXPECT_EQ(g.sorted_tree(3, 1), (std::vector<VertexId>{4}));
  EXPECT_TRUE(g.sorted_tree(3, 0).empty());
  EXPECT_EQ(code_of([&] { g.record_edge({1, 3}, 0, EdgeKind::NonTree); }), ErrorCode::DuplicateEdge);
}

TEST(GraphModel, RunningExampleNeighbourSets) {
  for (AdjacencyMode mode : {AdjacencyMode::Split, AdjacencyMode::Merged}) {
    GraphModel g(mode);
    testing::record_running_example(g);
    EXPECT_EQ(g.sorted_tree(3, 0), (std::vector<VertexId>{2}));
    EXPECT_EQ(g.sorted_nontree(3, 0), (std::vector<VertexId>{1, 6}));
    EXPECT_EQ(g.sorted_tree(3, 1), (std::vector<VertexId>{4}));
    EXPECT_TRUE(g.sorted_nontree(3, 1).empty());
    EXPECT_EQ(g.classify_edge({1, 2}), EdgeClass::nontree(0));
    EXPECT_EQ(g.classify_edge({3, 4}), EdgeClass::tree(1));
    EXPECT_EQ(g.classify_edge({4, 8}), EdgeClass::absent());
    EXPECT_TRUE(g.audit().empty());
    EXPECT_EQ(g.level_histogram(), (std::vector<std::size_t>{7, 3}));
  }
}

TEST(GraphModel, PromotionContract) {
  GraphModel g;
  testing::record_running_example(g);
  EXPECT_TRUE(g.promote_edge({2, 5}, 1));
  EXPECT_EQ(g.classify_edge({2, 5}), EdgeClass::tree(1));
  EXPECT_EQ(code_of([&] { g.promote_edge({4, 8}, 1); }), ErrorCode::MissingEdge);
  EXPECT_EQ(code_of([&] { g.promote_edge({1, 5}, 2); }), ErrorCode::LevelSkip);
  EXPECT_EQ(code_of([&] { g.erase_edge({4, 8}); }), ErrorCode::MissingEdge);
  g.set_kind({1, 3}, EdgeKind::Tree);
  EXPECT_EQ(g.classify_edge({1, 3}), EdgeClass::tree(0));
  EXPECT_TRUE(g.audit().empty());
}

TEST(GraphModel, PromotionClampsAtLevelCap) {
  GraphModel g;
  g.record_edge({0, 1}, 0, EdgeKind::Tree);
  // Two vertices: cap is floor(log2 2) + 1 = 2.
  EXPECT_EQ(g.level_cap(), 2);
  EXPECT_TRUE(g.promote_edge({0, 1}, 1));
  EXPECT_TRUE(g.promote_edge({0, 1}, 2));
  EXPECT_FALSE(g.promote_edge({0, 1}, 3));
  EXPECT_EQ(g.classify_edge({0, 1}), EdgeClass::tree(2));
  EXPECT_EQ(g.clamped_promotions(), 1u);
}

TEST(Oracle, BasicQueries) {
  OracleGraph g;
  EXPECT_TRUE(g.connected(4, 4));
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  EXPECT_FALSE(g.connected(0, 2));
  for (const auto& e : testing::running_example()) g.add_edge(e.u, e.v);
  EXPECT_TRUE(g.connected(1, 7));
  EXPECT_TRUE(g.connected(4, 8));
  for (auto [u, v] : {std::pair{2, 3}, {1, 3}, {3, 6}, {3, 4}}) EXPECT_TRUE(g.remove_edge(u, v));
  EXPECT_FALSE(g.connected(3, 1));
  EXPECT_FALSE(g.remove_edge(3, 4));
  EXPECT_FALSE(g.add_edge(1, 5));
}

TEST(Oracle, LabelsAgreeWithPairwiseBfs) {
  OracleGraph g;
  std::mt19937_64 rng(3);
  while (g.edge_count() < 30) {
    const VertexId u = rng() % 20, v = rng() % 20;
    if (u != v) g.add_edge(u, v);
  }
  const auto label = g.component_labels(20);
  std::size_t pairs = 0;
  for (VertexId u = 0; u < 20; ++u)
    for (VertexId v = u + 1; v < 20; ++v, ++pairs) EXPECT_EQ(label[u] == label[v], oracle_connected(g, u, v));
  EXPECT_EQ(pairs, 190u);
}

TEST(MemoryModel, ParseOverridesAndRejects) {
  const MemoryModel m = parse_memory_model("# costs\nlink = 4\nnode_base=32\n");
  EXPECT_EQ(m.link, 4u);
  EXPECT_EQ(m.node_base, 32u);
  EXPECT_EQ(m.integer, MemoryModel{}.integer);
  EXPECT_EQ(code_of([] { parse_memory_model("bogus=1"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { parse_memory_model("link=-3"); }), ErrorCode::InvalidArgument);
}

TEST(MemoryModel, EnvironmentFile) {
  const std::string path = ::testing::TempDir() + "memmodel.txt";
  std::ofstream(path) << "set_base=1\n";
  ::setenv("DYNCONN_MEMMODEL", path.c_str(), 1);
  EXPECT_EQ(memory_model_from_env().set_base, 1u);
  ::unsetenv("DYNCONN_MEMMODEL");
  EXPECT_EQ(memory_model_from_env(), MemoryModel{});
}

TEST(Structures, NamesRoundTrip) {
  EXPECT_EQ(all_structure_kinds().size(), 10u);
  for (StructureKind k : all_structure_kinds()) {
    EXPECT_EQ(parse_structure_kind(display_name(k)), k);
    EXPECT_EQ(make_structure(k)->name(), display_name(k));
  }
  EXPECT_EQ(parse_structure_kind("dtree"), StructureKind::DTree);
  EXPECT_EQ(parse_structure_kind("lzt"), StructureKind::Lzt);
  EXPECT_EQ(code_of([] { parse_structure_kind("splay"); }), ErrorCode::UnknownStructure);
}

TEST(Structures, EmptyStructureCostsNothingPerVertex) {
  for (StructureKind k : all_structure_kinds()) {
    auto s = make_structure(k);
    EXPECT_EQ(s->node_count(), 0u) << display_name(k);
    EXPECT_FALSE(s->connected(0, 1));
    EXPECT_TRUE(s->connected(3, 3));
  }
}

}  // namespace
}  // namespace dynconn
