#include <gtest/gtest.h>

#include "dynconn/local_forest.hpp"
#include "figures.hpp"
#include "test_util.hpp"

namespace dynconn {
namespace {

using Kind = LocalForest::Kind;

// Kinds of the non-internal nodes between x and its owning super node.
std::vector<Kind> branch_path(const LocalForest::Node* x) {
  std::vector<Kind> out;
  for (const LocalForest::Node* p = x->parent; p && p->kind != Kind::Super; p = p->parent)
    if (!LocalTreeArena::is_internal(p)) out.push_back(p->kind);
  return out;
}

void run_churn(LocalForest& s, std::size_t n, std::uint64_t seed, int ur) {
  OracleGraph g;
  for (const Operation& op : generate_churn(n, 3 * n, 3000, ur, seed)) {
    testing::apply(s, g, op);
    const AuditReport r = s.audit();
    ASSERT_TRUE(r.empty()) << testing::describe(r);
  }
  EXPECT_EQ(testing::count_mismatches(s, g, n), 0u);
}

TEST(LocalForest, RejectsTinyBeta) { EXPECT_THROW(LocalForest(LocalVariant::Lzt, 1), Error); }

TEST(LocalForest, NamesFollowVariant) {
  EXPECT_EQ(LocalForest(LocalVariant::Lt).name(), "LT");
  EXPECT_EQ(LocalForest(LocalVariant::Ltv).name(), "LTV");
  EXPECT_EQ(LocalForest(LocalVariant::Lzt).name(), "LzT");
}

TEST(LocalForest, RunningExampleDeleteInsertsSuperNodeIntoLevelZero) {
  for (LocalVariant variant : {LocalVariant::Lt, LocalVariant::Ltv, LocalVariant::Lzt}) {
    LocalForest s(variant);
    testing::insert_running_example(s);
    EXPECT_EQ(s.ancestor_chain(4), (std::vector<std::pair<int, int>>{{0, 8}}));
    // Endpoints of the dashed edges are the only leaves with bit 0 set.
    const VertexId hit = s.bitmap_search(3, 0);
    EXPECT_TRUE(hit == 1 || hit == 2 || hit == 3 || hit == 6) << hit;

    EXPECT_EQ(s.delete_edge(2, 3), UpdateOutcome::reconnected({1, 3}));
    EXPECT_EQ(s.classify_edge({1, 3}), EdgeClass::tree(0));
    EXPECT_EQ(s.classify_edge({3, 4}), EdgeClass::tree(1));
    EXPECT_EQ(s.ancestor_chain(3), (std::vector<std::pair<int, int>>{{0, 8}, {1, 2}}));
    const LocalForest::Node* s1 = LocalForest::owner(s.leaf(3));
    EXPECT_EQ(s1->kind, Kind::Super);
    EXPECT_EQ(s1->level, 1);
    EXPECT_EQ(LocalForest::owner(s1)->level, 0);
    EXPECT_TRUE(s.audit().empty()) << testing::describe(s.audit());
  }
}

TEST(LocalForest, BitmapSearchLandsOnQualifyingLeaf) {
  for (LocalVariant variant : {LocalVariant::Lt, LocalVariant::Ltv, LocalVariant::Lzt}) {
    LocalForest s(variant);
    OracleGraph g;
    const std::size_t n = 60;
    int checked = 0;
    for (const Operation& op : generate_churn(n, 150, 2000, 4, 21)) {
      testing::apply(s, g, op);
      for (VertexId v = 0; v < n; v += 7) {
        if (!s.has_vertex(v)) continue;
        for (int i = 0; i < 3; ++i) {
          VertexId hit;
          try {
            hit = s.bitmap_search(v, i);
          } catch (const Error& e) {
            ASSERT_EQ(e.code(), ErrorCode::BitUnset);
            continue;
          }
          const bool ok = variant == LocalVariant::Ltv ? s.graph().has_any_at(hit, i) : s.graph().has_nontree_at(hit, i);
          ASSERT_TRUE(ok) << "leaf " << hit << " at level " << i;
          ASSERT_TRUE(s.connected(v, hit));
          ++checked;
        }
      }
    }
    EXPECT_GT(checked, 100);
  }
}

TEST(LocalForest, BridgeDeleteIsPermanent) {
  LocalForest s;
  s.insert_edge(0, 1);
  EXPECT_EQ(s.delete_edge(0, 1).kind, OutcomeKind::SplitPermanent);
  EXPECT_FALSE(s.connected(0, 1));
  EXPECT_TRUE(s.audit().empty());
}

TEST(LazyLocalForest, TwoLeavesPromoteBufferToBottomTree) {
  LocalForest s(LocalVariant::Lzt, 2);
  s.insert_edge(1, 2);
  EXPECT_EQ(branch_path(s.leaf(1)), (std::vector<Kind>{Kind::BottomRoot, Kind::LazyRoot}));
  EXPECT_EQ(branch_path(s.leaf(2)), (std::vector<Kind>{Kind::BottomRoot, Kind::LazyRoot}));
  s.insert_edge(2, 3);
  // A third leaf waits alone in the buffer.
  EXPECT_EQ(branch_path(s.leaf(3)), (std::vector<Kind>{Kind::BufferRoot}));
  EXPECT_TRUE(s.audit().empty()) << testing::describe(s.audit());
}

TEST(LazyLocalForest, SuperNodeOfSizeBetaSkipsBuffer) {
  LocalForest s(LocalVariant::Lzt, 2);
  testing::insert_running_example(s);
  s.delete_edge(2, 3);
  const LocalForest::Node* s1 = LocalForest::owner(s.leaf(3));
  ASSERT_EQ(s1->nl, 2);
  EXPECT_EQ(branch_path(s1), (std::vector<Kind>{Kind::LazyRoot}));
  EXPECT_TRUE(s.audit().empty()) << testing::describe(s.audit());
}

TEST(LazyLocalForest, ShrunkBottomTreeIsRebuffered) {
  LocalForest s(LocalVariant::Lzt, 2);
  s.insert_edge(1, 2);
  s.insert_edge(2, 3);
  s.insert_edge(1, 3);
  // Leaves 1 and 2 form the bottom tree; leaf 3 is buffered.
  ASSERT_EQ(branch_path(s.leaf(3)), (std::vector<Kind>{Kind::BufferRoot}));
  s.delete_edge(1, 2);
  s.delete_edge(1, 3);
  // Vertex 1 left: the bottom tree fell below beta and its survivor rejoined
  // the buffer, which then held two leaves and was promoted.
  EXPECT_FALSE(s.connected(1, 2));
  EXPECT_TRUE(s.connected(2, 3));
  EXPECT_TRUE(s.audit().empty()) << testing::describe(s.audit());
  for (VertexId v : {2u, 3u}) EXPECT_NE(branch_path(s.leaf(v)).front(), Kind::BufferRoot);
}

class LazyBeta : public ::testing::TestWithParam<int> {};

TEST_P(LazyBeta, ChurnKeepsInvariants) {
  LocalForest s(LocalVariant::Lzt, GetParam());
  run_churn(s, 48, 30 + GetParam(), 3);
}

INSTANTIATE_TEST_SUITE_P(Betas, LazyBeta, ::testing::Values(2, 3, 4, 8));

TEST(LocalForest, LocalDepthBoundHoldsUnderChurn) {
  for (LocalVariant variant : {LocalVariant::Lt, LocalVariant::Ltv}) {
    LocalForest s(variant);
    run_churn(s, 64, 77, 2);
  }
}

}  // namespace
}  // namespace dynconn
