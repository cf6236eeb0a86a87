#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <fstream>

#include "dynconn/oracle.hpp"
#include "dynconn/structures.hpp"
#include "dynconn/workload.hpp"

namespace dynconn {
namespace {

std::vector<EdgeKey> path_edges(VertexId n) {
  std::vector<EdgeKey> out;
  for (VertexId v = 1; v < n; ++v) out.push_back({v - 1, v});
  return out;
}

std::vector<std::size_t> positions_of(const std::vector<Operation>& ops, Operation::Type t) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < ops.size(); ++k)
    if (ops[k].type == t) out.push_back(k + 1);
  return out;
}

TEST(GenerateUpdates, DeleteEveryFifthInsert) {
  WorkloadConfig cfg;
  cfg.u_r = 5;
  const auto ops = generate_updates(path_edges(11), cfg);
  ASSERT_EQ(ops.size(), 12u);
  EXPECT_EQ(positions_of(ops, Operation::Type::Insert).size(), 10u);
  EXPECT_EQ(positions_of(ops, Operation::Type::Delete), (std::vector<std::size_t>{6, 12}));
  // Each delete removes an edge present at that moment.
  OracleGraph g;
  for (const Operation& op : ops) {
    if (op.type == Operation::Type::Insert)
      EXPECT_TRUE(g.add_edge(op.edge.a, op.edge.b));
    else
      EXPECT_TRUE(g.remove_edge(op.edge.a, op.edge.b));
  }
}

TEST(GenerateUpdates, LargeRatioIsInsertOnly) {
  WorkloadConfig cfg;
  cfg.u_r = 11;
  const auto ops = generate_updates(path_edges(11), cfg);
  EXPECT_EQ(ops.size(), 10u);
  EXPECT_TRUE(positions_of(ops, Operation::Type::Delete).empty());
}

TEST(GenerateUpdates, DeterministicAndSeedSensitive) {
  WorkloadConfig cfg;
  cfg.u_r = 3;
  cfg.shuffle = true;
  const auto edges = path_edges(200);
  const auto a = generate_updates(edges, cfg);
  EXPECT_EQ(a, generate_updates(edges, cfg));
  cfg.seed = 2;
  EXPECT_NE(a, generate_updates(edges, cfg));
  cfg.u_r = 0;
  EXPECT_THROW(generate_updates(edges, cfg), Error);
}

TEST(GenerateUpdates, ReplayAgreesAcrossStructures) {
  WorkloadConfig cfg;
  cfg.u_r = 2;
  std::vector<EdgeKey> edges;
  for (VertexId u = 0; u < 12; ++u)
    for (VertexId v = u + 1; v < 12; v += 3) edges.push_back({u, v});
  const auto ops = generate_updates(edges, cfg);
  auto a = make_structure(StructureKind::Lt);
  auto b = make_structure(StructureKind::DTree);
  for (const Operation& op : ops) {
    if (op.type == Operation::Type::Insert) {
      a->insert_edge(op.edge.a, op.edge.b);
      b->insert_edge(op.edge.a, op.edge.b);
    } else {
      a->delete_edge(op.edge.a, op.edge.b);
      b->delete_edge(op.edge.a, op.edge.b);
    }
    std::vector<EdgeKey> ka, kb;
    for (const auto& r : a->edge_records()) ka.push_back(r.key);
    for (const auto& r : b->edge_records()) kb.push_back(r.key);
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    ASSERT_EQ(ka, kb);
  }
}

TEST(TestingPoints, EveryTenUpdates) {
  WorkloadConfig cfg;
  cfg.test_num = 100;
  cfg.queries_per_point = 7;
  std::vector<Operation> updates;
  for (VertexId v = 1; v <= 1000; ++v) updates.push_back(Operation::insert({0, v}));
  const auto ops = place_testing_points(updates, cfg);
  const auto q = positions_of(ops, Operation::Type::Query);
  ASSERT_EQ(q.size(), 100u);
  for (std::size_t k = 0; k < q.size(); ++k) {
    EXPECT_EQ(q[k], 11 * (k + 1));
    EXPECT_EQ(ops[q[k] - 1].count, 7u);
  }
}

TEST(TestingPoints, SingleMarkerAndTooFew) {
  WorkloadConfig cfg;
  cfg.test_num = 1;
  std::vector<Operation> updates;
  for (VertexId v = 1; v <= 13; ++v) updates.push_back(Operation::insert({0, v}));
  const auto ops = place_testing_points(updates, cfg);
  EXPECT_EQ(positions_of(ops, Operation::Type::Query), (std::vector<std::size_t>{14}));
  cfg.test_num = 7;
  EXPECT_EQ(positions_of(place_testing_points(updates, cfg), Operation::Type::Query).size(), 7u);
  cfg.test_num = 14;
  try {
    place_testing_points(updates, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewUpdates);
  }
}

TEST(QueryPairs, EmptyDeterministicAndUniform) {
  EXPECT_TRUE(generate_query_pairs(100, 0, 1).empty());
  EXPECT_EQ(generate_query_pairs(100, 50, 9), generate_query_pairs(100, 50, 9));
  EXPECT_NE(generate_query_pairs(100, 50, 9), generate_query_pairs(100, 50, 10));

  const std::size_t n = 100, draws = 100000;
  std::vector<double> freq(n, 0);
  for (auto [u, v] : generate_query_pairs(n, draws, 4)) {
    ASSERT_NE(u, v);
    ASSERT_LT(u, n);
    ASSERT_LT(v, n);
    freq[u] += 1;
    freq[v] += 1;
  }
  const double expected = 2.0 * draws / n;
  double stat = 0;
  for (double f : freq) {
    stat += (f - expected) * (f - expected) / expected;
    // Each count within 3 sigma of its binomial mean, with a small slack for
    // the maximum over 100 counts.
    EXPECT_LT(std::abs(f - expected), 4 * std::sqrt(expected));
  }
  const boost::math::chi_squared dist(n - 1);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, stat)), 0.001);
  EXPECT_THROW(generate_query_pairs(1, 3, 1), Error);
}

TEST(Churn, RespectsCapAndCount) {
  const auto ops = generate_churn(20, 30, 2000, 3, 5);
  EXPECT_EQ(ops.size(), 2000u);
  OracleGraph g;
  for (const Operation& op : ops) {
    if (op.type == Operation::Type::Insert)
      ASSERT_TRUE(g.add_edge(op.edge.a, op.edge.b));
    else
      ASSERT_TRUE(g.remove_edge(op.edge.a, op.edge.b));
    ASSERT_LE(g.edge_count(), 30u);
  }
  try {
    generate_churn(5, 11, 10, 3, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleM);
  }
}

TEST(Serialization, RoundTripAndFile) {
  Workload w{42, 5, {Operation::insert({0, 1}), Operation::insert({1, 2}), Operation::query(9), Operation::erase({0, 1})}};
  const std::string text = serialize_workload(w);
  EXPECT_EQ(text.rfind("# dynconn-workload v1 seed=42 ur=5\n", 0), 0u);
  const Workload back = parse_workload(text);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.u_r, 5);
  EXPECT_EQ(back.ops, w.ops);
  EXPECT_EQ(serialize_workload(back), text);
  EXPECT_EQ(w.vertex_count(), 3u);

  const std::string path = ::testing::TempDir() + "w.txt";
  write_workload(w, path);
  EXPECT_EQ(read_workload(path).ops, w.ops);
  EXPECT_THROW(parse_workload("garbage line\n"), Error);
  EXPECT_THROW(read_workload(::testing::TempDir() + "missing/none.txt"), Error);
}

}  // namespace
}  // namespace dynconn
