#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dynconn/types.hpp"

namespace dynconn {

struct Operation {
  enum class Type : std::uint8_t { Insert, Delete, Query };
  Type type = Type::Insert;
  EdgeKey edge{};
  std::uint32_t count = 0;  // query pairs in a batch

  static Operation insert(EdgeKey e) { return {Type::Insert, e, 0}; }
  static Operation erase(EdgeKey e) { return {Type::Delete, e, 0}; }
  static Operation query(std::uint32_t k) { return {Type::Query, {}, k}; }
  bool operator==(const Operation&) const = default;
};

struct WorkloadConfig {
  int u_r = 1000;
  int test_num = 100;
  int queries_per_point = 1000;
  std::uint64_t seed = 1;
  bool shuffle = false;  // seeded shuffle of the input edge order
};

// Inserts every edge in order; after each u_r-th insertion deletes a
// uniformly chosen present edge.
std::vector<Operation> generate_updates(const std::vector<EdgeKey>& edges, const WorkloadConfig& cfg);

// Adds test_num query markers, one after every floor(N_u / test_num)
// updates. Throws TooFewUpdates when N_u < test_num.
std::vector<Operation> place_testing_points(const std::vector<Operation>& ops, const WorkloadConfig& cfg);

// Seeded uniform pairs with u != v. Requires n >= 2 unless count is 0.
std::vector<std::pair<VertexId, VertexId>> generate_query_pairs(std::size_t n, std::size_t count, std::uint64_t seed);

// Seed of the query pairs at the batch-th testing point (0-based).
std::uint64_t query_batch_seed(std::uint64_t seed, std::size_t batch);

// Random-graph churn on n vertices: inserts uniform absent pairs, deletes a
// uniform present edge after every u_r-th insertion and whenever m edges
// are present. Exactly num_ops updates.
std::vector<Operation> generate_churn(std::size_t n, std::size_t m, std::size_t num_ops, int u_r, std::uint64_t seed);

struct Workload {
  std::uint64_t seed = 1;
  int u_r = 1;
  std::vector<Operation> ops;

  // Max vertex id + 1 over all updates.
  std::size_t vertex_count() const;
};

std::string serialize_workload(const Workload& w);
// Throws InvalidArgument on malformed input.
Workload parse_workload(std::string_view text);
void write_workload(const Workload& w, const std::string& path);
Workload read_workload(const std::string& path);

}  // namespace dynconn
