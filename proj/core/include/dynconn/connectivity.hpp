#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dynconn/memory_model.hpp"
#include "dynconn/types.hpp"

namespace dynconn {

struct StructureStats {
  std::size_t node_count = 0;
  int max_height = 0;
  std::vector<std::size_t> level_histogram;
  std::size_t memory_bytes = 0;
  std::size_t clamped_promotions = 0;
  std::size_t edges_visited = 0;
};

struct AuditViolation {
  std::string category;  // forest, tour, aggregate, nl, bitmap, height, rank-roots, rank-height, local-depth, ...
  std::string detail;
};
using AuditReport = std::vector<AuditViolation>;

// Common contract of all fully-dynamic connectivity structures. Vertices are
// created on first use; connected() on unknown ids is false unless u == v.
class ConnectivityStructure {
 public:
  virtual ~ConnectivityStructure() = default;

  virtual std::string_view name() const = 0;
  virtual UpdateOutcome insert_edge(VertexId u, VertexId v) = 0;
  virtual UpdateOutcome delete_edge(VertexId u, VertexId v) = 0;
  // Non-const: link-cut trees splay on queries.
  virtual bool connected(VertexId u, VertexId v) = 0;

  virtual EdgeClass classify_edge(EdgeKey key) const = 0;
  virtual std::vector<EdgeRecord> edge_records() const = 0;
  virtual std::size_t memory_bytes(const MemoryModel& model) const = 0;
  // Full structural self-check against a recomputation; empty when healthy.
  virtual AuditReport audit() const = 0;

  StructureStats stats(const MemoryModel& model = {}) const;

  virtual std::size_t node_count() const = 0;
  virtual int max_height() const = 0;
  virtual std::vector<std::size_t> level_histogram() const;
  virtual std::size_t clamped_promotions() const { return 0; }
  std::size_t edges_visited() const { return edges_visited_; }

 protected:
  std::size_t edges_visited_ = 0;
};

}  // namespace dynconn
