#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "dynconn/types.hpp"

namespace dynconn {

// Explicit adjacency with breadth-first search; ground truth for tests.
class OracleGraph {
 public:
  bool add_edge(VertexId u, VertexId v);
  bool remove_edge(VertexId u, VertexId v);
  bool has_edge(VertexId u, VertexId v) const;
  bool connected(VertexId u, VertexId v) const;

  // Component id per vertex in [0, n); vertices beyond the known range get
  // their own singleton ids.
  std::vector<std::uint32_t> component_labels(std::size_t n) const;
  std::size_t component_count(std::size_t n) const;
  std::size_t edge_count() const { return edges_; }
  std::size_t vertex_count() const { return adj_.size(); }
  std::vector<EdgeKey> edges() const;

 private:
  std::vector<std::unordered_set<VertexId>> adj_;
  std::size_t edges_ = 0;
};

bool oracle_connected(const OracleGraph& g, VertexId u, VertexId v);

}  // namespace dynconn
