#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dynconn/connectivity.hpp"

namespace dynconn {

// Spanning forest without levels that keeps the sum of node depths small:
// inserts hang the smaller tree under the larger, deletes reattach at the
// shallowest anchor.
class DTree final : public ConnectivityStructure {
 public:
  std::string_view name() const override { return "D-tree"; }
  UpdateOutcome insert_edge(VertexId u, VertexId v) override;
  UpdateOutcome delete_edge(VertexId u, VertexId v) override;
  bool connected(VertexId u, VertexId v) override;
  EdgeClass classify_edge(EdgeKey key) const override;
  std::vector<EdgeRecord> edge_records() const override;
  std::size_t memory_bytes(const MemoryModel& model) const override;
  AuditReport audit() const override;
  std::size_t node_count() const override { return present_; }
  int max_height() const override;

  bool has_vertex(VertexId u) const { return u < nodes_.size() && nodes_[u].present; }
  // (root, depth of u). Throws UnknownVertex.
  std::pair<VertexId, int> find_root(VertexId u) const;
  void reroot(VertexId u);
  // Throws AlreadyConnected when u and v share a tree.
  void insert_tree_edge(VertexId u, VertexId v);
  std::optional<VertexId> parent(VertexId u) const;
  std::uint32_t subtree_size(VertexId u) const;
  std::vector<VertexId> children(VertexId u) const;
  // Sum over vertices of the distance to their root.
  std::uint64_t sum_of_depths() const;

 private:
  static constexpr VertexId kNone = ~VertexId{0};

  struct Node {
    VertexId parent = kNone;
    std::uint32_t size = 1;
    bool present = false;
    std::unordered_set<VertexId> children;
    std::unordered_set<VertexId> nte;
  };

  void touch(VertexId u);
  void require(VertexId u) const;
  void attach(VertexId child, VertexId parent);
  std::vector<int> depths() const;

  std::vector<Node> nodes_;
  std::size_t present_ = 0;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  // Depths memoized within one delete; valid where depth_mark_ == epoch_.
  std::vector<std::uint32_t> depth_mark_;
  std::vector<int> depth_;
  int memo_depth(VertexId y);
  std::vector<VertexId> scratch_;
};

}  // namespace dynconn
