#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "dynconn/connectivity.hpp"

namespace dynconn {

// Link-cut tree: preferred paths as splay trees ordered by depth, with a
// path_parent pointer from each splay root and a lazy flip bit for evert.
class LinkCutForest final : public ConnectivityStructure {
 public:
  std::string_view name() const override { return "LCT"; }
  UpdateOutcome insert_edge(VertexId u, VertexId v) override;
  UpdateOutcome delete_edge(VertexId u, VertexId v) override;
  bool connected(VertexId u, VertexId v) override;
  EdgeClass classify_edge(EdgeKey key) const override;
  std::vector<EdgeRecord> edge_records() const override;
  std::size_t memory_bytes(const MemoryModel& model) const override;
  AuditReport audit() const override;
  std::size_t node_count() const override { return present_; }
  // Deepest represented node.
  int max_height() const override;

  bool has_vertex(VertexId u) const { return u < nodes_.size() && nodes_[u].present; }
  void access(VertexId u);
  VertexId find_root(VertexId u);
  void evert(VertexId u);
  // Throws AlreadyConnected.
  void link(VertexId u, VertexId v);
  // Throws NotTreeEdge.
  void cut(VertexId u, VertexId v);

  // Represented forest recovered from splay trees and path_parent pointers,
  // as (child, parent) pairs; read-only.
  std::vector<std::pair<VertexId, VertexId>> represented_parents() const;

 private:
  static constexpr std::int32_t kNil = -1;

  struct Node {
    std::int32_t left = kNil;
    std::int32_t right = kNil;
    std::int32_t parent = kNil;       // splay-tree parent only
    std::int32_t path_parent = kNil;  // set on splay roots
    bool flip = false;
    bool present = false;
    std::unordered_set<VertexId> nte;
    std::unordered_set<VertexId> tree_adj;
  };

  void touch(VertexId u);
  void require(VertexId u) const;
  void push(std::int32_t x);
  void rotate(std::int32_t x);
  void splay(std::int32_t x);
  void link_unchecked(VertexId u, VertexId v);

  std::vector<Node> nodes_;
  std::size_t present_ = 0;
  std::vector<std::int32_t> splay_stack_;
  std::vector<std::uint32_t> mark_a_;
  std::vector<std::uint32_t> mark_b_;
  std::uint32_t epoch_ = 0;
};

}  // namespace dynconn
