#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <utility>
#include <vector>

#include "dynconn/connectivity.hpp"
#include "dynconn/graph_model.hpp"

namespace dynconn {

namespace detail {
class SideFinder;
}

// Structural trees: one level-0 root per component, and a level-i super node
// for every level-i cluster with at least two vertices, parenting the
// level-(i+1) super nodes and the leaves whose deepest multi-vertex cluster
// it is. Split mode is ST, merged adjacency is STV.
class StructuralForest final : public ConnectivityStructure {
 public:
  explicit StructuralForest(AdjacencyMode mode = AdjacencyMode::Split);
  ~StructuralForest() override;

  std::string_view name() const override { return graph_.mode() == AdjacencyMode::Split ? "ST" : "STV"; }
  UpdateOutcome insert_edge(VertexId u, VertexId v) override;
  UpdateOutcome delete_edge(VertexId u, VertexId v) override;
  bool connected(VertexId u, VertexId v) override;
  EdgeClass classify_edge(EdgeKey key) const override { return graph_.classify_edge(key); }
  std::vector<EdgeRecord> edge_records() const override { return graph_.records(); }
  std::size_t memory_bytes(const MemoryModel& model) const override;
  AuditReport audit() const override;
  std::size_t node_count() const override { return live_; }
  // Deepest leaf, counted in edges from its root.
  int max_height() const override;
  std::vector<std::size_t> level_histogram() const override { return graph_.level_histogram(); }
  std::size_t clamped_promotions() const override { return graph_.clamped_promotions(); }

  const GraphModel& graph() const { return graph_; }
  bool has_vertex(VertexId v) const { return v < leaf_.size() && leaf_[v]; }
  // Id of the level-0 root above v. Throws UnknownVertex.
  std::uint64_t find_root(VertexId v) const;
  // (level, nl) of every super node from the root down to v's parent.
  std::vector<std::pair<int, int>> ancestor_chain(VertexId v) const;
  int leaf_count_under_root(VertexId v) const;

 private:
  struct Node {
    Node* parent = nullptr;
    std::vector<Node*> children;
    std::size_t slot = 0;  // index in parent->children
    int nl = 1;
    int level = 0;
    bool leaf = false;
    VertexId vertex = 0;
    std::uint64_t id = 0;
    std::uint32_t stamp = 0;
  };

  void touch(VertexId v);
  Node* new_super(int level);
  void free_node(Node* x);
  void attach(Node* x, Node* p);
  void detach(Node* x);
  Node* root_of(Node* x) const;
  Node* ancestor_at_level(VertexId v, int level) const;
  Node* child_under(Node* c, VertexId v) const;
  void restructure(Node* c, const std::vector<VertexId>& side, int i, bool success);

  GraphModel graph_;
  std::deque<Node> pool_;
  std::vector<Node*> free_;
  std::vector<Node*> leaf_;
  std::size_t live_ = 0;
  std::uint64_t next_id_ = 0;
  std::uint32_t stamp_ = 0;
  std::unique_ptr<detail::SideFinder> finder_;
};

}  // namespace dynconn
