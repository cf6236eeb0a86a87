#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "dynconn/connectivity.hpp"
#include "dynconn/graph_model.hpp"
#include "dynconn/local_tree.hpp"

namespace dynconn {

namespace detail {
class SideFinder;
}

enum class LocalVariant { Lt, Ltv, Lzt };

// Structural trees whose super nodes arrange their children as local trees,
// with per-node level bitmaps steering the replacement search. LTV merges
// the adjacency and keeps one bitmap; LzT splits every super node into a
// buffer branch (children with nl < beta) and a lazy branch.
class LocalForest final : public ConnectivityStructure {
 public:
  using Node = LocalTreeArena::Node;
  using Kind = LocalTreeArena::Kind;

  explicit LocalForest(LocalVariant variant = LocalVariant::Lt, int beta = 2);
  ~LocalForest() override;

  std::string_view name() const override;
  UpdateOutcome insert_edge(VertexId u, VertexId v) override;
  UpdateOutcome delete_edge(VertexId u, VertexId v) override;
  bool connected(VertexId u, VertexId v) override;
  EdgeClass classify_edge(EdgeKey key) const override { return graph_.classify_edge(key); }
  std::vector<EdgeRecord> edge_records() const override { return graph_.records(); }
  std::size_t memory_bytes(const MemoryModel& model) const override;
  AuditReport audit() const override;
  std::size_t node_count() const override { return arena_.live(); }
  int max_height() const override;
  std::vector<std::size_t> level_histogram() const override { return graph_.level_histogram(); }
  std::size_t clamped_promotions() const override { return graph_.clamped_promotions(); }

  LocalVariant variant() const { return variant_; }
  int beta() const { return beta_; }
  const GraphModel& graph() const { return graph_; }
  bool has_vertex(VertexId v) const { return v < leaf_.size() && leaf_[v]; }
  const Node* leaf(VertexId v) const { return has_vertex(v) ? leaf_[v] : nullptr; }
  // Super node directly owning x (through rank, connecting and branch roots).
  static Node* owner(const Node* x);
  // (level, nl) of every super node from the root down to v's owner.
  std::vector<std::pair<int, int>> ancestor_chain(VertexId v) const;
  // Leaf reached by bitmap descent on bit i from v's level-i super node.
  // Throws BitUnset.
  VertexId bitmap_search(VertexId v, int i) const;

 private:
  void touch(VertexId v);
  Node* new_super(int level);
  void release_super(Node* z);
  void insert_child(Node* z, Node* x);
  void remove_child(Node* z, Node* x);
  std::vector<Node*> dissolve(Node* z);
  void refresh_leaf(VertexId v);
  static void pull_path(Node* x);
  static Node* root_of(Node* x);
  Node* ancestor_at_level(VertexId v, int level) const;
  Node* child_under(Node* c, VertexId v) const;
  bool merged() const { return variant_ == LocalVariant::Ltv; }
  void audit_local(const Node* root, std::size_t n, AuditReport& out) const;

  LocalVariant variant_;
  int beta_;
  GraphModel graph_;
  LocalTreeArena arena_;
  std::vector<Node*> leaf_;
  std::uint32_t stamp_ = 0;
  std::unique_ptr<detail::SideFinder> finder_;
};

}  // namespace dynconn
