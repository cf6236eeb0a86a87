#pragma once

#include <memory>
#include <vector>

#include "dynconn/connectivity.hpp"
#include "dynconn/euler_forest.hpp"
#include "dynconn/graph_model.hpp"
#include "dynconn/neighbor_sets.hpp"

namespace dynconn {

// Single-level Euler-tour forest; non-tree neighbors in weight-carrying
// randomized search trees; the replacement scan walks the smaller tour
// through weighted occurrences only. Never promotes.
class HksStructure final : public ConnectivityStructure {
 public:
  explicit HksStructure(std::uint64_t seed = 1) : forest_(seed) {}

  std::string_view name() const override { return "HKS"; }
  UpdateOutcome insert_edge(VertexId u, VertexId v) override;
  UpdateOutcome delete_edge(VertexId u, VertexId v) override;
  bool connected(VertexId u, VertexId v) override { return forest_.connected(u, v); }
  EdgeClass classify_edge(EdgeKey key) const override;
  std::vector<EdgeRecord> edge_records() const override;
  std::size_t memory_bytes(const MemoryModel& model) const override;
  AuditReport audit() const override;
  std::size_t node_count() const override { return forest_.occurrence_count(); }
  int max_height() const override { return forest_.max_treap_height(); }

  const EulerForest& forest() const { return forest_; }

 private:
  void touch(VertexId v);
  void refresh(VertexId v);

  EulerForest forest_;
  std::vector<RstSet> nte_;
};

// Leveled Euler-tour forests F_0 ⊇ F_1 ⊇ ... with push-down on delete.
// Sampling = true gives HK (weight-guided sampling before the exhaustive
// scan, non-tree sets as randomized search trees); false gives HDT.
template <class Set, bool Sampling>
class LeveledEulerStructure final : public ConnectivityStructure {
 public:
  explicit LeveledEulerStructure(std::uint64_t seed = 1);

  std::string_view name() const override { return Sampling ? "HK" : "HDT"; }
  UpdateOutcome insert_edge(VertexId u, VertexId v) override;
  UpdateOutcome delete_edge(VertexId u, VertexId v) override;
  bool connected(VertexId u, VertexId v) override;
  EdgeClass classify_edge(EdgeKey key) const override { return graph_.classify_edge(key); }
  std::vector<EdgeRecord> edge_records() const override { return graph_.records(); }
  std::size_t memory_bytes(const MemoryModel& model) const override;
  AuditReport audit() const override;
  std::size_t node_count() const override;
  int max_height() const override;
  std::vector<std::size_t> level_histogram() const override { return graph_.level_histogram(); }
  std::size_t clamped_promotions() const override { return graph_.clamped_promotions(); }

  // Weight-proportional non-tree edge incident to v's level-i tree.
  // Throws EmptyWeight. HK only.
  EdgeKey sample_nontree(VertexId v, int level);
  std::size_t sample_budget() const;

  const BasicGraphModel<Set>& graph() const { return graph_; }
  const EulerForest& forest(int level) const { return *forests_.at(level); }
  int forest_count() const { return static_cast<int>(forests_.size()); }

 private:
  EulerForest& level(int i);
  void refresh_weight(VertexId x, int i);
  void promote_tree(EdgeKey e, int i);
  void promote_nontree(EdgeKey e, int i);
  void reconnect(EdgeKey e, int i);

  std::uint64_t seed_;
  BasicGraphModel<Set> graph_;
  std::vector<std::unique_ptr<EulerForest>> forests_;
  Rng rng_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
};

using HkStructure = LeveledEulerStructure<RstSet, true>;
using HdtStructure = LeveledEulerStructure<HashNeighborSet, false>;

extern template class LeveledEulerStructure<RstSet, true>;
extern template class LeveledEulerStructure<HashNeighborSet, false>;

}  // namespace dynconn
