#pragma once

#include <cstdint>
#include <vector>

#include "dynconn/graph_model.hpp"

namespace dynconn::detail {

// Splits the level->=i tree containing a deleted edge (a, b) by BFS from both
// endpoints in lockstep. The side that exhausts first is complete and no
// larger than the other; on equal sizes the side of a wins.
class SideFinder {
 public:
  template <class Set>
  void run(const BasicGraphModel<Set>& g, EdgeKey key, int i, std::size_t& visits) {
    const std::size_t n = g.vertex_count();
    if (mark_a_.size() < n) {
      mark_a_.resize(n, 0);
      mark_b_.resize(n, 0);
    }
    ++epoch_;
    side_a_.assign(1, key.a);
    side_b_.assign(1, key.b);
    mark_a_[key.a] = epoch_;
    mark_b_[key.b] = epoch_;
    std::size_t ha = 0, hb = 0;
    for (;;) {
      if (!step(g, i, side_a_, ha, mark_a_, visits)) {
        a_side_ = true;
        break;
      }
      if (!step(g, i, side_b_, hb, mark_b_, visits)) {
        a_side_ = false;
        break;
      }
    }
  }

  const std::vector<VertexId>& side() const { return a_side_ ? side_a_ : side_b_; }
  bool in_side(VertexId v) const { return (a_side_ ? mark_a_ : mark_b_)[v] == epoch_; }
  bool a_side() const { return a_side_; }

 private:
  template <class Set>
  bool step(const BasicGraphModel<Set>& g, int i, std::vector<VertexId>& side, std::size_t& head,
            std::vector<std::uint32_t>& mark, std::size_t& visits) {
    if (head == side.size()) return false;
    const VertexId x = side[head++];
    for (int j = i; j < g.levels_of(x); ++j) {
      const auto* adj = g.at(x, j);
      auto take = [&](VertexId y) {
        if (mark[y] != epoch_) {
          mark[y] = epoch_;
          side.push_back(y);
        }
      };
      if (g.mode() == AdjacencyMode::Split) {
        visits += adj->tree.size();
        adj->tree.for_each(take);
      } else {
        visits += adj->merged.size();
        for (const auto& [y, t] : adj->merged)
          if (t) take(y);
      }
    }
    return true;
  }

  std::vector<std::uint32_t> mark_a_, mark_b_;
  std::vector<VertexId> side_a_, side_b_;
  std::uint32_t epoch_ = 0;
  bool a_side_ = true;
};

// Union-find clusters of the level->=j tree forest, for canonical audits.
class LevelClusters {
 public:
  LevelClusters(std::size_t n, const std::vector<EdgeRecord>& records, int j) : parent_(n), size_(n, 1) {
    for (std::size_t v = 0; v < n; ++v) parent_[v] = static_cast<VertexId>(v);
    for (const EdgeRecord& r : records)
      if (r.kind == EdgeKind::Tree && r.level >= j) unite(r.key.a, r.key.b);
  }
  VertexId find(VertexId v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  std::size_t size_of(VertexId v) { return size_[find(v)]; }

 private:
  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::vector<VertexId> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace dynconn::detail
