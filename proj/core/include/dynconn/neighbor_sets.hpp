#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "dynconn/memory_model.hpp"
#include "dynconn/rng.hpp"
#include "dynconn/types.hpp"

namespace dynconn {

// Hash set of neighbors; scans that need a defined order go through sorted().
class HashNeighborSet {
 public:
  bool insert(VertexId v) { return set_.insert(v).second; }
  bool erase(VertexId v) { return set_.erase(v) > 0; }
  bool contains(VertexId v) const { return set_.count(v) > 0; }
  std::size_t size() const { return set_.size(); }
  bool empty() const { return set_.empty(); }

  template <class F>
  void for_each(F&& f) const {
    for (VertexId v : set_) f(v);
  }

  std::vector<VertexId> sorted() const {
    std::vector<VertexId> out(set_.begin(), set_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t memory_bytes(const MemoryModel& m) const { return m.set_bytes(set_.size()); }

 private:
  std::unordered_set<VertexId> set_;
};

// Randomized search tree over neighbor ids with subtree sizes, so a uniform
// element can be selected by rank.
class RstSet {
 public:
  RstSet() = default;

  bool insert(VertexId v);
  bool erase(VertexId v);
  bool contains(VertexId v) const;
  std::size_t size() const { return root_ < 0 ? 0 : nodes_[root_].size; }
  bool empty() const { return root_ < 0; }

  // k-th smallest element, 0-based; k < size().
  VertexId select(std::size_t k) const;

  template <class F>
  void for_each(F&& f) const {
    walk(root_, f);
  }

  std::vector<VertexId> sorted() const {
    std::vector<VertexId> out;
    out.reserve(size());
    for_each([&](VertexId v) { out.push_back(v); });
    return out;
  }

  // Per entry: node base, key, priority, size, three links.
  std::size_t memory_bytes(const MemoryModel& m) const {
    return m.set_base + size() * (m.node_base + 3 * m.integer + 3 * m.link);
  }

  int height() const { return height_of(root_); }
  bool audit() const;

 private:
  struct Node {
    VertexId key;
    std::uint64_t priority;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t size = 1;
  };

  std::uint32_t sz(std::int32_t t) const { return t < 0 ? 0 : nodes_[t].size; }
  void pull(std::int32_t t) { nodes_[t].size = 1 + sz(nodes_[t].left) + sz(nodes_[t].right); }
  std::int32_t merge(std::int32_t a, std::int32_t b);
  void split(std::int32_t t, VertexId key, std::int32_t& lo, std::int32_t& hi);
  int height_of(std::int32_t t) const;
  bool audit_node(std::int32_t t, const VertexId* lo, const VertexId* hi) const;

  template <class F>
  void walk(std::int32_t t, F& f) const {
    while (t >= 0) {
      walk(nodes_[t].left, f);
      f(nodes_[t].key);
      t = nodes_[t].right;
    }
  }

  std::vector<Node> nodes_;
  std::vector<std::int32_t> free_;
  std::int32_t root_ = -1;
};

}  // namespace dynconn
