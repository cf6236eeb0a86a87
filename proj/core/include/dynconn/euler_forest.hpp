#pragma once

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynconn/connectivity.hpp"
#include "dynconn/memory_model.hpp"
#include "dynconn/rng.hpp"
#include "dynconn/types.hpp"

namespace dynconn {

// One occurrence of a vertex in an Euler tour, stored as a treap node whose
// in-order sequence is the tour.
struct EtNode {
  EtNode* left = nullptr;
  EtNode* right = nullptr;
  EtNode* parent = nullptr;
  std::uint64_t priority = 0;
  VertexId vertex = 0;
  bool active = false;
  std::int32_t count = 1;       // occurrences in subtree
  std::int32_t size = 0;        // active occurrences in subtree
  std::int64_t weight = 0;      // sum of own_weight in subtree
  std::int32_t own_weight = 0;  // non-tree incidences; active nodes only
};

namespace treap {

inline std::int32_t count(const EtNode* t) { return t ? t->count : 0; }
void update(EtNode* t);
EtNode* merge(EtNode* a, EtNode* b);
// First k occurrences go left.
std::pair<EtNode*, EtNode*> split_at(EtNode* t, std::int32_t k);
EtNode* root_of(EtNode* x);
const EtNode* root_of(const EtNode* x);
EtNode* first(EtNode* t);
EtNode* last(EtNode* t);
EtNode* next(EtNode* x);
EtNode* prev(EtNode* x);
// 0-based in-order position within x's tree.
std::int32_t rank(const EtNode* x);
int height(const EtNode* t);

}  // namespace treap

// Euler-tour forest for one level: each tree's tour has 2k-1 occurrences for
// k vertices, exactly one of them active per vertex, and every tree edge owns
// the four occurrences bounding its two arcs.
class EulerForest {
 public:
  explicit EulerForest(std::uint64_t seed = 1) : rng_(seed) {}
  EulerForest(const EulerForest&) = delete;
  EulerForest& operator=(const EulerForest&) = delete;

  void ensure_vertex(VertexId v);
  bool has_vertex(VertexId v) const { return v < active_.size() && active_[v]; }
  bool connected(VertexId u, VertexId v) const;

  // Throws AlreadyConnected.
  void link(VertexId u, VertexId v);
  // Throws NotTreeEdge.
  void cut(VertexId u, VertexId v);
  // Rotates v's tour to begin and end at v. Throws UnknownVertex.
  void reroot(VertexId v);

  bool has_tree_edge(EdgeKey key) const { return arcs_.count(key) > 0; }
  std::int32_t tree_size(VertexId v) const;
  std::int64_t tree_weight(VertexId v) const;
  void set_own_weight(VertexId v, std::int32_t w);
  std::int32_t own_weight(VertexId v) const;
  const EtNode* tour_root(VertexId v) const;
  const EtNode* active_node(VertexId v) const { return has_vertex(v) ? active_[v] : nullptr; }

  // Occurrence sequence of v's tour.
  std::vector<VertexId> tour(VertexId v) const;
  // Vertices of v's tree in tour order of their active occurrences.
  std::vector<VertexId> vertices_of(VertexId v) const;

  // Visits active occurrences with own_weight > 0 in v's tree, skipping
  // weightless subtrees; stops early when f returns true.
  template <class F>
  void for_each_weighted(VertexId v, F&& f) const {
    const EtNode* root = tour_root(v);
    if (root) weighted_walk(root, f);
  }

  // Active vertex of v's tree drawn with probability own_weight / weight.
  // Throws EmptyWeight.
  VertexId sample_weighted(VertexId v, Rng& rng) const;

  std::size_t occurrence_count() const { return live_; }
  std::size_t vertex_count() const { return vertices_; }
  std::size_t tree_edge_count() const { return arcs_.size(); }
  std::vector<EdgeKey> tree_edges() const;
  int max_treap_height() const;

  // Fields: key, three links, priority, active, count, and one aggregate.
  std::size_t memory_bytes(const MemoryModel& m) const;

  // Tour validity, aggregate consistency and decoded forest == expected.
  void audit(const std::vector<EdgeKey>& expected_tree_edges, const std::string& label, AuditReport& out) const;

 private:
  struct ArcSlots {
    EtNode* ab_tail = nullptr;
    EtNode* ab_head = nullptr;
    EtNode* ba_tail = nullptr;
    EtNode* ba_head = nullptr;
  };

  EtNode* make_node(VertexId v, bool active);
  void free_node(EtNode* x);
  EtNode*& tail_slot(VertexId from, VertexId to);
  EtNode*& head_slot(VertexId from, VertexId to);

  template <class F>
  static bool weighted_walk(const EtNode* t, F& f) {
    if (!t || t->weight == 0) return false;
    if (weighted_walk(t->left, f)) return true;
    if (t->active && t->own_weight > 0 && f(t->vertex)) return true;
    return weighted_walk(t->right, f);
  }

  std::deque<EtNode> pool_;
  std::vector<EtNode*> free_;
  std::vector<EtNode*> active_;
  std::unordered_map<EdgeKey, ArcSlots> arcs_;
  Rng rng_;
  std::size_t live_ = 0;
  std::size_t vertices_ = 0;
};

}  // namespace dynconn
