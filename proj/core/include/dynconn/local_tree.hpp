#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "dynconn/types.hpp"

namespace dynconn {

// Owner of local-tree nodes. A local tree hangs below a local root (a super
// node, or a buffer/lazy/bottom root in the lazy variant); its members are
// combined into rank trees by pairing equal ranks, and the rank roots are
// strung on a path of connecting nodes, larger ranks nearer the root.
class LocalTreeArena {
 public:
  enum class Kind : std::uint8_t { Leaf, Super, Rank, Connecting, BufferRoot, LazyRoot, BottomRoot };

  struct Node {
    Kind kind = Kind::Leaf;
    VertexId vertex = 0;
    Node* left = nullptr;
    Node* right = nullptr;
    Node* parent = nullptr;
    int nl = 0;
    int level = 0;  // super nodes only
    std::uint64_t tree_bitmap = 0;
    std::uint64_t nontree_bitmap = 0;  // the single merged bitmap in LTV
    std::uint64_t id = 0;
    std::uint32_t stamp = 0;
  };

  LocalTreeArena() = default;
  LocalTreeArena(const LocalTreeArena&) = delete;
  LocalTreeArena& operator=(const LocalTreeArena&) = delete;

  Node* make(Kind kind);
  Node* make_leaf(VertexId v);
  void release(Node* x);
  std::size_t live() const { return live_; }

  static int rank(const Node* x) { return floor_log2(static_cast<std::uint64_t>(x->nl)); }
  static bool is_internal(const Node* x) { return x->kind == Kind::Rank || x->kind == Kind::Connecting; }
  // Recomputes nl and bitmaps of a non-leaf from its children.
  static void pull(Node* x);

  // New rank node over two equal-rank roots; smaller nl goes left.
  // Throws RankMismatch.
  Node* pair(Node* x, Node* y);
  // Rebuilds root's local tree over rank roots with strictly increasing
  // ranks. Throws UnsortedInput.
  void construct(Node* root, const std::vector<Node*>& roots);
  // Rank roots of root's local tree, ascending by rank.
  std::vector<Node*> rank_roots(const Node* root) const;
  // Direct members (first non-internal nodes below root).
  std::vector<Node*> members(const Node* root) const;
  static Node* local_root_of(Node* x);

  void insert_member(Node* root, Node* x);
  // Throws NotAChild.
  void remove_member(Node* root, Node* x);
  // Frees all rank and connecting nodes under root and returns its members
  // detached.
  std::vector<Node*> release_local(Node* root);

  // Leftmost leaf reachable through nodes with the bit set. Throws BitUnset.
  static Node* bitmap_search(Node* root, int bit, bool nontree);
  // All leaves under root with the bit set, pruning clear subtrees.
  static void collect_leaves(Node* root, int bit, bool nontree, std::vector<Node*>& out);

 private:
  void carry(std::vector<Node*>& roots);
  std::vector<Node*> chain_of(const Node* root) const;

  std::deque<Node> pool_;
  std::vector<Node*> free_;
  std::size_t live_ = 0;
  std::uint64_t next_id_ = 0;
};

}  // namespace dynconn
