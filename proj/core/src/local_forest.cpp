#include "dynconn/local_forest.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "side_finder.hpp"

namespace dynconn {

using Node = LocalForest::Node;
using Kind = LocalForest::Kind;

namespace {

bool is_branch_root(const Node* x) {
  return x->kind == Kind::BufferRoot || x->kind == Kind::LazyRoot || x->kind == Kind::BottomRoot;
}

}  // namespace

LocalForest::LocalForest(LocalVariant variant, int beta)
    : variant_(variant),
      beta_(beta),
      graph_(variant == LocalVariant::Ltv ? AdjacencyMode::Merged : AdjacencyMode::Split),
      finder_(std::make_unique<detail::SideFinder>()) {
  if (beta < 2) throw Error(ErrorCode::InvalidArgument, "beta must be at least 2");
}

LocalForest::~LocalForest() = default;

std::string_view LocalForest::name() const {
  switch (variant_) {
    case LocalVariant::Lt: return "LT";
    case LocalVariant::Ltv: return "LTV";
    case LocalVariant::Lzt: return "LzT";
  }
  return "LT";
}

Node* LocalForest::new_super(int level) {
  Node* z = arena_.make(Kind::Super);
  z->level = level;
  if (variant_ == LocalVariant::Lzt) {
    z->left = arena_.make(Kind::BufferRoot);
    z->right = arena_.make(Kind::LazyRoot);
    z->left->parent = z;
    z->right->parent = z;
  }
  return z;
}

void LocalForest::release_super(Node* z) {
  if (variant_ == LocalVariant::Lzt) {
    arena_.release(z->left);
    arena_.release(z->right);
  }
  arena_.release(z);
}

Node* LocalForest::owner(const Node* x) {
  Node* r = LocalTreeArena::local_root_of(const_cast<Node*>(x));
  if (!r) return nullptr;
  switch (r->kind) {
    case Kind::Super: return r;
    case Kind::BottomRoot: return owner(r);
    default: return r->parent;  // buffer or lazy branch root
  }
}

Node* LocalForest::root_of(Node* x) {
  while (x->parent) x = x->parent;
  return x;
}

void LocalForest::pull_path(Node* x) {
  for (Node* y = x->parent; y; y = y->parent) LocalTreeArena::pull(y);
}

void LocalForest::insert_child(Node* z, Node* x) {
  if (variant_ != LocalVariant::Lzt) {
    arena_.insert_member(z, x);
    return;
  }
  Node* buffer = z->left;
  if (x->nl < beta_) {
    arena_.insert_member(buffer, x);
    if (buffer->nl >= beta_) {
      // The full buffer becomes a bottom tree of the lazy branch.
      buffer->kind = Kind::BottomRoot;
      buffer->parent = nullptr;
      z->left = arena_.make(Kind::BufferRoot);
      z->left->parent = z;
      arena_.insert_member(z->right, buffer);
    }
  } else {
    arena_.insert_member(z->right, x);
  }
  LocalTreeArena::pull(z);
}

void LocalForest::remove_child(Node* z, Node* x) {
  if (variant_ != LocalVariant::Lzt) {
    arena_.remove_member(z, x);
    return;
  }
  Node* r = LocalTreeArena::local_root_of(x);
  if (!r || owner(x) != z) throw Error(ErrorCode::NotAChild, "node is not a child of this super node");
  if (r->kind == Kind::BottomRoot) {
    arena_.remove_member(z->right, r);
    arena_.remove_member(r, x);
    if (r->nl < beta_) {
      const std::vector<Node*> survivors = arena_.release_local(r);
      arena_.release(r);
      for (Node* s : survivors) insert_child(z, s);
    } else {
      arena_.insert_member(z->right, r);
    }
  } else {
    arena_.remove_member(r, x);
  }
  LocalTreeArena::pull(z);
}

std::vector<Node*> LocalForest::dissolve(Node* z) {
  if (variant_ != LocalVariant::Lzt) return arena_.release_local(z);
  std::vector<Node*> out = arena_.release_local(z->left);
  for (Node* m : arena_.release_local(z->right)) {
    if (m->kind != Kind::BottomRoot) {
      out.push_back(m);
      continue;
    }
    for (Node* g : arena_.release_local(m)) out.push_back(g);
    arena_.release(m);
  }
  LocalTreeArena::pull(z);
  return out;
}

void LocalForest::touch(VertexId v) {
  graph_.ensure_vertex(v);
  if (leaf_.size() <= v) leaf_.resize(static_cast<std::size_t>(v) + 1, nullptr);
  if (leaf_[v]) return;
  Node* l = arena_.make_leaf(v);
  leaf_[v] = l;
  insert_child(new_super(0), l);
}

void LocalForest::refresh_leaf(VertexId v) {
  Node* l = leaf_[v];
  l->tree_bitmap = 0;
  l->nontree_bitmap = 0;
  const int top = std::min(graph_.levels_of(v), 64);
  for (int i = 0; i < top; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (merged()) {
      if (graph_.has_any_at(v, i)) l->nontree_bitmap |= bit;
    } else {
      if (graph_.has_tree_at(v, i)) l->tree_bitmap |= bit;
      if (graph_.has_nontree_at(v, i)) l->nontree_bitmap |= bit;
    }
  }
  pull_path(l);
}

Node* LocalForest::ancestor_at_level(VertexId v, int level) const {
  Node* x = owner(leaf_[v]);
  while (x->level > level) x = owner(x);
  return x;
}

Node* LocalForest::child_under(Node* c, VertexId v) const {
  Node* x = leaf_[v];
  for (Node* o = owner(x); o != c; o = owner(x)) x = o;
  return x;
}

bool LocalForest::connected(VertexId u, VertexId v) {
  if (u == v) return true;
  if (!has_vertex(u) || !has_vertex(v)) return false;
  return root_of(leaf_[u]) == root_of(leaf_[v]);
}

UpdateOutcome LocalForest::insert_edge(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  touch(u);
  touch(v);
  if (graph_.contains(key)) return UpdateOutcome::of(OutcomeKind::DuplicateIgnored);
  Node* ru = root_of(leaf_[u]);
  Node* rv = root_of(leaf_[v]);
  UpdateOutcome result = UpdateOutcome::of(OutcomeKind::NewNonTreeEdge);
  if (ru == rv) {
    graph_.record_edge(key, 0, EdgeKind::NonTree);
  } else {
    graph_.record_edge(key, 0, EdgeKind::Tree);
    Node* big = ru->nl >= rv->nl ? ru : rv;
    Node* small = big == ru ? rv : ru;
    for (Node* m : dissolve(small)) insert_child(big, m);
    release_super(small);
    result = UpdateOutcome::of(OutcomeKind::NewTreeEdge);
  }
  refresh_leaf(u);
  refresh_leaf(v);
  return result;
}

UpdateOutcome LocalForest::delete_edge(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  const auto rec = graph_.find(key);
  if (!rec) return UpdateOutcome::of(OutcomeKind::MissingIgnored);
  graph_.erase_edge(key);
  refresh_leaf(key.a);
  refresh_leaf(key.b);
  if (rec->kind == EdgeKind::NonTree) return UpdateOutcome::of(OutcomeKind::NonTreeRemoved);

  for (int i = rec->level; i >= 0; --i) {
    Node* c = ancestor_at_level(key.a, i);
    finder_->run(graph_, key, i, edges_visited_);
    std::vector<VertexId> side = finder_->side();
    std::sort(side.begin(), side.end());

    for (VertexId x : side)
      for (VertexId y : graph_.sorted_tree(x, i))
        if (x < y && graph_.promote_edge(EdgeKey{x, y}, i + 1)) {
          refresh_leaf(x);
          refresh_leaf(y);
        }

    // Detach the side from c and gather it under one node.
    ++stamp_;
    std::vector<Node*> parts;
    for (VertexId x : side) {
      Node* ch = child_under(c, x);
      if (ch->stamp != stamp_) {
        ch->stamp = stamp_;
        parts.push_back(ch);
      }
    }
    for (Node* ch : parts) remove_child(c, ch);
    Node* node;
    if (side.size() == 1) {
      node = leaf_[side.front()];
    } else {
      node = new_super(i + 1);
      for (Node* ch : parts) {
        if (ch->kind == Kind::Leaf) {
          insert_child(node, ch);
          continue;
        }
        for (Node* g : dissolve(ch)) insert_child(node, g);
        release_super(ch);
      }
    }

    std::vector<Node*> cands;
    LocalTreeArena::collect_leaves(node, i, true, cands);
    std::sort(cands.begin(), cands.end(), [](const Node* a, const Node* b) { return a->vertex < b->vertex; });
    bool found = false;
    EdgeKey repl{};
    for (const Node* l : cands) {
      const VertexId x = l->vertex;
      std::vector<VertexId> nbrs;
      if (merged()) {
        for (const auto& [y, tree] : graph_.sorted_merged(x, i)) {
          if (tree) {
            ++edges_visited_;
            continue;
          }
          nbrs.push_back(y);
        }
      } else {
        nbrs = graph_.sorted_nontree(x, i);
      }
      for (VertexId y : nbrs) {
        ++edges_visited_;
        const EdgeKey e = normalize_edge(x, y);
        if (!finder_->in_side(y)) {
          repl = e;
          found = true;
          break;
        }
        if (graph_.promote_edge(e, i + 1)) {
          refresh_leaf(x);
          refresh_leaf(y);
        }
      }
      if (found) break;
    }

    if (found) {
      graph_.set_kind(repl, EdgeKind::Tree);
      refresh_leaf(repl.a);
      refresh_leaf(repl.b);
      insert_child(c, node);
      pull_path(c);
      return UpdateOutcome::reconnected(repl);
    }
    if (i == 0) {
      insert_child(new_super(0), node);
      continue;
    }
    Node* p = owner(c);
    if (side.size() >= 2) {
      Node* wrap = new_super(i);
      insert_child(wrap, node);
      node = wrap;
    }
    remove_child(p, c);
    if (c->nl == 1) {
      Node* only = dissolve(c).front();
      release_super(c);
      insert_child(p, only);
    } else {
      insert_child(p, c);
    }
    insert_child(p, node);
    pull_path(p);
  }
  return UpdateOutcome::of(OutcomeKind::SplitPermanent);
}

VertexId LocalForest::bitmap_search(VertexId v, int i) const {
  if (!has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
  return LocalTreeArena::bitmap_search(ancestor_at_level(v, i), i, true)->vertex;
}

std::vector<std::pair<int, int>> LocalForest::ancestor_chain(VertexId v) const {
  if (!has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
  std::vector<std::pair<int, int>> out;
  for (Node* x = owner(leaf_[v]); x; x = owner(x)) out.emplace_back(x->level, x->nl);
  std::reverse(out.begin(), out.end());
  return out;
}

int LocalForest::max_height() const {
  int best = 0;
  for (Node* l : leaf_) {
    if (!l) continue;
    int d = 0;
    for (const Node* x = l; x->parent; x = x->parent) ++d;
    best = std::max(best, d);
  }
  return best;
}

std::size_t LocalForest::memory_bytes(const MemoryModel& m) const {
  // key, three links, then nl, rank, level and kind, then the bitmaps.
  const std::size_t bitmaps = merged() ? 1 : 2;
  const std::size_t per_node = m.node_base + m.integer + 3 * m.link + 4 * m.integer + bitmaps * m.bitmap64;
  return graph_.memory_bytes(m) + arena_.live() * per_node;
}

void LocalForest::audit_local(const Node* root, std::size_t n, AuditReport& out) const {
  const int logn = floor_log2(std::max<std::size_t>(n, 2));
  const std::vector<Node*> roots = arena_.rank_roots(root);
  if (static_cast<int>(roots.size()) > logn)
    out.push_back({"rank-roots", std::to_string(roots.size()) + " rank roots exceed floor(log2 n)"});
  for (std::size_t k = 1; k < roots.size(); ++k)
    if (LocalTreeArena::rank(roots[k - 1]) >= LocalTreeArena::rank(roots[k]))
      out.push_back({"rank-roots", "rank roots not unique and ascending"});
  for (const Node* rt : roots) {
    // Rank identity and height of each rank tree.
    int height = 0;
    std::vector<std::pair<const Node*, int>> stack{{rt, 0}};
    while (!stack.empty()) {
      auto [x, d] = stack.back();
      stack.pop_back();
      height = std::max(height, d);
      if (x->kind != Kind::Rank) continue;
      const int r = LocalTreeArena::rank(x);
      for (const Node* c : {x->left, x->right}) {
        if (!c || LocalTreeArena::rank(c) != r - 1) out.push_back({"rank-height", "rank-tree child rank is not parent rank - 1"});
        if (c) stack.emplace_back(c, d + 1);
      }
    }
    if (height > logn) out.push_back({"rank-height", "rank-tree height exceeds log2 n"});
  }
  // Depth bound over every node of the local tree, members included.
  const int rr = LocalTreeArena::rank(root);
  std::vector<std::pair<const Node*, int>> stack;
  for (const Node* c : {root->left, root->right})
    if (c) stack.emplace_back(c, 1);
  while (!stack.empty()) {
    auto [x, d] = stack.back();
    stack.pop_back();
    if (d > rr - LocalTreeArena::rank(x) + 1)
      out.push_back({"local-depth", "depth " + std::to_string(d) + " exceeds rank bound"});
    if (!LocalTreeArena::is_internal(x)) continue;
    for (const Node* c : {x->left, x->right})
      if (c) stack.emplace_back(c, d + 1);
  }
}

AuditReport LocalForest::audit() const {
  AuditReport out;
  for (const std::string& s : graph_.audit()) out.push_back({"graph", s});
  const std::size_t n = leaf_.size();
  const bool lazy = variant_ == LocalVariant::Lzt;

  std::vector<const Node*> tops;
  for (const Node* l : leaf_)
    if (l) tops.push_back(root_of(const_cast<Node*>(l)));
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());

  std::size_t reachable = 0;
  std::vector<const Node*> stack(tops.begin(), tops.end());
  while (!stack.empty()) {
    const Node* x = stack.back();
    stack.pop_back();
    ++reachable;
    if (x->kind == Kind::Leaf) {
      std::uint64_t t = 0, nt = 0;
      const VertexId v = x->vertex;
      for (int i = 0; i < std::min(graph_.levels_of(v), 64); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        if (merged()) {
          nt |= graph_.has_any_at(v, i) ? bit : 0;
        } else {
          t |= graph_.has_tree_at(v, i) ? bit : 0;
          nt |= graph_.has_nontree_at(v, i) ? bit : 0;
        }
      }
      if (x->nl != 1 || v >= n || leaf_[v] != x) out.push_back({"nl", "leaf record malformed"});
      if (t != x->tree_bitmap || nt != x->nontree_bitmap) out.push_back({"bitmap", "leaf bitmap differs from adjacency"});
      continue;
    }
    int nl = 0;
    std::uint64_t t = 0, nt = 0;
    for (const Node* c : {x->left, x->right}) {
      if (!c) continue;
      if (c->parent != x) out.push_back({"forest", "child link inconsistent"});
      nl += c->nl;
      t |= c->tree_bitmap;
      nt |= c->nontree_bitmap;
      stack.push_back(c);
    }
    if (nl != x->nl) out.push_back({"nl", "nl differs from children sum"});
    if (t != x->tree_bitmap || nt != x->nontree_bitmap) out.push_back({"bitmap", "bitmap is not the OR of its children"});
    if (x->kind == Kind::Super && !lazy) audit_local(x, n, out);
    if (is_branch_root(x)) {
      audit_local(x, n, out);
      if (x->kind == Kind::BufferRoot) {
        if (x->nl >= beta_) out.push_back({"lzt", "buffer tree nl reaches beta"});
      } else if (x->kind == Kind::BottomRoot) {
        if (x->nl < beta_) out.push_back({"lzt", "bottom tree nl below beta"});
      } else {
        for (const Node* m : arena_.members(x))
          if (m->kind != Kind::BottomRoot && m->nl < beta_) out.push_back({"lzt", "small child in lazy branch"});
      }
    }
    if (x->kind == Kind::Super && lazy &&
        (!x->left || x->left->kind != Kind::BufferRoot || !x->right || x->right->kind != Kind::LazyRoot))
      out.push_back({"lzt", "super node lacks buffer and lazy branches"});
  }
  if (reachable != arena_.live()) out.push_back({"forest", "orphaned local-tree nodes"});

  // Canonical cluster structure, as for structural trees.
  const auto records = graph_.records();
  const int max_level = std::max(0, graph_.max_level());
  std::vector<detail::LevelClusters> clusters;
  for (int j = 0; j <= max_level + 1; ++j) clusters.emplace_back(n, records, j);
  std::map<const Node*, std::pair<int, VertexId>> seen;
  for (VertexId v = 0; v < n; ++v) {
    if (!leaf_[v]) continue;
    std::vector<const Node*> chain;
    for (const Node* x = owner(leaf_[v]); x; x = owner(x)) chain.push_back(x);
    std::reverse(chain.begin(), chain.end());
    int deepest = 0;
    for (int j = 1; j <= max_level + 1; ++j)
      if (clusters[j].size_of(v) >= 2) deepest = j;
    if (static_cast<int>(chain.size()) != deepest + 1) {
      out.push_back({"forest", "super-node chain of vertex " + std::to_string(v) + " is not canonical"});
      continue;
    }
    for (int j = 0; j <= deepest; ++j) {
      const Node* s = chain[j];
      if (s->level != j) out.push_back({"forest", "super-node level mismatch"});
      const VertexId rep = clusters[j].find(v);
      auto [it, fresh] = seen.emplace(s, std::make_pair(j, rep));
      if (!fresh && it->second != std::make_pair(j, rep)) out.push_back({"forest", "super node spans two clusters"});
      if (static_cast<std::size_t>(s->nl) != clusters[j].size_of(v)) out.push_back({"nl", "nl differs from cluster size"});
    }
  }
  return out;
}

}  // namespace dynconn
