#include "dynconn/lct.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

namespace dynconn {

void LinkCutForest::touch(VertexId u) {
  if (u >= nodes_.size()) {
    nodes_.resize(static_cast<std::size_t>(u) + 1);
    mark_a_.resize(nodes_.size(), 0);
    mark_b_.resize(nodes_.size(), 0);
  }
  if (!nodes_[u].present) {
    nodes_[u].present = true;
    ++present_;
  }
}

void LinkCutForest::require(VertexId u) const {
  if (!has_vertex(u)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(u));
}

void LinkCutForest::push(std::int32_t x) {
  Node& n = nodes_[x];
  if (!n.flip) return;
  std::swap(n.left, n.right);
  if (n.left != kNil) nodes_[n.left].flip ^= true;
  if (n.right != kNil) nodes_[n.right].flip ^= true;
  n.flip = false;
}

// Single rotation of x over its splay parent; caller has pushed both.
void LinkCutForest::rotate(std::int32_t x) {
  const std::int32_t y = nodes_[x].parent;
  const std::int32_t z = nodes_[y].parent;
  if (nodes_[y].left == x) {
    nodes_[y].left = nodes_[x].right;
    if (nodes_[x].right != kNil) nodes_[nodes_[x].right].parent = y;
    nodes_[x].right = y;
  } else {
    nodes_[y].right = nodes_[x].left;
    if (nodes_[x].left != kNil) nodes_[nodes_[x].left].parent = y;
    nodes_[x].left = y;
  }
  nodes_[y].parent = x;
  nodes_[x].parent = z;
  if (z != kNil) {
    if (nodes_[z].left == y) nodes_[z].left = x;
    else nodes_[z].right = x;
  } else {
    nodes_[x].path_parent = nodes_[y].path_parent;
    nodes_[y].path_parent = kNil;
  }
}

void LinkCutForest::splay(std::int32_t x) {
  splay_stack_.clear();
  for (std::int32_t y = x; y != kNil; y = nodes_[y].parent) splay_stack_.push_back(y);
  for (auto it = splay_stack_.rbegin(); it != splay_stack_.rend(); ++it) push(*it);
  while (nodes_[x].parent != kNil) {
    const std::int32_t y = nodes_[x].parent;
    const std::int32_t z = nodes_[y].parent;
    if (z != kNil) {
      const bool zigzig = (nodes_[z].left == y) == (nodes_[y].left == x);
      rotate(zigzig ? y : x);
    }
    rotate(x);
  }
}

void LinkCutForest::access(VertexId u) {
  require(u);
  const std::int32_t x = static_cast<std::int32_t>(u);
  splay(x);
  if (nodes_[x].right != kNil) {
    const std::int32_t r = nodes_[x].right;
    nodes_[r].parent = kNil;
    nodes_[r].path_parent = x;
    nodes_[x].right = kNil;
  }
  while (nodes_[x].path_parent != kNil) {
    const std::int32_t w = nodes_[x].path_parent;
    splay(w);
    if (nodes_[w].right != kNil) {
      const std::int32_t r = nodes_[w].right;
      nodes_[r].parent = kNil;
      nodes_[r].path_parent = w;
    }
    nodes_[w].right = x;
    nodes_[x].parent = w;
    nodes_[x].path_parent = kNil;
    splay(x);
  }
}

VertexId LinkCutForest::find_root(VertexId u) {
  access(u);
  std::int32_t r = static_cast<std::int32_t>(u);
  push(r);
  while (nodes_[r].left != kNil) {
    r = nodes_[r].left;
    push(r);
  }
  splay(r);
  return static_cast<VertexId>(r);
}

void LinkCutForest::evert(VertexId u) {
  access(u);
  nodes_[u].flip ^= true;
}

void LinkCutForest::link_unchecked(VertexId u, VertexId v) {
  evert(u);
  access(v);
  nodes_[u].path_parent = static_cast<std::int32_t>(v);
  nodes_[u].tree_adj.insert(v);
  nodes_[v].tree_adj.insert(u);
}

void LinkCutForest::link(VertexId u, VertexId v) {
  normalize_edge(u, v);
  touch(u);
  touch(v);
  if (find_root(u) == find_root(v)) throw Error(ErrorCode::AlreadyConnected, "link within one tree");
  link_unchecked(u, v);
}

void LinkCutForest::cut(VertexId u, VertexId v) {
  if (!has_vertex(u) || !has_vertex(v) || !nodes_[u].tree_adj.count(v))
    throw Error(ErrorCode::NotTreeEdge, "cut of non-tree edge");
  evert(u);
  access(v);
  const std::int32_t x = static_cast<std::int32_t>(u);
  const std::int32_t y = static_cast<std::int32_t>(v);
  push(y);
  // The root path is exactly u, v: u is v's left child with no right child.
  nodes_[y].left = kNil;
  nodes_[x].parent = kNil;
  nodes_[x].path_parent = kNil;
  nodes_[u].tree_adj.erase(v);
  nodes_[v].tree_adj.erase(u);
}

UpdateOutcome LinkCutForest::insert_edge(VertexId u, VertexId v) {
  normalize_edge(u, v);
  touch(u);
  touch(v);
  if (nodes_[u].tree_adj.count(v) || nodes_[u].nte.count(v)) return UpdateOutcome::of(OutcomeKind::DuplicateIgnored);
  if (find_root(u) == find_root(v)) {
    nodes_[u].nte.insert(v);
    nodes_[v].nte.insert(u);
    return UpdateOutcome::of(OutcomeKind::NewNonTreeEdge);
  }
  link_unchecked(u, v);
  return UpdateOutcome::of(OutcomeKind::NewTreeEdge);
}

UpdateOutcome LinkCutForest::delete_edge(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  if (!has_vertex(u) || !has_vertex(v)) return UpdateOutcome::of(OutcomeKind::MissingIgnored);
  if (nodes_[u].nte.erase(v)) {
    nodes_[v].nte.erase(u);
    return UpdateOutcome::of(OutcomeKind::NonTreeRemoved);
  }
  if (!nodes_[u].tree_adj.count(v)) return UpdateOutcome::of(OutcomeKind::MissingIgnored);
  cut(u, v);

  // Path pointers only lead upward, so tree membership is learned by
  // sweeping every node and comparing represented roots. Ties keep key.a.
  ++epoch_;
  const VertexId root_a = find_root(key.a);
  const VertexId root_b = find_root(key.b);
  std::size_t size_a = 0, size_b = 0;
  for (VertexId w = 0; w < nodes_.size(); ++w) {
    if (!nodes_[w].present) continue;
    const VertexId r = find_root(w);
    if (r == root_a) {
      mark_a_[w] = epoch_;
      ++size_a;
    } else if (r == root_b) {
      mark_b_[w] = epoch_;
      ++size_b;
    }
  }
  const bool a_side = size_a <= size_b;
  const std::vector<std::uint32_t>& mark = a_side ? mark_a_ : mark_b_;

  // Candidates are scanned in BFS order from the endpoint on the chosen side.
  // The other side's marks never hold epoch_ on this side, so they double as
  // the visited set.
  std::vector<std::uint32_t>& seen = a_side ? mark_b_ : mark_a_;
  std::vector<VertexId> side{a_side ? key.a : key.b};
  seen[side.front()] = epoch_;
  for (std::size_t head = 0; head < side.size(); ++head)
    for (VertexId y : nodes_[side[head]].tree_adj)
      if (mark[y] == epoch_ && seen[y] != epoch_) {
        seen[y] = epoch_;
        side.push_back(y);
      }

  for (VertexId x : side) {
    for (VertexId y : nodes_[x].nte) {
      ++edges_visited_;
      if (mark[y] == epoch_) continue;
      nodes_[x].nte.erase(y);
      nodes_[y].nte.erase(x);
      link_unchecked(x, y);
      return UpdateOutcome::reconnected(normalize_edge(x, y));
    }
  }
  return UpdateOutcome::of(OutcomeKind::SplitPermanent);
}

bool LinkCutForest::connected(VertexId u, VertexId v) {
  if (u == v) return true;
  if (!has_vertex(u) || !has_vertex(v)) return false;
  // After access(u) then access(v), u hangs below some splay or path-parent
  // link exactly when both share a represented tree.
  access(u);
  access(v);
  const Node& x = nodes_[u];
  return x.parent != kNil || x.path_parent != kNil;
}

EdgeClass LinkCutForest::classify_edge(EdgeKey key) const {
  if (!has_vertex(key.a) || !has_vertex(key.b)) return EdgeClass::absent();
  if (nodes_[key.a].tree_adj.count(key.b)) return EdgeClass::tree(0);
  if (nodes_[key.a].nte.count(key.b)) return EdgeClass::nontree(0);
  return EdgeClass::absent();
}

std::vector<EdgeRecord> LinkCutForest::edge_records() const {
  std::vector<EdgeRecord> out;
  for (VertexId u = 0; u < nodes_.size(); ++u) {
    for (VertexId w : nodes_[u].tree_adj)
      if (u < w) out.push_back({EdgeKey{u, w}, 0, EdgeKind::Tree});
    for (VertexId w : nodes_[u].nte)
      if (u < w) out.push_back({EdgeKey{u, w}, 0, EdgeKind::NonTree});
  }
  std::sort(out.begin(), out.end(), [](const EdgeRecord& x, const EdgeRecord& y) { return x.key < y.key; });
  return out;
}

std::size_t LinkCutForest::memory_bytes(const MemoryModel& m) const {
  std::size_t bytes = m.map_bytes(present_);
  for (const Node& n : nodes_) {
    if (!n.present) continue;
    // key, left, right, parent, path_parent, flip, nte, shadow tree adjacency
    bytes += m.node_base + m.integer + 4 * m.link + m.integer + m.set_bytes(n.nte.size()) +
             m.set_bytes(n.tree_adj.size());
  }
  return bytes;
}

std::vector<std::pair<VertexId, VertexId>> LinkCutForest::represented_parents() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  std::vector<VertexId> path;
  // In-order walk with accumulated flip parity gives the path top to bottom.
  auto walk = [&](auto&& self, std::int32_t x, bool flipped) -> void {
    if (x == kNil) return;
    const bool f = flipped ^ nodes_[x].flip;
    const std::int32_t first = f ? nodes_[x].right : nodes_[x].left;
    const std::int32_t second = f ? nodes_[x].left : nodes_[x].right;
    self(self, first, f);
    path.push_back(static_cast<VertexId>(x));
    self(self, second, f);
  };
  for (std::int32_t x = 0; x < static_cast<std::int32_t>(nodes_.size()); ++x) {
    if (!nodes_[x].present || nodes_[x].parent != kNil) continue;
    path.clear();
    walk(walk, x, false);
    for (std::size_t k = 1; k < path.size(); ++k) out.emplace_back(path[k], path[k - 1]);
    if (nodes_[x].path_parent != kNil) out.emplace_back(path.front(), static_cast<VertexId>(nodes_[x].path_parent));
  }
  return out;
}

int LinkCutForest::max_height() const {
  const auto parents = represented_parents();
  std::vector<VertexId> up(nodes_.size(), ~VertexId{0});
  for (auto [c, p] : parents) up[c] = p;
  std::vector<int> depth(nodes_.size(), -1);
  int best = 0;
  for (VertexId u = 0; u < nodes_.size(); ++u) {
    if (!nodes_[u].present) continue;
    std::vector<VertexId> chain;
    VertexId x = u;
    while (depth[x] < 0 && up[x] != ~VertexId{0} && chain.size() <= nodes_.size()) {
      chain.push_back(x);
      x = up[x];
    }
    int d = depth[x] < 0 ? 0 : depth[x];
    depth[x] = d;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
    best = std::max(best, depth[u]);
  }
  return best;
}

AuditReport LinkCutForest::audit() const {
  AuditReport out;
  std::set<EdgeKey> represented;
  for (auto [c, p] : represented_parents()) {
    if (c == p || !represented.insert(normalize_edge(c, p)).second)
      out.push_back({"forest", "represented forest repeats an edge"});
  }
  std::set<EdgeKey> shadow;
  for (VertexId u = 0; u < nodes_.size(); ++u) {
    for (VertexId w : nodes_[u].tree_adj) {
      if (!nodes_[w].tree_adj.count(u)) out.push_back({"forest", "asymmetric tree adjacency"});
      if (u < w) shadow.insert({u, w});
    }
    for (VertexId w : nodes_[u].nte)
      if (!nodes_[w].nte.count(u)) out.push_back({"forest", "asymmetric nte"});
  }
  if (represented != shadow) out.push_back({"forest", "represented forest differs from tree edges"});
  // Splay-tree parent/child links must agree.
  for (std::int32_t x = 0; x < static_cast<std::int32_t>(nodes_.size()); ++x) {
    for (std::int32_t c : {nodes_[x].left, nodes_[x].right})
      if (c != kNil && nodes_[c].parent != x) out.push_back({"forest", "splay child without parent link"});
    if (nodes_[x].parent != kNil && nodes_[x].path_parent != kNil)
      out.push_back({"forest", "non-root splay node carries path_parent"});
  }
  return out;
}

}  // namespace dynconn
