#include "dynconn/dtree.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <tuple>

namespace dynconn {

void DTree::touch(VertexId u) {
  if (u >= nodes_.size()) {
    nodes_.resize(static_cast<std::size_t>(u) + 1);
    mark_.resize(nodes_.size(), 0);
    depth_mark_.resize(nodes_.size(), 0);
    depth_.resize(nodes_.size(), 0);
  }
  if (!nodes_[u].present) {
    nodes_[u].present = true;
    ++present_;
  }
}

void DTree::require(VertexId u) const {
  if (!has_vertex(u)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(u));
}

std::pair<VertexId, int> DTree::find_root(VertexId u) const {
  require(u);
  int depth = 0;
  while (nodes_[u].parent != kNone) {
    u = nodes_[u].parent;
    ++depth;
  }
  return {u, depth};
}

std::optional<VertexId> DTree::parent(VertexId u) const {
  require(u);
  if (nodes_[u].parent == kNone) return std::nullopt;
  return nodes_[u].parent;
}

std::uint32_t DTree::subtree_size(VertexId u) const {
  require(u);
  return nodes_[u].size;
}

std::vector<VertexId> DTree::children(VertexId u) const {
  require(u);
  std::vector<VertexId> out(nodes_[u].children.begin(), nodes_[u].children.end());
  std::sort(out.begin(), out.end());
  return out;
}

void DTree::reroot(VertexId u) {
  require(u);
  std::vector<VertexId> path{u};
  while (nodes_[path.back()].parent != kNone) path.push_back(nodes_[path.back()].parent);
  if (path.size() == 1) return;
  const std::uint32_t total = nodes_[path.back()].size;
  // New size of p_k is total minus the old size of p_{k-1}.
  for (std::size_t k = path.size() - 1; k >= 1; --k) {
    Node& pk = nodes_[path[k]];
    Node& prev = nodes_[path[k - 1]];
    pk.size = total - prev.size;
    pk.children.erase(path[k - 1]);
    pk.parent = path[k - 1];
    prev.children.insert(path[k]);
  }
  nodes_[u].parent = kNone;
  nodes_[u].size = total;
}

void DTree::attach(VertexId child, VertexId parent) {
  nodes_[child].parent = parent;
  nodes_[parent].children.insert(child);
  const std::uint32_t add = nodes_[child].size;
  for (VertexId x = parent; x != kNone; x = nodes_[x].parent) nodes_[x].size += add;
}

void DTree::insert_tree_edge(VertexId u, VertexId v) {
  touch(u);
  touch(v);
  const VertexId ru = find_root(u).first;
  const VertexId rv = find_root(v).first;
  if (ru == rv) throw Error(ErrorCode::AlreadyConnected, "insert_tree_edge within one tree");
  if (nodes_[ru].size >= nodes_[rv].size) {
    reroot(v);
    attach(v, u);
  } else {
    reroot(u);
    attach(u, v);
  }
}

UpdateOutcome DTree::insert_edge(VertexId u, VertexId v) {
  normalize_edge(u, v);
  touch(u);
  touch(v);
  if (nodes_[u].parent == v || nodes_[v].parent == u || nodes_[u].nte.count(v))
    return UpdateOutcome::of(OutcomeKind::DuplicateIgnored);
  if (find_root(u).first == find_root(v).first) {
    nodes_[u].nte.insert(v);
    nodes_[v].nte.insert(u);
    return UpdateOutcome::of(OutcomeKind::NewNonTreeEdge);
  }
  insert_tree_edge(u, v);
  return UpdateOutcome::of(OutcomeKind::NewTreeEdge);
}

UpdateOutcome DTree::delete_edge(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  if (!has_vertex(u) || !has_vertex(v)) return UpdateOutcome::of(OutcomeKind::MissingIgnored);
  VertexId child;
  if (nodes_[v].parent == u) {
    child = v;
  } else if (nodes_[u].parent == v) {
    child = u;
  } else if (nodes_[u].nte.erase(v)) {
    nodes_[v].nte.erase(u);
    return UpdateOutcome::of(OutcomeKind::NonTreeRemoved);
  } else {
    return UpdateOutcome::of(OutcomeKind::MissingIgnored);
  }

  const VertexId par = nodes_[child].parent;
  nodes_[par].children.erase(child);
  nodes_[child].parent = kNone;
  VertexId top = par;
  for (VertexId x = par; x != kNone; x = nodes_[x].parent) {
    nodes_[x].size -= nodes_[child].size;
    top = x;
  }

  // The small side is enumerated from its own endpoint.
  const bool child_small = nodes_[child].size <= nodes_[top].size;
  const VertexId start = child_small ? child : par;

  ++epoch_;
  std::vector<VertexId> side;
  std::deque<VertexId> queue{start};
  mark_[start] = epoch_;
  while (!queue.empty()) {
    const VertexId x = queue.front();
    queue.pop_front();
    side.push_back(x);
    auto visit = [&](VertexId y) {
      if (mark_[y] != epoch_) {
        mark_[y] = epoch_;
        queue.push_back(y);
      }
    };
    if (nodes_[x].parent != kNone) visit(nodes_[x].parent);
    for (VertexId c : nodes_[x].children) visit(c);
  }

  // Best candidate by (anchor depth, anchor id, edge key).
  bool found = false;
  std::tuple<int, VertexId, EdgeKey> best{};
  VertexId best_inside = 0;
  for (VertexId x : side) {
    for (VertexId y : nodes_[x].nte) {
      ++edges_visited_;
      if (mark_[y] == epoch_) continue;
      std::tuple<int, VertexId, EdgeKey> cand{memo_depth(y), y, normalize_edge(x, y)};
      if (!found || cand < best) {
        best = cand;
        best_inside = x;
        found = true;
      }
    }
  }
  (void)key;
  if (!found) return UpdateOutcome::of(OutcomeKind::SplitPermanent);

  const VertexId anchor = std::get<1>(best);
  nodes_[best_inside].nte.erase(anchor);
  nodes_[anchor].nte.erase(best_inside);
  reroot(best_inside);
  attach(best_inside, anchor);
  return UpdateOutcome::reconnected(std::get<2>(best));
}

int DTree::memo_depth(VertexId y) {
  std::vector<VertexId>& path = scratch_;
  path.clear();
  VertexId x = y;
  while (depth_mark_[x] != epoch_ && nodes_[x].parent != kNone) {
    path.push_back(x);
    x = nodes_[x].parent;
  }
  int d = depth_mark_[x] == epoch_ ? depth_[x] : 0;
  depth_mark_[x] = epoch_;
  depth_[x] = d;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    depth_mark_[*it] = epoch_;
    depth_[*it] = ++d;
  }
  return depth_[y];
}

bool DTree::connected(VertexId u, VertexId v) {
  if (u == v) return true;
  if (!has_vertex(u) || !has_vertex(v)) return false;
  VertexId a = u, b = v;
  while (nodes_[a].parent != kNone) a = nodes_[a].parent;
  while (nodes_[b].parent != kNone) b = nodes_[b].parent;
  return a == b;
}

EdgeClass DTree::classify_edge(EdgeKey key) const {
  if (!has_vertex(key.a) || !has_vertex(key.b)) return EdgeClass::absent();
  if (nodes_[key.a].parent == key.b || nodes_[key.b].parent == key.a) return EdgeClass::tree(0);
  if (nodes_[key.a].nte.count(key.b)) return EdgeClass::nontree(0);
  return EdgeClass::absent();
}

std::vector<EdgeRecord> DTree::edge_records() const {
  std::vector<EdgeRecord> out;
  for (VertexId u = 0; u < nodes_.size(); ++u) {
    if (!nodes_[u].present) continue;
    if (nodes_[u].parent != kNone) out.push_back({normalize_edge(u, nodes_[u].parent), 0, EdgeKind::Tree});
    for (VertexId w : nodes_[u].nte)
      if (u < w) out.push_back({EdgeKey{u, w}, 0, EdgeKind::NonTree});
  }
  std::sort(out.begin(), out.end(), [](const EdgeRecord& x, const EdgeRecord& y) { return x.key < y.key; });
  return out;
}

std::size_t DTree::memory_bytes(const MemoryModel& m) const {
  std::size_t bytes = m.map_bytes(present_);
  for (const Node& n : nodes_) {
    if (!n.present) continue;
    // key, parent, size, children, nte
    bytes += m.node_base + m.integer + m.link + m.integer + m.set_bytes(n.children.size()) + m.set_bytes(n.nte.size());
  }
  return bytes;
}

std::vector<int> DTree::depths() const {
  std::vector<int> depth(nodes_.size(), -1);
  std::vector<VertexId> stack;
  for (VertexId r = 0; r < nodes_.size(); ++r) {
    if (!nodes_[r].present || nodes_[r].parent != kNone) continue;
    depth[r] = 0;
    stack.assign(1, r);
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (VertexId c : nodes_[x].children) {
        if (c < depth.size() && depth[c] < 0) {
          depth[c] = depth[x] + 1;
          stack.push_back(c);
        }
      }
    }
  }
  return depth;
}

int DTree::max_height() const {
  const auto d = depths();
  int best = 0;
  for (int x : d) best = std::max(best, x);
  return best;
}

std::uint64_t DTree::sum_of_depths() const {
  std::uint64_t s = 0;
  for (int x : depths())
    if (x > 0) s += static_cast<std::uint64_t>(x);
  return s;
}

AuditReport DTree::audit() const {
  AuditReport out;
  const auto depth = depths();
  std::vector<VertexId> root_of(nodes_.size(), kNone);
  for (VertexId u = 0; u < nodes_.size(); ++u) {
    const Node& n = nodes_[u];
    if (!n.present) continue;
    if (depth[u] < 0) {
      out.push_back({"forest", "vertex " + std::to_string(u) + " not reachable from a root"});
      continue;
    }
    std::uint32_t sum = 1;
    for (VertexId c : n.children) {
      if (c >= nodes_.size() || nodes_[c].parent != u) out.push_back({"forest", "child link without parent link"});
      else sum += nodes_[c].size;
    }
    if (sum != n.size) out.push_back({"aggregate", "size mismatch at " + std::to_string(u)});
    if (n.parent != kNone && !nodes_[n.parent].children.count(u))
      out.push_back({"forest", "parent link without child link"});
    for (VertexId w : n.nte) {
      if (w >= nodes_.size() || !nodes_[w].nte.count(u)) out.push_back({"forest", "asymmetric nte"});
      if (w < nodes_.size() && (nodes_[u].parent == w || nodes_[w].parent == u))
        out.push_back({"forest", "edge both tree and non-tree"});
    }
    VertexId r = u;
    while (nodes_[r].parent != kNone) r = nodes_[r].parent;
    root_of[u] = r;
  }
  for (VertexId u = 0; u < nodes_.size(); ++u)
    for (VertexId w : nodes_[u].nte)
      if (u < w && w < nodes_.size() && root_of[u] != root_of[w])
        out.push_back({"forest", "non-tree edge spans two trees"});
  return out;
}

}  // namespace dynconn
