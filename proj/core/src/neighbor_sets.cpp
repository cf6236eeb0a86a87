#include "dynconn/neighbor_sets.hpp"

#include <algorithm>

namespace dynconn {

std::int32_t RstSet::merge(std::int32_t a, std::int32_t b) {
  if (a < 0) return b;
  if (b < 0) return a;
  if (nodes_[a].priority > nodes_[b].priority) {
    nodes_[a].right = merge(nodes_[a].right, b);
    pull(a);
    return a;
  }
  nodes_[b].left = merge(a, nodes_[b].left);
  pull(b);
  return b;
}

// lo gets keys < key, hi gets keys >= key.
void RstSet::split(std::int32_t t, VertexId key, std::int32_t& lo, std::int32_t& hi) {
  if (t < 0) {
    lo = hi = -1;
    return;
  }
  if (nodes_[t].key < key) {
    split(nodes_[t].right, key, nodes_[t].right, hi);
    lo = t;
  } else {
    split(nodes_[t].left, key, lo, nodes_[t].left);
    hi = t;
  }
  pull(t);
}

bool RstSet::contains(VertexId v) const {
  std::int32_t t = root_;
  while (t >= 0) {
    if (nodes_[t].key == v) return true;
    t = v < nodes_[t].key ? nodes_[t].left : nodes_[t].right;
  }
  return false;
}

bool RstSet::insert(VertexId v) {
  if (contains(v)) return false;
  std::int32_t id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
  } else {
    id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[id] = Node{v, splitmix64(v ^ 0x5bd1e995ULL), -1, -1, 1};
  std::int32_t lo, hi;
  split(root_, v, lo, hi);
  root_ = merge(merge(lo, id), hi);
  return true;
}

bool RstSet::erase(VertexId v) {
  if (!contains(v)) return false;
  std::int32_t lo, mid, hi;
  split(root_, v, lo, mid);
  split(mid, v + 1, mid, hi);
  free_.push_back(mid);
  root_ = merge(lo, hi);
  if (root_ < 0) {
    nodes_.clear();
    free_.clear();
  }
  return true;
}

VertexId RstSet::select(std::size_t k) const {
  std::int32_t t = root_;
  while (t >= 0) {
    const std::size_t ls = sz(nodes_[t].left);
    if (k < ls) {
      t = nodes_[t].left;
    } else if (k == ls) {
      return nodes_[t].key;
    } else {
      k -= ls + 1;
      t = nodes_[t].right;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "RstSet::select out of range");
}

int RstSet::height_of(std::int32_t t) const {
  if (t < 0) return 0;
  return 1 + std::max(height_of(nodes_[t].left), height_of(nodes_[t].right));
}

bool RstSet::audit_node(std::int32_t t, const VertexId* lo, const VertexId* hi) const {
  if (t < 0) return true;
  const Node& n = nodes_[t];
  if ((lo && n.key <= *lo) || (hi && n.key >= *hi)) return false;
  for (std::int32_t c : {n.left, n.right}) {
    if (c >= 0 && nodes_[c].priority > n.priority) return false;
  }
  if (n.size != 1 + sz(n.left) + sz(n.right)) return false;
  return audit_node(n.left, lo, &n.key) && audit_node(n.right, &n.key, hi);
}

bool RstSet::audit() const { return audit_node(root_, nullptr, nullptr); }

}  // namespace dynconn
