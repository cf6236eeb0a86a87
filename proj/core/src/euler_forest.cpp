#include "dynconn/euler_forest.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>

namespace dynconn {
namespace treap {

void update(EtNode* t) {
  t->count = 1 + count(t->left) + count(t->right);
  t->size = (t->active ? 1 : 0) + (t->left ? t->left->size : 0) + (t->right ? t->right->size : 0);
  t->weight = (t->active ? t->own_weight : 0) + (t->left ? t->left->weight : 0) + (t->right ? t->right->weight : 0);
}

namespace {

EtNode* merge_rec(EtNode* a, EtNode* b) {
  if (!a) return b;
  if (!b) return a;
  if (a->priority > b->priority) {
    a->right = merge_rec(a->right, b);
    a->right->parent = a;
    update(a);
    return a;
  }
  b->left = merge_rec(a, b->left);
  b->left->parent = b;
  update(b);
  return b;
}

}  // namespace

EtNode* merge(EtNode* a, EtNode* b) {
  EtNode* r = merge_rec(a, b);
  if (r) r->parent = nullptr;
  return r;
}

std::pair<EtNode*, EtNode*> split_at(EtNode* t, std::int32_t k) {
  if (!t) return {nullptr, nullptr};
  t->parent = nullptr;
  const std::int32_t lc = count(t->left);
  if (k <= lc) {
    auto [l, r] = split_at(t->left, k);
    t->left = r;
    if (r) r->parent = t;
    update(t);
    if (l) l->parent = nullptr;
    return {l, t};
  }
  auto [l, r] = split_at(t->right, k - lc - 1);
  t->right = l;
  if (l) l->parent = t;
  update(t);
  if (r) r->parent = nullptr;
  return {t, r};
}

EtNode* root_of(EtNode* x) {
  while (x->parent) x = x->parent;
  return x;
}

const EtNode* root_of(const EtNode* x) {
  while (x->parent) x = x->parent;
  return x;
}

EtNode* first(EtNode* t) {
  while (t->left) t = t->left;
  return t;
}

EtNode* last(EtNode* t) {
  while (t->right) t = t->right;
  return t;
}

EtNode* next(EtNode* x) {
  if (x->right) return first(x->right);
  while (x->parent && x->parent->right == x) x = x->parent;
  return x->parent;
}

EtNode* prev(EtNode* x) {
  if (x->left) return last(x->left);
  while (x->parent && x->parent->left == x) x = x->parent;
  return x->parent;
}

std::int32_t rank(const EtNode* x) {
  std::int32_t r = count(x->left);
  while (x->parent) {
    if (x->parent->right == x) r += count(x->parent->left) + 1;
    x = x->parent;
  }
  return r;
}

int height(const EtNode* t) {
  if (!t) return 0;
  return 1 + std::max(height(t->left), height(t->right));
}

}  // namespace treap

using namespace treap;

EtNode* EulerForest::make_node(VertexId v, bool active) {
  EtNode* x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
  } else {
    pool_.emplace_back();
    x = &pool_.back();
  }
  *x = EtNode{};
  x->priority = rng_();
  x->vertex = v;
  x->active = active;
  update(x);
  ++live_;
  return x;
}

void EulerForest::free_node(EtNode* x) {
  *x = EtNode{};
  free_.push_back(x);
  --live_;
}

EtNode*& EulerForest::tail_slot(VertexId from, VertexId to) {
  ArcSlots& s = arcs_.at(normalize_edge(from, to));
  return from < to ? s.ab_tail : s.ba_tail;
}

EtNode*& EulerForest::head_slot(VertexId from, VertexId to) {
  ArcSlots& s = arcs_.at(normalize_edge(from, to));
  return from < to ? s.ab_head : s.ba_head;
}

void EulerForest::ensure_vertex(VertexId v) {
  if (v >= active_.size()) active_.resize(static_cast<std::size_t>(v) + 1, nullptr);
  if (!active_[v]) {
    active_[v] = make_node(v, true);
    ++vertices_;
  }
}

bool EulerForest::connected(VertexId u, VertexId v) const {
  if (u == v) return true;
  if (!has_vertex(u) || !has_vertex(v)) return false;
  return root_of(static_cast<const EtNode*>(active_[u])) == root_of(static_cast<const EtNode*>(active_[v]));
}

const EtNode* EulerForest::tour_root(VertexId v) const {
  if (!has_vertex(v)) return nullptr;
  return root_of(static_cast<const EtNode*>(active_[v]));
}

std::int32_t EulerForest::tree_size(VertexId v) const {
  const EtNode* r = tour_root(v);
  return r ? r->size : 1;
}

std::int64_t EulerForest::tree_weight(VertexId v) const {
  const EtNode* r = tour_root(v);
  return r ? r->weight : 0;
}

std::int32_t EulerForest::own_weight(VertexId v) const { return has_vertex(v) ? active_[v]->own_weight : 0; }

void EulerForest::set_own_weight(VertexId v, std::int32_t w) {
  ensure_vertex(v);
  EtNode* x = active_[v];
  if (x->own_weight == w) return;
  x->own_weight = w;
  for (; x; x = x->parent) update(x);
}

void EulerForest::reroot(VertexId w) {
  if (!has_vertex(w)) throw Error(ErrorCode::UnknownVertex, "reroot of absent vertex");
  EtNode* a = active_[w];
  EtNode* root = root_of(a);
  if (root->count == 1) return;
  EtNode* f = first(root);
  if (f->vertex == w) return;
  EtNode* l = last(root);
  const VertexId r = f->vertex;

  // Close the cycle by dropping one boundary duplicate of r (never the active one).
  EtNode* seq;
  if (!l->active) {
    EtNode* pl = prev(l);
    head_slot(pl->vertex, r) = f;
    auto [body, tail] = split_at(root, root->count - 1);
    free_node(tail);
    seq = body;
  } else {
    EtNode* nf = next(f);
    tail_slot(r, nf->vertex) = l;
    auto [head, body] = split_at(root, 1);
    free_node(head);
    auto [mid, tail] = split_at(body, body->count - 1);
    seq = merge(tail, mid);
  }

  // Cut the cycle before w's active occurrence and re-close it with a new w.
  auto [lo, hi] = split_at(seq, rank(a));
  EtNode* p = last(lo);
  EtNode* wn = make_node(w, false);
  head_slot(p->vertex, w) = wn;
  merge(merge(hi, lo), wn);
}

void EulerForest::link(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  ensure_vertex(u);
  ensure_vertex(v);
  if (connected(u, v)) throw Error(ErrorCode::AlreadyConnected, "et_link within one tree");
  reroot(u);
  reroot(v);
  EtNode* tu = root_of(active_[u]);
  EtNode* tv = root_of(active_[v]);
  EtNode* un = make_node(u, false);
  ArcSlots& s = arcs_[key];
  s = ArcSlots{};
  tail_slot(u, v) = last(tu);
  head_slot(u, v) = first(tv);
  tail_slot(v, u) = last(tv);
  head_slot(v, u) = un;
  merge(merge(tu, tv), un);
}

void EulerForest::cut(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  auto it = arcs_.find(key);
  if (it == arcs_.end()) throw Error(ErrorCode::NotTreeEdge, "et_cut of non-tree edge");
  const ArcSlots s = it->second;
  arcs_.erase(it);

  // The arc met first opens the interval holding the far endpoint's subtree.
  const bool ab_first = rank(s.ab_head) < rank(s.ba_head);
  const VertexId x = ab_first ? key.a : key.b;
  EtNode* start = ab_first ? s.ab_head : s.ba_head;
  EtNode* end = ab_first ? s.ba_tail : s.ab_tail;
  EtNode* xa = ab_first ? s.ab_tail : s.ba_tail;
  EtNode* xb = ab_first ? s.ba_head : s.ab_head;

  auto [outer_lo, rest] = split_at(root_of(start), rank(start));
  auto [inner, outer_hi] = split_at(rest, rank(end) + 1);
  (void)inner;

  // Exactly one of xa, xb survives; keep the active one.
  if (!xb->active) {
    auto [dup, hi2] = split_at(outer_hi, 1);
    if (hi2) tail_slot(x, first(hi2)->vertex) = xa;
    free_node(dup);
    merge(outer_lo, hi2);
  } else {
    auto [lo2, dup] = split_at(outer_lo, outer_lo->count - 1);
    if (lo2) head_slot(last(lo2)->vertex, x) = xb;
    free_node(dup);
    merge(lo2, outer_hi);
  }
}

std::vector<VertexId> EulerForest::tour(VertexId v) const {
  std::vector<VertexId> out;
  const EtNode* r = tour_root(v);
  if (!r) return out;
  auto walk = [&](auto&& self, const EtNode* t) -> void {
    while (t) {
      self(self, t->left);
      out.push_back(t->vertex);
      t = t->right;
    }
  };
  walk(walk, r);
  return out;
}

std::vector<VertexId> EulerForest::vertices_of(VertexId v) const {
  std::vector<VertexId> out;
  const EtNode* r = tour_root(v);
  if (!r) return {v};
  auto walk = [&](auto&& self, const EtNode* t) -> void {
    while (t && t->size > 0) {
      self(self, t->left);
      if (t->active) out.push_back(t->vertex);
      t = t->right;
    }
  };
  walk(walk, r);
  return out;
}

VertexId EulerForest::sample_weighted(VertexId v, Rng& rng) const {
  const EtNode* t = tour_root(v);
  if (!t || t->weight <= 0) throw Error(ErrorCode::EmptyWeight, "no weight in tour");
  std::uint64_t r = uniform_index(rng, static_cast<std::uint64_t>(t->weight));
  for (;;) {
    const std::uint64_t lw = t->left ? static_cast<std::uint64_t>(t->left->weight) : 0;
    if (r < lw) {
      t = t->left;
      continue;
    }
    r -= lw;
    const std::uint64_t own = t->active ? static_cast<std::uint64_t>(t->own_weight) : 0;
    if (r < own) return t->vertex;
    r -= own;
    t = t->right;
  }
}

std::vector<EdgeKey> EulerForest::tree_edges() const {
  std::vector<EdgeKey> out;
  out.reserve(arcs_.size());
  for (const auto& [k, s] : arcs_) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

int EulerForest::max_treap_height() const {
  int best = 0;
  std::unordered_set<const EtNode*> roots;
  for (const EtNode* a : active_)
    if (a && roots.insert(root_of(a)).second) best = std::max(best, height(root_of(a)));
  return best;
}

std::size_t EulerForest::memory_bytes(const MemoryModel& m) const {
  const std::size_t per_node = m.node_base + m.integer + 3 * m.link + 4 * m.integer;
  return m.map_bytes(vertices_) + m.map_base + arcs_.size() * (m.map_per_entry + 4 * m.link) + live_ * per_node;
}

void EulerForest::audit(const std::vector<EdgeKey>& expected, const std::string& label, AuditReport& out) const {
  auto fail = [&](const std::string& cat, const std::string& what) { out.push_back({cat, label + ": " + what}); };

  std::set<const EtNode*> roots;
  for (VertexId v = 0; v < active_.size(); ++v) {
    const EtNode* a = active_[v];
    if (!a) continue;
    if (!a->active || a->vertex != v) fail("tour", "active map points at a wrong occurrence");
    roots.insert(root_of(a));
  }

  std::size_t occurrences = 0;
  std::set<std::pair<VertexId, VertexId>> arcs_seen;
  std::set<EdgeKey> decoded;
  for (const EtNode* r : roots) {
    // Structural and aggregate check of the whole treap.
    std::vector<const EtNode*> seq;
    bool structure_ok = true;
    auto walk = [&](auto&& self, const EtNode* t) -> std::tuple<std::int32_t, std::int32_t, std::int64_t> {
      if (!t) return {0, 0, 0};
      for (const EtNode* c : {t->left, t->right}) {
        if (c && c->parent != t) structure_ok = false;
        if (c && c->priority > t->priority) fail("tour", "heap order violated");
      }
      auto [lc, ls, lw] = self(self, t->left);
      seq.push_back(t);
      auto [rc, rs, rw] = self(self, t->right);
      const std::int32_t c = lc + rc + 1;
      const std::int32_t s = ls + rs + (t->active ? 1 : 0);
      const std::int64_t w = lw + rw + (t->active ? t->own_weight : 0);
      if (c != t->count || s != t->size || w != t->weight) fail("aggregate", "count/size/weight mismatch");
      return {c, s, w};
    };
    walk(walk, r);
    if (!structure_ok) fail("tour", "treap parent link mismatch");
    occurrences += seq.size();

    std::set<VertexId> distinct;
    std::size_t actives = 0;
    for (const EtNode* x : seq) {
      distinct.insert(x->vertex);
      if (x->active) {
        ++actives;
        if (x->vertex >= active_.size() || active_[x->vertex] != x) fail("tour", "stray active occurrence");
      }
    }
    if (actives != distinct.size()) fail("tour", "not exactly one active occurrence per vertex");
    if (seq.size() != 2 * distinct.size() - 1) fail("tour", "tour length is not 2n-1");
    if (seq.front()->vertex != seq.back()->vertex) fail("tour", "tour does not start and end at the same vertex");
    for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
      const VertexId x = seq[j]->vertex;
      const VertexId y = seq[j + 1]->vertex;
      if (x == y) {
        fail("tour", "adjacent occurrences of one vertex");
        continue;
      }
      const EdgeKey k = normalize_edge(x, y);
      auto it = arcs_.find(k);
      if (it == arcs_.end()) {
        fail("tour", "adjacent pair is not a tree edge");
        continue;
      }
      const ArcSlots& s = it->second;
      const EtNode* tail = x < y ? s.ab_tail : s.ba_tail;
      const EtNode* head = x < y ? s.ab_head : s.ba_head;
      if (tail != seq[j] || head != seq[j + 1]) fail("tour", "tree_edge_occ does not match the tour");
      if (!arcs_seen.insert({x, y}).second) fail("tour", "arc traversed twice");
      decoded.insert(k);
    }
  }
  if (occurrences != live_) fail("tour", "occurrence count mismatch");
  if (arcs_seen.size() != 2 * arcs_.size()) fail("tour", "tree edge without both arcs in a tour");
  std::set<EdgeKey> want(expected.begin(), expected.end());
  if (decoded != want) fail("forest", "decoded tour forest differs from the level forest");
}

}  // namespace dynconn
