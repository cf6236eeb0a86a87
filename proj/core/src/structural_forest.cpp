#include "dynconn/structural_forest.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "side_finder.hpp"

namespace dynconn {

StructuralForest::StructuralForest(AdjacencyMode mode)
    : graph_(mode), finder_(std::make_unique<detail::SideFinder>()) {}

StructuralForest::~StructuralForest() = default;

StructuralForest::Node* StructuralForest::new_super(int level) {
  Node* x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
  } else {
    pool_.emplace_back();
    x = &pool_.back();
  }
  *x = Node{};
  x->nl = 0;
  x->level = level;
  x->id = next_id_++;
  ++live_;
  return x;
}

void StructuralForest::free_node(Node* x) {
  *x = Node{};
  free_.push_back(x);
  --live_;
}

void StructuralForest::touch(VertexId v) {
  graph_.ensure_vertex(v);
  if (leaf_.size() <= v) leaf_.resize(static_cast<std::size_t>(v) + 1, nullptr);
  if (leaf_[v]) return;
  Node* root = new_super(0);
  Node* leaf = new_super(1);
  leaf->leaf = true;
  leaf->vertex = v;
  leaf->nl = 1;
  attach(leaf, root);
  leaf_[v] = leaf;
}

void StructuralForest::attach(Node* x, Node* p) {
  x->parent = p;
  x->slot = p->children.size();
  p->children.push_back(x);
  if (x->leaf) x->level = p->level + 1;
  for (Node* y = p; y; y = y->parent) y->nl += x->nl;
}

void StructuralForest::detach(Node* x) {
  Node* p = x->parent;
  Node* moved = p->children.back();
  p->children[x->slot] = moved;
  moved->slot = x->slot;
  p->children.pop_back();
  x->parent = nullptr;
  for (Node* y = p; y; y = y->parent) y->nl -= x->nl;
}

StructuralForest::Node* StructuralForest::root_of(Node* x) const {
  while (x->parent) x = x->parent;
  return x;
}

std::uint64_t StructuralForest::find_root(VertexId v) const {
  if (!has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
  return root_of(leaf_[v])->id;
}

StructuralForest::Node* StructuralForest::ancestor_at_level(VertexId v, int level) const {
  Node* x = leaf_[v]->parent;
  while (x->level > level) x = x->parent;
  return x;
}

StructuralForest::Node* StructuralForest::child_under(Node* c, VertexId v) const {
  Node* x = leaf_[v];
  while (x->parent != c) x = x->parent;
  return x;
}

bool StructuralForest::connected(VertexId u, VertexId v) {
  if (u == v) return true;
  if (!has_vertex(u) || !has_vertex(v)) return false;
  return root_of(leaf_[u]) == root_of(leaf_[v]);
}

UpdateOutcome StructuralForest::insert_edge(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  touch(u);
  touch(v);
  if (graph_.contains(key)) return UpdateOutcome::of(OutcomeKind::DuplicateIgnored);
  Node* ru = root_of(leaf_[u]);
  Node* rv = root_of(leaf_[v]);
  if (ru == rv) {
    graph_.record_edge(key, 0, EdgeKind::NonTree);
    return UpdateOutcome::of(OutcomeKind::NewNonTreeEdge);
  }
  graph_.record_edge(key, 0, EdgeKind::Tree);
  Node* big = ru->nl >= rv->nl ? ru : rv;
  Node* small = big == ru ? rv : ru;
  const std::vector<Node*> moving = small->children;
  for (Node* c : moving) {
    detach(c);
    attach(c, big);
  }
  free_node(small);
  return UpdateOutcome::of(OutcomeKind::NewTreeEdge);
}

UpdateOutcome StructuralForest::delete_edge(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  const auto rec = graph_.find(key);
  if (!rec) return UpdateOutcome::of(OutcomeKind::MissingIgnored);
  graph_.erase_edge(key);
  if (rec->kind == EdgeKind::NonTree) return UpdateOutcome::of(OutcomeKind::NonTreeRemoved);

  const bool merged = graph_.mode() == AdjacencyMode::Merged;
  for (int i = rec->level; i >= 0; --i) {
    Node* c = ancestor_at_level(key.a, i);
    finder_->run(graph_, key, i, edges_visited_);
    std::vector<VertexId> side = finder_->side();
    std::sort(side.begin(), side.end());

    for (VertexId x : side)
      for (VertexId y : graph_.sorted_tree(x, i))
        if (x < y) graph_.promote_edge(EdgeKey{x, y}, i + 1);

    bool found = false;
    EdgeKey repl{};
    for (VertexId x : side) {
      for (const auto& [y, tree] : graph_.sorted_merged(x, i)) {
        if (!merged && tree) continue;
        ++edges_visited_;
        if (tree) continue;
        const EdgeKey e = normalize_edge(x, y);
        if (!finder_->in_side(y)) {
          repl = e;
          found = true;
          break;
        }
        graph_.promote_edge(e, i + 1);
      }
      if (found) break;
    }

    restructure(c, side, i, found);
    if (found) {
      graph_.set_kind(repl, EdgeKind::Tree);
      return UpdateOutcome::reconnected(repl);
    }
  }
  return UpdateOutcome::of(OutcomeKind::SplitPermanent);
}

void StructuralForest::restructure(Node* c, const std::vector<VertexId>& side, int i, bool success) {
  ++stamp_;
  std::vector<Node*> parts;
  for (VertexId x : side) {
    Node* ch = child_under(c, x);
    if (ch->stamp != stamp_) {
      ch->stamp = stamp_;
      parts.push_back(ch);
    }
  }

  Node* node;
  if (side.size() == 1) {
    node = leaf_[side.front()];
    detach(node);
  } else {
    node = new_super(i + 1);
    for (Node* ch : parts) {
      detach(ch);
      if (ch->leaf) {
        attach(ch, node);
        continue;
      }
      const std::vector<Node*> grand = ch->children;
      for (Node* g : grand) {
        detach(g);
        attach(g, node);
      }
      free_node(ch);
    }
  }

  if (success) {
    attach(node, c);
    return;
  }
  if (i == 0) {
    Node* root = new_super(0);
    attach(node, root);
    return;
  }
  Node* p = c->parent;
  if (side.size() >= 2) {
    Node* wrap = new_super(i);
    attach(node, wrap);
    node = wrap;
  }
  attach(node, p);
  if (c->nl == 1) {
    Node* only = c->children.front();
    detach(c);
    detach(only);
    free_node(c);
    attach(only, p);
  }
}

int StructuralForest::max_height() const {
  int best = 0;
  for (Node* l : leaf_) {
    if (!l) continue;
    int d = 0;
    for (Node* x = l; x->parent; x = x->parent) ++d;
    best = std::max(best, d);
  }
  return best;
}

std::vector<std::pair<int, int>> StructuralForest::ancestor_chain(VertexId v) const {
  if (!has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
  std::vector<std::pair<int, int>> out;
  for (Node* x = leaf_[v]->parent; x; x = x->parent) out.emplace_back(x->level, x->nl);
  std::reverse(out.begin(), out.end());
  return out;
}

int StructuralForest::leaf_count_under_root(VertexId v) const {
  if (!has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
  return root_of(leaf_[v])->nl;
}

std::size_t StructuralForest::memory_bytes(const MemoryModel& m) const {
  std::size_t bytes = graph_.memory_bytes(m);
  // key, parent, nl, level; super nodes add a children set. Every non-root
  // node is one children-set entry.
  const std::size_t base = m.node_base + m.integer + m.link + 2 * m.integer;
  std::size_t leaves = 0;
  std::vector<const Node*> roots;
  for (Node* l : leaf_) {
    if (!l) continue;
    ++leaves;
    roots.push_back(root_of(l));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  const std::size_t supers = live_ - leaves;
  bytes += live_ * base + supers * m.set_base + (live_ - roots.size()) * m.set_per_entry;
  return bytes;
}

AuditReport StructuralForest::audit() const {
  AuditReport out;
  for (const std::string& s : graph_.audit()) out.push_back({"graph", s});
  const std::size_t n = leaf_.size();
  const int height_bound = floor_log2(std::max<std::size_t>(n, 1)) + 1;
  const auto records = graph_.records();
  int max_level = std::max(0, graph_.max_level());
  std::vector<detail::LevelClusters> clusters;
  for (int j = 0; j <= max_level + 1; ++j) clusters.emplace_back(n, records, j);

  std::map<const Node*, std::pair<int, VertexId>> owner;  // super node -> (level, cluster rep)
  for (VertexId v = 0; v < n; ++v) {
    Node* l = leaf_[v];
    if (!l) continue;
    if (!l->leaf || l->vertex != v || l->nl != 1) out.push_back({"nl", "leaf record malformed"});
    std::vector<Node*> chain;
    for (Node* x = l->parent; x; x = x->parent) chain.push_back(x);
    std::reverse(chain.begin(), chain.end());
    if (static_cast<int>(chain.size()) > height_bound) out.push_back({"height", "structural tree height exceeds bound"});
    // Expected chain: levels 0..L where L is the deepest level with a >=2 cluster.
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
      auto [it, fresh] = owner.emplace(s, std::make_pair(j, rep));
      if (!fresh && it->second != std::make_pair(j, rep)) out.push_back({"forest", "super node spans two clusters"});
      if (static_cast<std::size_t>(s->nl) != clusters[j].size_of(v)) out.push_back({"nl", "nl differs from cluster size"});
    }
  }
  // nl and link consistency over all live super nodes reachable from leaves.
  for (const auto& [s, info] : owner) {
    int sum = 0;
    for (std::size_t k = 0; k < s->children.size(); ++k) {
      const Node* c = s->children[k];
      if (c->parent != s || c->slot != k) out.push_back({"forest", "child link inconsistent"});
      if (!c->leaf && c->level != s->level + 1) out.push_back({"forest", "child level is not parent level + 1"});
      sum += c->nl;
    }
    if (sum != s->nl) out.push_back({"nl", "nl differs from children sum"});
  }
  std::size_t reachable = owner.size();
  for (Node* l : leaf_) reachable += l ? 1 : 0;
  if (reachable != live_) out.push_back({"forest", "orphaned structural nodes"});
  return out;
}

}  // namespace dynconn
