#include "dynconn/euler_structures.hpp"

#include <algorithm>
#include <string>

namespace dynconn {

// ---------------------------------------------------------------- HKS

void HksStructure::touch(VertexId v) {
  forest_.ensure_vertex(v);
  if (nte_.size() <= v) nte_.resize(static_cast<std::size_t>(v) + 1);
}

void HksStructure::refresh(VertexId v) { forest_.set_own_weight(v, static_cast<std::int32_t>(nte_[v].size())); }

UpdateOutcome HksStructure::insert_edge(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  touch(u);
  touch(v);
  if (forest_.has_tree_edge(key) || nte_[u].contains(v)) return UpdateOutcome::of(OutcomeKind::DuplicateIgnored);
  if (forest_.connected(u, v)) {
    nte_[u].insert(v);
    nte_[v].insert(u);
    refresh(u);
    refresh(v);
    return UpdateOutcome::of(OutcomeKind::NewNonTreeEdge);
  }
  forest_.link(u, v);
  return UpdateOutcome::of(OutcomeKind::NewTreeEdge);
}

UpdateOutcome HksStructure::delete_edge(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  if (!forest_.has_vertex(u) || !forest_.has_vertex(v)) return UpdateOutcome::of(OutcomeKind::MissingIgnored);
  if (nte_[u].erase(v)) {
    nte_[v].erase(u);
    refresh(u);
    refresh(v);
    return UpdateOutcome::of(OutcomeKind::NonTreeRemoved);
  }
  if (!forest_.has_tree_edge(key)) return UpdateOutcome::of(OutcomeKind::MissingIgnored);
  forest_.cut(u, v);

  const VertexId s = forest_.tree_size(key.a) <= forest_.tree_size(key.b) ? key.a : key.b;
  const EtNode* side_root = forest_.tour_root(s);
  bool found = false;
  EdgeKey repl{};
  forest_.for_each_weighted(s, [&](VertexId x) {
    nte_[x].for_each([&](VertexId y) {
      if (found) return;
      ++edges_visited_;
      if (forest_.tour_root(y) != side_root) {
        repl = normalize_edge(x, y);
        found = true;
      }
    });
    return found;
  });
  if (!found) return UpdateOutcome::of(OutcomeKind::SplitPermanent);
  nte_[repl.a].erase(repl.b);
  nte_[repl.b].erase(repl.a);
  refresh(repl.a);
  refresh(repl.b);
  forest_.link(repl.a, repl.b);
  return UpdateOutcome::reconnected(repl);
}

EdgeClass HksStructure::classify_edge(EdgeKey key) const {
  if (forest_.has_tree_edge(key)) return EdgeClass::tree(0);
  if (key.a < nte_.size() && nte_[key.a].contains(key.b)) return EdgeClass::nontree(0);
  return EdgeClass::absent();
}

std::vector<EdgeRecord> HksStructure::edge_records() const {
  std::vector<EdgeRecord> out;
  for (EdgeKey k : forest_.tree_edges()) out.push_back({k, 0, EdgeKind::Tree});
  for (VertexId u = 0; u < nte_.size(); ++u)
    nte_[u].for_each([&](VertexId w) {
      if (u < w) out.push_back({EdgeKey{u, w}, 0, EdgeKind::NonTree});
    });
  std::sort(out.begin(), out.end(), [](const EdgeRecord& x, const EdgeRecord& y) { return x.key < y.key; });
  return out;
}

std::size_t HksStructure::memory_bytes(const MemoryModel& m) const {
  std::size_t bytes = forest_.memory_bytes(m);
  for (const RstSet& s : nte_) bytes += s.memory_bytes(m);
  return bytes;
}

AuditReport HksStructure::audit() const {
  AuditReport out;
  forest_.audit(forest_.tree_edges(), "HKS level 0", out);
  for (VertexId u = 0; u < nte_.size(); ++u) {
    if (!nte_[u].audit()) out.push_back({"aggregate", "nte treap malformed"});
    if (forest_.own_weight(u) != static_cast<std::int32_t>(nte_[u].size()))
      out.push_back({"aggregate", "own weight differs from nte count"});
    nte_[u].for_each([&](VertexId w) {
      if (w >= nte_.size() || !nte_[w].contains(u)) out.push_back({"forest", "asymmetric nte"});
      if (!forest_.connected(u, w)) out.push_back({"forest", "non-tree edge spans two trees"});
      if (forest_.has_tree_edge(normalize_edge(u, w))) out.push_back({"forest", "edge both tree and non-tree"});
    });
  }
  return out;
}

// ---------------------------------------------------------------- HK / HDT

template <class Set, bool Sampling>
LeveledEulerStructure<Set, Sampling>::LeveledEulerStructure(std::uint64_t seed)
    : seed_(seed), rng_(derive_seed(seed, 0x484bULL)) {}

template <class Set, bool Sampling>
EulerForest& LeveledEulerStructure<Set, Sampling>::level(int i) {
  while (static_cast<int>(forests_.size()) <= i)
    forests_.push_back(std::make_unique<EulerForest>(derive_seed(seed_, forests_.size())));
  return *forests_[i];
}

template <class Set, bool Sampling>
void LeveledEulerStructure<Set, Sampling>::refresh_weight(VertexId x, int i) {
  if constexpr (Sampling) {
    const auto w = static_cast<std::int32_t>(graph_.nontree_count(x, i));
    EulerForest& f = level(i);
    if (w > 0 || f.has_vertex(x)) f.set_own_weight(x, w);
  }
}

template <class Set, bool Sampling>
bool LeveledEulerStructure<Set, Sampling>::connected(VertexId u, VertexId v) {
  if (u == v) return true;
  if (forests_.empty()) return false;
  return forests_[0]->connected(u, v);
}

template <class Set, bool Sampling>
UpdateOutcome LeveledEulerStructure<Set, Sampling>::insert_edge(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  graph_.ensure_vertex(key.b);
  if (mark_.size() < graph_.vertex_count()) mark_.resize(graph_.vertex_count(), 0);
  if (graph_.contains(key)) return UpdateOutcome::of(OutcomeKind::DuplicateIgnored);
  EulerForest& f0 = level(0);
  f0.ensure_vertex(u);
  f0.ensure_vertex(v);
  if (f0.connected(u, v)) {
    graph_.record_edge(key, 0, EdgeKind::NonTree);
    refresh_weight(u, 0);
    refresh_weight(v, 0);
    return UpdateOutcome::of(OutcomeKind::NewNonTreeEdge);
  }
  graph_.record_edge(key, 0, EdgeKind::Tree);
  f0.link(u, v);
  return UpdateOutcome::of(OutcomeKind::NewTreeEdge);
}

template <class Set, bool Sampling>
void LeveledEulerStructure<Set, Sampling>::promote_tree(EdgeKey e, int i) {
  if (graph_.promote_edge(e, i + 1)) level(i + 1).link(e.a, e.b);
}

template <class Set, bool Sampling>
void LeveledEulerStructure<Set, Sampling>::promote_nontree(EdgeKey e, int i) {
  if (!graph_.promote_edge(e, i + 1)) return;
  refresh_weight(e.a, i);
  refresh_weight(e.b, i);
  refresh_weight(e.a, i + 1);
  refresh_weight(e.b, i + 1);
}

template <class Set, bool Sampling>
void LeveledEulerStructure<Set, Sampling>::reconnect(EdgeKey e, int i) {
  graph_.set_kind(e, EdgeKind::Tree);
  refresh_weight(e.a, i);
  refresh_weight(e.b, i);
  for (int j = 0; j <= i; ++j) level(j).link(e.a, e.b);
}

template <class Set, bool Sampling>
std::size_t LeveledEulerStructure<Set, Sampling>::sample_budget() const {
  return 16 * static_cast<std::size_t>(std::max(1, ceil_log2(std::max<std::size_t>(graph_.vertex_count(), 2))));
}

template <class Set, bool Sampling>
EdgeKey LeveledEulerStructure<Set, Sampling>::sample_nontree(VertexId v, int i) {
  if constexpr (Sampling) {
    if (i >= static_cast<int>(forests_.size())) throw Error(ErrorCode::EmptyWeight, "level has no forest");
    const VertexId x = forests_[i]->sample_weighted(v, rng_);
    const auto* adj = graph_.at(x, i);
    const std::size_t k = uniform_index(rng_, adj->nontree.size());
    return normalize_edge(x, adj->nontree.select(k));
  } else {
    (void)v;
    (void)i;
    throw Error(ErrorCode::InvalidArgument, "sampling is not part of HDT");
  }
}

template <class Set, bool Sampling>
UpdateOutcome LeveledEulerStructure<Set, Sampling>::delete_edge(VertexId u, VertexId v) {
  const EdgeKey key = normalize_edge(u, v);
  const auto rec = graph_.find(key);
  if (!rec) return UpdateOutcome::of(OutcomeKind::MissingIgnored);
  if (rec->kind == EdgeKind::NonTree) {
    graph_.erase_edge(key);
    refresh_weight(key.a, rec->level);
    refresh_weight(key.b, rec->level);
    return UpdateOutcome::of(OutcomeKind::NonTreeRemoved);
  }

  graph_.erase_edge(key);
  for (int j = 0; j <= rec->level; ++j) level(j).cut(key.a, key.b);

  for (int i = rec->level; i >= 0; --i) {
    EulerForest& f = level(i);
    const VertexId s = f.tree_size(key.a) <= f.tree_size(key.b) ? key.a : key.b;

    if constexpr (Sampling) {
      if (f.tree_weight(s) > 0) {
        const std::size_t budget = sample_budget();
        for (std::size_t k = 0; k < budget; ++k) {
          const EdgeKey e = sample_nontree(s, i);
          ++edges_visited_;
          if (!f.connected(e.a, e.b)) {
            reconnect(e, i);
            return UpdateOutcome::reconnected(e);
          }
        }
      }
    }

    std::vector<VertexId> side = f.vertices_of(s);
    std::sort(side.begin(), side.end());
    ++epoch_;
    for (VertexId x : side) mark_[x] = epoch_;

    for (VertexId x : side)
      for (VertexId y : graph_.sorted_tree(x, i))
        if (x < y) promote_tree(EdgeKey{x, y}, i);

    for (VertexId x : side) {
      for (VertexId y : graph_.sorted_nontree(x, i)) {
        ++edges_visited_;
        const EdgeKey e = normalize_edge(x, y);
        if (mark_[y] != epoch_) {
          reconnect(e, i);
          return UpdateOutcome::reconnected(e);
        }
        promote_nontree(e, i);
      }
    }
  }
  return UpdateOutcome::of(OutcomeKind::SplitPermanent);
}

template <class Set, bool Sampling>
std::size_t LeveledEulerStructure<Set, Sampling>::node_count() const {
  std::size_t n = 0;
  for (const auto& f : forests_) n += f->occurrence_count();
  return n;
}

template <class Set, bool Sampling>
int LeveledEulerStructure<Set, Sampling>::max_height() const {
  return forests_.empty() ? 0 : forests_[0]->max_treap_height();
}

template <class Set, bool Sampling>
std::size_t LeveledEulerStructure<Set, Sampling>::memory_bytes(const MemoryModel& m) const {
  std::size_t bytes = graph_.memory_bytes(m);
  for (const auto& f : forests_) bytes += f->memory_bytes(m);
  return bytes;
}

template <class Set, bool Sampling>
AuditReport LeveledEulerStructure<Set, Sampling>::audit() const {
  AuditReport out;
  for (const std::string& s : graph_.audit()) out.push_back({"graph", s});
  const auto records = graph_.records();
  for (int i = 0; i < static_cast<int>(forests_.size()); ++i) {
    std::vector<EdgeKey> expected;
    for (const EdgeRecord& r : records)
      if (r.kind == EdgeKind::Tree && r.level >= i) expected.push_back(r.key);
    forests_[i]->audit(expected, std::string(name()) + " level " + std::to_string(i), out);
    if constexpr (Sampling) {
      for (VertexId x = 0; x < graph_.vertex_count(); ++x) {
        const auto want = static_cast<std::int32_t>(graph_.nontree_count(x, i));
        if (forests_[i]->own_weight(x) != want) out.push_back({"aggregate", "own weight differs from nte count"});
      }
    }
  }
  for (const EdgeRecord& r : records) {
    if (r.kind == EdgeKind::NonTree && forests_.size() > static_cast<std::size_t>(r.level) &&
        !forests_[r.level]->connected(r.key.a, r.key.b))
      out.push_back({"forest", "level-i non-tree edge spans two level-i trees"});
  }
  const int bound = floor_log2(std::max<std::size_t>(graph_.vertex_count(), 1));
  if (graph_.max_level() > bound) out.push_back({"level", "edge level exceeds floor(log2 n)"});
  return out;
}

template class LeveledEulerStructure<RstSet, true>;
template class LeveledEulerStructure<HashNeighborSet, false>;

}  // namespace dynconn
