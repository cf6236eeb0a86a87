#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynconn/memory_model.hpp"
#include "dynconn/neighbor_sets.hpp"
#include "dynconn/types.hpp"

namespace dynconn {

enum class AdjacencyMode { Split, Merged };

// Authoritative edge set with per-edge level and kind, plus per-vertex,
// per-level neighbor sets. Split mode keeps adj_t / adj_nt; merged mode keeps
// one neighbor map per level whose value flags tree edges.
template <class Set>
class BasicGraphModel {
 public:
  using MergedMap = std::unordered_map<VertexId, bool>;

  struct LevelAdjacency {
    Set tree;
    Set nontree;
    MergedMap merged;
  };

  explicit BasicGraphModel(AdjacencyMode mode = AdjacencyMode::Split) : mode_(mode) {}

  AdjacencyMode mode() const { return mode_; }

  void ensure_vertex(VertexId v) {
    if (v >= adj_.size()) adj_.resize(static_cast<std::size_t>(v) + 1);
  }
  std::size_t vertex_count() const { return adj_.size(); }
  bool has_vertex(VertexId v) const { return v < adj_.size(); }

  // Highest level an edge may reach: floor(log2 n) + 1, at most 63.
  int level_cap() const {
    const std::size_t n = std::max<std::size_t>(adj_.size(), 1);
    return std::min(63, floor_log2(n) + 1);
  }

  void record_edge(EdgeKey key, int level, EdgeKind kind) {
    if (edges_.count(key)) throw Error(ErrorCode::DuplicateEdge, "edge already recorded");
    if (level < 0) throw Error(ErrorCode::InvalidArgument, "negative level");
    ensure_vertex(key.b);
    edges_.emplace(key, Info{level, kind});
    link(key, level, kind);
    bump(level, +1);
  }

  void erase_edge(EdgeKey key) {
    auto it = edges_.find(key);
    if (it == edges_.end()) throw Error(ErrorCode::MissingEdge, "erase of absent edge");
    unlink(key, it->second.level, it->second.kind);
    bump(it->second.level, -1);
    edges_.erase(it);
  }

  // Moves key up one level. Returns false (and counts a clamp) when to_level
  // exceeds level_cap().
  bool promote_edge(EdgeKey key, int to_level) {
    auto it = edges_.find(key);
    if (it == edges_.end()) throw Error(ErrorCode::MissingEdge, "promote of absent edge");
    if (to_level != it->second.level + 1) throw Error(ErrorCode::LevelSkip, "promotion must be by one level");
    if (to_level > level_cap()) {
      ++clamped_;
      return false;
    }
    unlink(key, it->second.level, it->second.kind);
    bump(it->second.level, -1);
    it->second.level = to_level;
    link(key, to_level, it->second.kind);
    bump(to_level, +1);
    return true;
  }

  void set_kind(EdgeKey key, EdgeKind kind) {
    auto it = edges_.find(key);
    if (it == edges_.end()) throw Error(ErrorCode::MissingEdge, "set_kind of absent edge");
    if (it->second.kind == kind) return;
    unlink(key, it->second.level, it->second.kind);
    it->second.kind = kind;
    link(key, it->second.level, kind);
  }

  EdgeClass classify_edge(EdgeKey key) const {
    auto it = edges_.find(key);
    if (it == edges_.end()) return EdgeClass::absent();
    return it->second.kind == EdgeKind::Tree ? EdgeClass::tree(it->second.level)
                                             : EdgeClass::nontree(it->second.level);
  }

  std::optional<EdgeRecord> find(EdgeKey key) const {
    auto it = edges_.find(key);
    if (it == edges_.end()) return std::nullopt;
    return EdgeRecord{key, it->second.level, it->second.kind};
  }

  bool contains(EdgeKey key) const { return edges_.count(key) > 0; }
  std::size_t edge_count() const { return edges_.size(); }

  int levels_of(VertexId u) const { return u < adj_.size() ? static_cast<int>(adj_[u].size()) : 0; }

  const LevelAdjacency* at(VertexId u, int i) const {
    if (u >= adj_.size() || i < 0 || i >= static_cast<int>(adj_[u].size())) return nullptr;
    return &adj_[u][i];
  }

  bool has_tree_at(VertexId u, int i) const {
    const LevelAdjacency* a = at(u, i);
    if (!a) return false;
    if (mode_ == AdjacencyMode::Split) return !a->tree.empty();
    for (const auto& [w, t] : a->merged)
      if (t) return true;
    return false;
  }

  bool has_nontree_at(VertexId u, int i) const {
    const LevelAdjacency* a = at(u, i);
    if (!a) return false;
    if (mode_ == AdjacencyMode::Split) return !a->nontree.empty();
    for (const auto& [w, t] : a->merged)
      if (!t) return true;
    return false;
  }

  bool has_any_at(VertexId u, int i) const {
    const LevelAdjacency* a = at(u, i);
    if (!a) return false;
    return mode_ == AdjacencyMode::Split ? !(a->tree.empty() && a->nontree.empty()) : !a->merged.empty();
  }

  std::size_t nontree_count(VertexId u, int i) const {
    const LevelAdjacency* a = at(u, i);
    if (!a) return 0;
    if (mode_ == AdjacencyMode::Split) return a->nontree.size();
    std::size_t c = 0;
    for (const auto& [w, t] : a->merged) c += t ? 0 : 1;
    return c;
  }

  std::vector<VertexId> sorted_tree(VertexId u, int i) const { return sorted_kind(u, i, true); }
  std::vector<VertexId> sorted_nontree(VertexId u, int i) const { return sorted_kind(u, i, false); }

  // Merged-mode view: every level-i neighbor with its tree flag, by neighbor id.
  std::vector<std::pair<VertexId, bool>> sorted_merged(VertexId u, int i) const {
    std::vector<std::pair<VertexId, bool>> out;
    const LevelAdjacency* a = at(u, i);
    if (!a) return out;
    if (mode_ == AdjacencyMode::Merged) {
      out.assign(a->merged.begin(), a->merged.end());
    } else {
      a->tree.for_each([&](VertexId w) { out.emplace_back(w, true); });
      a->nontree.for_each([&](VertexId w) { out.emplace_back(w, false); });
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Unordered iteration over level-i tree neighbors.
  template <class F>
  void for_each_tree(VertexId u, int i, F&& f) const {
    const LevelAdjacency* a = at(u, i);
    if (!a) return;
    if (mode_ == AdjacencyMode::Split) {
      a->tree.for_each(f);
    } else {
      for (const auto& [w, t] : a->merged)
        if (t) f(w);
    }
  }

  // 1 + max incident level; 0 for isolated vertices.
  int node_level(VertexId u) const {
    for (int i = levels_of(u) - 1; i >= 0; --i)
      if (has_any_at(u, i)) return i + 1;
    return 0;
  }

  std::vector<std::size_t> level_histogram() const {
    std::vector<std::size_t> h = histogram_;
    while (!h.empty() && h.back() == 0) h.pop_back();
    if (h.empty()) h.push_back(0);
    return h;
  }

  int max_level() const { return static_cast<int>(level_histogram().size()) - 1; }

  std::vector<EdgeRecord> records() const {
    std::vector<EdgeRecord> out;
    out.reserve(edges_.size());
    for (const auto& [k, info] : edges_) out.push_back({k, info.level, info.kind});
    std::sort(out.begin(), out.end(), [](const EdgeRecord& x, const EdgeRecord& y) { return x.key < y.key; });
    return out;
  }

  std::size_t clamped_promotions() const { return clamped_; }

  // Edge map, then one dictionary per (level, kind) keyed by vertex holding a
  // neighbor container.
  std::size_t memory_bytes(const MemoryModel& m) const {
    std::size_t bytes = m.map_bytes(edges_.size());
    std::size_t levels = 0;
    for (const auto& per : adj_) levels = std::max(levels, per.size());
    const std::size_t dicts = mode_ == AdjacencyMode::Split ? 2 : 1;
    bytes += levels * dicts * m.map_base;
    for (const auto& per : adj_) {
      for (const auto& a : per) {
        if (mode_ == AdjacencyMode::Split) {
          if (!a.tree.empty()) bytes += m.map_per_entry + a.tree.memory_bytes(m);
          if (!a.nontree.empty()) bytes += m.map_per_entry + a.nontree.memory_bytes(m);
        } else if (!a.merged.empty()) {
          bytes += m.map_per_entry + m.map_bytes(a.merged.size());
        }
      }
    }
    return bytes;
  }

  // Symmetry, partition and histogram checks; returns human-readable violations.
  std::vector<std::string> audit() const {
    std::vector<std::string> out;
    std::size_t seen = 0;
    std::vector<std::size_t> hist;
    for (VertexId u = 0; u < adj_.size(); ++u) {
      for (int i = 0; i < static_cast<int>(adj_[u].size()); ++i) {
        auto check = [&](VertexId w, bool tree) {
          const EdgeKey k = u < w ? EdgeKey{u, w} : EdgeKey{w, u};
          auto it = edges_.find(k);
          if (it == edges_.end() || it->second.level != i || (it->second.kind == EdgeKind::Tree) != tree) {
            out.push_back("adjacency entry without matching edge record");
            return;
          }
          if (u < w) {
            ++seen;
            if (hist.size() <= static_cast<std::size_t>(i)) hist.resize(i + 1);
            ++hist[i];
          }
          const LevelAdjacency* back = at(w, i);
          bool mirrored = false;
          if (back) {
            if (mode_ == AdjacencyMode::Split) {
              mirrored = tree ? back->tree.contains(u) : back->nontree.contains(u);
            } else {
              auto bi = back->merged.find(u);
              mirrored = bi != back->merged.end() && bi->second == tree;
            }
          }
          if (!mirrored) out.push_back("asymmetric adjacency");
        };
        const LevelAdjacency& a = adj_[u][i];
        if (mode_ == AdjacencyMode::Split) {
          a.tree.for_each([&](VertexId w) { check(w, true); });
          a.nontree.for_each([&](VertexId w) {
            if (a.tree.contains(w)) out.push_back("neighbor in both tree and non-tree sets");
            check(w, false);
          });
        } else {
          for (const auto& [w, t] : a.merged) check(w, t);
        }
      }
    }
    if (seen != edges_.size()) out.push_back("edge records not partitioned by adjacency");
    std::vector<std::size_t> mine = histogram_;
    while (!mine.empty() && mine.back() == 0) mine.pop_back();
    while (!hist.empty() && hist.back() == 0) hist.pop_back();
    if (mine != hist) out.push_back("level histogram out of sync");
    return out;
  }

 private:
  struct Info {
    int level;
    EdgeKind kind;
  };

  LevelAdjacency& slot(VertexId u, int i) {
    ensure_vertex(u);
    auto& per = adj_[u];
    if (per.size() <= static_cast<std::size_t>(i)) per.resize(static_cast<std::size_t>(i) + 1);
    return per[i];
  }

  void link(EdgeKey k, int level, EdgeKind kind) {
    const bool tree = kind == EdgeKind::Tree;
    add_one(k.a, k.b, level, tree);
    add_one(k.b, k.a, level, tree);
  }

  void unlink(EdgeKey k, int level, EdgeKind kind) {
    const bool tree = kind == EdgeKind::Tree;
    remove_one(k.a, k.b, level, tree);
    remove_one(k.b, k.a, level, tree);
  }

  void add_one(VertexId u, VertexId w, int level, bool tree) {
    LevelAdjacency& a = slot(u, level);
    if (mode_ == AdjacencyMode::Split) {
      (tree ? a.tree : a.nontree).insert(w);
    } else {
      a.merged[w] = tree;
    }
  }

  void remove_one(VertexId u, VertexId w, int level, bool tree) {
    LevelAdjacency& a = adj_[u][level];
    if (mode_ == AdjacencyMode::Split) {
      (tree ? a.tree : a.nontree).erase(w);
    } else {
      a.merged.erase(w);
    }
    auto& per = adj_[u];
    while (!per.empty()) {
      const LevelAdjacency& top = per.back();
      if (!top.tree.empty() || !top.nontree.empty() || !top.merged.empty()) break;
      per.pop_back();
    }
  }

  void bump(int level, int delta) {
    if (histogram_.size() <= static_cast<std::size_t>(level)) histogram_.resize(static_cast<std::size_t>(level) + 1);
    histogram_[level] += delta;
  }

  std::vector<VertexId> sorted_kind(VertexId u, int i, bool tree) const {
    const LevelAdjacency* a = at(u, i);
    if (!a) return {};
    if (mode_ == AdjacencyMode::Split) return tree ? a->tree.sorted() : a->nontree.sorted();
    std::vector<VertexId> out;
    for (const auto& [w, t] : a->merged)
      if (t == tree) out.push_back(w);
    std::sort(out.begin(), out.end());
    return out;
  }

  AdjacencyMode mode_;
  std::unordered_map<EdgeKey, Info> edges_;
  std::vector<std::vector<LevelAdjacency>> adj_;
  std::vector<std::size_t> histogram_;
  std::size_t clamped_ = 0;
};

using GraphModel = BasicGraphModel<HashNeighborSet>;
using RstGraphModel = BasicGraphModel<RstSet>;

extern template class BasicGraphModel<HashNeighborSet>;
extern template class BasicGraphModel<RstSet>;

}  // namespace dynconn
