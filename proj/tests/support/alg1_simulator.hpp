#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "dynconn/types.hpp"

namespace dynconn::testing {

// Slow reference for leveled deletion on explicit edge sets. Every query is
// answered by fresh searches; nothing is cached between operations.
// Rule: the smaller side of the level->=i split (fewer vertices, ties to the
// side of key.a) has its level-i tree edges promoted, then its vertices are
// scanned in ascending order with their level-i non-tree neighbours in
// ascending order; the first neighbour outside the side is the replacement
// and every earlier inside edge is promoted.
class Alg1Simulator {
 public:
  struct Info {
    int level = 0;
    bool tree = false;
  };

  void insert(VertexId u, VertexId v) {
    const EdgeKey k = normalize_edge(u, v);
    top_ = std::max<std::size_t>(top_, static_cast<std::size_t>(k.b) + 1);
    if (edges_.count(k)) return;
    const bool joined = reach(k.a, 0).count(k.b) > 0;
    edges_[k] = Info{0, !joined};
  }

  void erase(VertexId u, VertexId v) {
    const EdgeKey k = normalize_edge(u, v);
    auto it = edges_.find(k);
    if (it == edges_.end()) return;
    const Info info = it->second;
    edges_.erase(it);
    if (!info.tree) return;
    for (int i = info.level; i >= 0; --i) {
      const std::set<VertexId> sa = reach(k.a, i);
      const std::set<VertexId> sb = reach(k.b, i);
      const std::set<VertexId>& side = sb.size() < sa.size() ? sb : sa;
      for (auto& [e, inf] : edges_)
        if (inf.tree && inf.level == i && side.count(e.a) && side.count(e.b)) promote(inf, i);
      for (VertexId x : side) {
        std::vector<VertexId> nbrs;
        for (const auto& [e, inf] : edges_) {
          if (inf.tree || inf.level != i) continue;
          if (e.a == x) nbrs.push_back(e.b);
          if (e.b == x) nbrs.push_back(e.a);
        }
        std::sort(nbrs.begin(), nbrs.end());
        for (VertexId y : nbrs) {
          Info& inf = edges_[normalize_edge(x, y)];
          if (!side.count(y)) {
            inf.tree = true;
            return;
          }
          promote(inf, i);
        }
      }
    }
  }

  std::vector<std::size_t> histogram() const {
    std::vector<std::size_t> h(1, 0);
    for (const auto& [e, inf] : edges_) {
      if (h.size() <= static_cast<std::size_t>(inf.level)) h.resize(inf.level + 1, 0);
      ++h[inf.level];
    }
    return h;
  }

  const std::map<EdgeKey, Info>& edges() const { return edges_; }

 private:
  int cap() const { return std::min(63, floor_log2(std::max<std::size_t>(top_, 1)) + 1); }

  void promote(Info& inf, int i) {
    if (i + 1 <= cap()) inf.level = i + 1;
  }

  // Vertices reachable from s over tree edges of level >= i.
  std::set<VertexId> reach(VertexId s, int i) const {
    std::set<VertexId> seen{s};
    std::deque<VertexId> q{s};
    while (!q.empty()) {
      const VertexId x = q.front();
      q.pop_front();
      for (const auto& [e, inf] : edges_) {
        if (!inf.tree || inf.level < i) continue;
        VertexId y;
        if (e.a == x) y = e.b;
        else if (e.b == x) y = e.a;
        else continue;
        if (seen.insert(y).second) q.push_back(y);
      }
    }
    return seen;
  }

  std::map<EdgeKey, Info> edges_;
  std::size_t top_ = 0;
};

}  // namespace dynconn::testing
