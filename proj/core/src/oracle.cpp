#include "dynconn/oracle.hpp"

#include <algorithm>
#include <deque>

#include "dynconn/connectivity.hpp"

namespace dynconn {

StructureStats ConnectivityStructure::stats(const MemoryModel& model) const {
  StructureStats s;
  s.node_count = node_count();
  s.max_height = max_height();
  s.level_histogram = level_histogram();
  s.memory_bytes = memory_bytes(model);
  s.clamped_promotions = clamped_promotions();
  s.edges_visited = edges_visited_;
  return s;
}

std::vector<std::size_t> ConnectivityStructure::level_histogram() const {
  std::vector<std::size_t> h(1, 0);
  for (const EdgeRecord& r : edge_records()) {
    if (h.size() <= static_cast<std::size_t>(r.level)) h.resize(r.level + 1);
    ++h[r.level];
  }
  return h;
}

bool OracleGraph::add_edge(VertexId u, VertexId v) {
  const EdgeKey k = normalize_edge(u, v);
  if (adj_.size() <= k.b) adj_.resize(static_cast<std::size_t>(k.b) + 1);
  if (!adj_[u].insert(v).second) return false;
  adj_[v].insert(u);
  ++edges_;
  return true;
}

bool OracleGraph::remove_edge(VertexId u, VertexId v) {
  if (!has_edge(u, v)) return false;
  adj_[u].erase(v);
  adj_[v].erase(u);
  --edges_;
  return true;
}

bool OracleGraph::has_edge(VertexId u, VertexId v) const {
  return u < adj_.size() && v < adj_.size() && adj_[u].count(v) > 0;
}

bool OracleGraph::connected(VertexId u, VertexId v) const {
  if (u == v) return true;
  if (u >= adj_.size() || v >= adj_.size()) return false;
  std::vector<char> seen(adj_.size(), 0);
  std::deque<VertexId> queue{u};
  seen[u] = 1;
  while (!queue.empty()) {
    const VertexId x = queue.front();
    queue.pop_front();
    for (VertexId y : adj_[x]) {
      if (y == v) return true;
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return false;
}

std::vector<std::uint32_t> OracleGraph::component_labels(std::size_t n) const {
  const std::uint32_t unset = ~std::uint32_t{0};
  std::vector<std::uint32_t> label(n, unset);
  std::uint32_t next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    if (s < adj_.size()) {
      stack.assign(1, s);
      while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        for (VertexId y : adj_[x]) {
          if (y < n && label[y] == unset) {
            label[y] = next;
            stack.push_back(y);
          }
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t OracleGraph::component_count(std::size_t n) const {
  const auto labels = component_labels(n);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

std::vector<EdgeKey> OracleGraph::edges() const {
  std::vector<EdgeKey> out;
  for (VertexId u = 0; u < adj_.size(); ++u)
    for (VertexId v : adj_[u])
      if (u < v) out.push_back({u, v});
  std::sort(out.begin(), out.end());
  return out;
}

bool oracle_connected(const OracleGraph& g, VertexId u, VertexId v) { return g.connected(u, v); }

}  // namespace dynconn
