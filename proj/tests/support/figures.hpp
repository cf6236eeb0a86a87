#pragma once

#include <vector>

#include "dynconn/connectivity.hpp"
#include "dynconn/graph_model.hpp"

namespace dynconn::testing {

struct LabeledEdge {
  VertexId u, v;
  int level;
  bool tree;
};

// Eight-vertex fixture: seven tree edges at levels 0 and 1, three non-tree edges.
inline const std::vector<LabeledEdge>& running_example() {
  static const std::vector<LabeledEdge> edges = {
      {1, 5, 0, true}, {2, 3, 0, true}, {3, 4, 1, true}, {2, 5, 0, true},  {6, 7, 1, true},
      {7, 8, 1, true}, {5, 8, 0, true}, {1, 2, 0, false}, {1, 3, 0, false}, {3, 6, 0, false},
  };
  return edges;
}

inline void record_running_example(GraphModel& g) {
  for (const auto& e : running_example())
    g.record_edge(normalize_edge(e.u, e.v), e.level, e.tree ? EdgeKind::Tree : EdgeKind::NonTree);
}

// Tree edges first, so a fresh structure adopts the drawn spanning tree.
inline void insert_running_example(ConnectivityStructure& s) {
  for (const auto& e : running_example())
    if (e.tree) s.insert_edge(e.u, e.v);
  for (const auto& e : running_example())
    if (!e.tree) s.insert_edge(e.u, e.v);
}

}  // namespace dynconn::testing
