#pragma once

#include <vector>

#include "tropmod/graph.hpp"

namespace tropmod::testutil {

inline Graph triangle() { return complete_graph({2, 3, 4}); }

inline Graph k4() { return complete_graph({2, 3, 4, 5}); }

// Reduced weight graph of (1,1,3/4,3/4,1/4): a triangle on {2,3,4} with an
// extra edge from 2 to 5. Edge order: {2,3},{2,4},{2,5},{3,4}.
inline Graph triangle_with_tail() {
  return make_graph({2, 3, 4, 5}, {{2, 3}, {2, 4}, {2, 5}, {3, 4}});
}

// Two triangles glued along the edge {2,3}: vertices 2..5, five edges.
inline Graph two_triangles() {
  return make_graph({2, 3, 4, 5}, {{2, 3}, {2, 4}, {3, 4}, {2, 5}, {3, 5}});
}

inline Graph four_cycle() { return make_graph({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}); }

inline Graph path(int len) {
  std::vector<int> verts;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i <= len; ++i) verts.push_back(i + 1);
  for (int i = 0; i < len; ++i) edges.emplace_back(i + 1, i + 2);
  return make_graph(verts, edges);
}

}  // namespace tropmod::testutil
