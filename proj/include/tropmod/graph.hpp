#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tropmod/error.hpp"

namespace tropmod {

// Subsets of edges (and of small index sets generally) are bitmasks;
// all enumeration guards keep ground sets below 32 elements.
using EdgeSet = uint32_t;

inline int popcount(EdgeSet s) { return __builtin_popcount(s); }
inline bool contains(EdgeSet a, EdgeSet b) { return (b & ~a) == 0; }

std::vector<int> set_to_indices(EdgeSet s);
EdgeSet indices_to_set(const std::vector<int>& idx);

// Simple labelled graph. Vertices are arbitrary integer labels; edges are
// unordered pairs carrying their position in `edges` as a stable index,
// so that fan coordinates are reproducible across runs.
struct Graph {
  std::vector<int> vertices;                // sorted, unique
  std::vector<std::pair<int, int>> edges;   // normalized u < v

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int vertex_index(int label) const;
  bool has_vertex(int label) const;
  int edge_index(int u, int v) const;  // -1 if absent

  // Number of connected components of the spanning subgraph (V, s).
  int components(EdgeSet s) const;
  // Component id per vertex index for the spanning subgraph (V, s).
  std::vector<int> component_ids(EdgeSet s) const;
  bool connected() const;

  // Subgraph on the given edge subset; vertices are the edge endpoints.
  // new_to_old maps new edge indices to old ones.
  Graph restriction(EdgeSet s, std::vector<int>* new_to_old = nullptr) const;

  std::string dot(const std::string& name = "G") const;
};

// Validates the Graph invariants (no loops, no parallel edges, endpoints
// listed, labels sorted/unique) and normalizes edge endpoint order.
Graph make_graph(std::vector<int> vertices, std::vector<std::pair<int, int>> edges);

Graph complete_graph(const std::vector<int>& labels);
// t edges from `center` to each of `leaves`.
Graph star_graph(int center, const std::vector<int>& leaves);

// Parsers for the two supported inputs: "u v" per line, and
// {"vertices": [...], "edges": [[u,v],...]}.
Graph parse_graph_edge_list(const std::string& text);
Graph parse_graph_json(const std::string& text);

}  // namespace tropmod
