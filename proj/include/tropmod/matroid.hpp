#pragma once

#include <vector>

#include "tropmod/graph.hpp"
#include "tropmod/rational.hpp"

namespace tropmod {

// A closed edge set, equivalently a partition of the vertices into
// connected blocks (blocks are induced subgraphs and carry all edges
// between their vertices).
struct Flat {
  EdgeSet edges = 0;
  int rank = 0;
  std::vector<std::vector<int>> blocks;  // vertex labels, singletons included
};

struct MinWeightBases {
  std::vector<EdgeSet> bases;
  Rat weight;
  bool loop_free = false;  // every ground element lies in some minimal basis
};

// Cycle matroid of a simple graph; the ground set is the edge list.
class GraphicMatroid {
 public:
  GraphicMatroid() = default;  // empty ground set
  static GraphicMatroid from_graph(Graph g);

  const Graph& graph() const { return graph_; }
  int ground_size() const { return graph_.num_edges(); }
  EdgeSet full_set() const { return ground_size() ? (EdgeSet(1) << ground_size()) - 1 : 0; }

  int rank(EdgeSet s) const;
  int rank() const { return rank(full_set()); }
  EdgeSet closure(EdgeSet s) const;
  bool is_flat(EdgeSet s) const { return closure(s) == s; }
  Flat make_flat(EdgeSet s) const;  // s must be closed

  // Complete list graded by rank, then lexicographic on the edge index
  // sequence; includes the empty flat and the full ground set.
  // Enumerates vertex partitions with connected blocks (guard |V| <= 12).
  std::vector<Flat> flats() const;

  // Simple cycles as edge sets (guard |E| <= 20).
  std::vector<EdgeSet> circuits() const;

  // All bases, by exhaustive forest growth (guard |E| <= 20).
  std::vector<EdgeSet> bases() const;

  // Bases of minimal c-weight; loop_free reports whether every element
  // appears in one of them.
  MinWeightBases minimal_weight_bases(const VecQ& c) const;

  GraphicMatroid restriction(EdgeSet s, std::vector<int>* new_to_old = nullptr) const;

  // Restriction subgraph (edges in s plus their endpoints) is connected.
  bool one_connected(EdgeSet s) const;
  // Restriction subgraph is 2-connected (matroid-connectedness of the
  // underlying set); exposed as a predicate only.
  bool two_connected(EdgeSet s) const;

 private:
  explicit GraphicMatroid(Graph g) : graph_(std::move(g)) {}
  void check_subset(EdgeSet s) const;
  Graph graph_;
};

// Disjoint union; the second summand's vertices are relabelled past the
// first's, and its edge indices are shifted by the first's ground size.
GraphicMatroid direct_sum(const GraphicMatroid& a, const GraphicMatroid& b);

}  // namespace tropmod
