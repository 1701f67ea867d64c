#pragma once

#include <map>
#include <string>
#include <vector>

#include "tropmod/fan.hpp"
#include "tropmod/matroid.hpp"
#include "tropmod/moduli.hpp"

namespace tropmod {

// Two graphs glued along explicit embeddings of a shared subgraph.
// Edge indexing of the result: g1's edges first (same indices), then g2's
// non-shared edges in g2 order.
struct GluedGraph {
  Graph g1, shared, g2;
  Graph result;
  std::map<int, int> map1, map2;       // shared vertex label -> g1/g2 label
  std::vector<int> g2_vertex_in_result;  // per g2 vertex index -> result label
  std::vector<int> g1_edge_in_result;    // per g1 edge index
  std::vector<int> g2_edge_in_result;    // per g2 edge index
  std::vector<int> shared_edge_in_g1;    // per shared edge index
  std::vector<int> shared_edge_in_g2;
};

GluedGraph glue_graphs(const Graph& g1, const Graph& shared, const Graph& g2,
                       const std::map<int, int>& map1, const std::map<int, int>& map2);

struct ChordalCertificate {
  bool chordal = false;
  std::vector<int> elimination_order;  // vertex labels, simplicial first
  std::vector<int> chordless_cycle;    // vertex labels of a >= 4 cycle
};
ChordalCertificate chordality(const Graph& g);

struct SplitGraphCertificate {
  bool split = false;
  std::vector<int> clique;       // vertex labels
  std::vector<int> independent;  // complement
};
SplitGraphCertificate split_graph(const Graph& g);

// Set-theoretic fibre product of fans over a common base, with the
// conewise polyhedral structure (one cell per tuple of factor cones,
// inclusion-maximal cells kept) and lattice-index weights on the cells of
// expected dimension. Everything in full ambient coordinates; the result
// lives in the concatenation of the factor spaces.
struct FibreProduct {
  WeightedFan fan;
  std::vector<std::vector<int>> provenance;  // per maximal cone: factor cone indices
  std::vector<WeightedFan> factors;
  std::vector<MatZ> projections;  // per factor: base_rank rows of length factor rank
  WeightedFan base;
  int expected_dim = 0;  // sum of factor dims minus (s-1) * base dim
  bool dimension_match = false;

  std::vector<int> coordinate_offsets() const;  // per factor
  // Membership in the set-theoretic fibre product (factor supports plus
  // matching), independent of the cell structure.
  bool support_contains(const VecQ& p) const;
};

FibreProduct multi_fibre_product(std::vector<WeightedFan> factors, std::vector<MatZ> projections,
                                 WeightedFan base);
FibreProduct set_fibre_product(const WeightedFan& f1, const MatZ& p1, const WeightedFan& f2,
                               const MatZ& p2, const WeightedFan& base);

// 0/1 selection matrix picking the given coordinates, in order.
MatZ coordinate_projection(int from_rank, const std::vector<int>& coords);

// The split-graph decomposition of the reduced weight graph: the clique
// K(w) on the vertices of weight > 1/2 and one factor G_i(w) per
// remaining vertex, glued along K(w).
struct WeightGraphDecomposition {
  WeightGraphs graphs;
  std::vector<int> clique_vertices;      // L(w)
  std::vector<int> small_vertices;       // S(w)
  std::vector<int> degree_one;           // D_1, the degree-1 members of S(w)
  Graph clique_graph;                    // K(w)
  std::vector<std::pair<int, Graph>> factors;  // (i, G_i(w))
};
WeightGraphDecomposition weight_graph_decomposition(const WeightVector& w);

struct NamedCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct FibreTheoremReport {
  bool ok = false;
  uint64_t seed = 0;
  std::vector<NamedCheck> checks;
  int product_cells = 0;
  int nested_cones = 0;
  std::vector<int> cones_per_cell;
  std::string to_json(int indent = -1) const;
};

// Builds the projection of the n-marked moduli fan as an iterated fibre
// product per the weight-graph decomposition and certifies it against the
// nested-set structure of the reduced graph: equal supports, matching
// dimensions, unit weights, and the refinement bookkeeping (each product
// cell splits into one cone per ordering of the light leaves sharing a
// position). Needs at least two heavy entries.
FibreTheoremReport verify_fibre_theorem(const WeightVector& w, uint64_t seed = 424242,
                                        int samples_per_cone = 40);

}  // namespace tropmod
