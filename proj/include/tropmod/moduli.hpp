#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropmod/bergman.hpp"
#include "tropmod/fan.hpp"
#include "tropmod/matroid.hpp"

namespace tropmod {

// Leaves are labelled 1..n; bit i-1 of a LeafSet is leaf i.
using LeafSet = uint32_t;

LeafSet full_leaf_set(int n);
std::vector<int> leaf_list(LeafSet s);
LeafSet leaf_mask(const std::vector<int>& leaves);

// Splits are stored by the side not containing leaf 1.
LeafSet canonical_split(LeafSet side, int n);
bool splits_compatible(LeafSet a, LeafSet b);
// (popcount, lexicographic leaf list); also the serialization order.
bool split_less(LeafSet a, LeafSet b);

// Combinatorial type of an n-marked tree: a pairwise-compatible split set.
struct TreeType {
  int n = 0;
  std::vector<LeafSet> splits;  // canonical sides, sorted by split_less
  bool trivalent() const { return static_cast<int>(splits.size()) == n - 3; }
  bool operator==(const TreeType&) const = default;
  bool operator<(const TreeType& o) const;
};

TreeType make_tree_type(int n, std::vector<LeafSet> splits);
std::string tree_type_to_json(const TreeType& t);
std::string tree_type_dot(const TreeType& t, const std::string& name = "T");

// Vertices of the tree: attached leaves and incident bounded edge count.
struct TreeVertex {
  LeafSet leaves = 0;
  int edges = 0;
};
std::vector<TreeVertex> tree_vertices(const TreeType& t);

// All compatible split sets (or only the maximal, trivalent ones),
// canonically ordered. Guard 4 <= n <= 8.
std::vector<TreeType> enumerate_tree_types(int n, bool only_trivalent);

struct MetricTree {
  TreeType type;
  VecQ lengths;  // positive, one per split
};

// Exact rationals with 0 < w_i <= 1 and sum > 2, n >= 4.
struct WeightVector {
  VecQ entries;
  int n() const { return static_cast<int>(entries.size()); }
};
WeightVector make_weight_vector(VecQ entries);
WeightVector parse_weight_vector(const std::string& csv);

// The family { S subset of [n] : sum_{i in S} w_i <= 1 }; downward closed,
// and it determines the stability of every combinatorial type.
struct ChamberSignature {
  int n = 0;
  std::vector<LeafSet> family;  // sorted, nonempty members
  bool contains_set(LeafSet s) const;
  std::vector<LeafSet> maximal_members() const;
  bool operator==(const ChamberSignature&) const = default;
  bool operator<(const ChamberSignature& o) const;
};
ChamberSignature chamber_signature(const WeightVector& w);

enum class WeightClass { Heavy, Small, Neither };

struct WeightClassification {
  std::vector<WeightClass> classes;  // per index
  int heavy_count = 0;
  std::vector<int> small_indices;  // small and not heavy
  Rat small_total;
  // Chamber sense: the signature equals that of some (1^f, eps^t), i.e.
  // every index is heavy or small and the small entries total at most 1.
  // (The boundary total == 1 behaves exactly like a light chamber; keeping
  // it inside makes the classification a chamber invariant.)
  bool heavy_light = false;
  ChamberSignature signature;
  // (1^f, eps^t) with eps = 1/(2t); only when heavy_light.
  std::optional<WeightVector> canonical_representative;
};
WeightClassification classify_weights(const WeightVector& w);

struct WeightGraphs {
  Graph total;    // on 1..n, edges where w_i + w_j > 1
  Graph reduced;  // total minus one heavy vertex (max weight, ties lowest)
  int deleted_vertex = 0;
};
Graph total_weight_graph(const WeightVector& w);
WeightGraphs weight_graphs(const WeightVector& w);

bool is_w_stable(const TreeType& t, const WeightVector& w);
bool is_w_stable(const TreeType& t, const ChamberSignature& sig);

// Distance coordinates: the curve's pairwise leaf distances reduced modulo
// the image of x -> (x_i + x_j), expressed in the basis of split vectors
// v_S for two-element S not containing 1 and different from {2,3}.
std::vector<LeafSet> distance_basis(int n);
VecQ distance_vector(const MetricTree& t);
// Coordinates of a single-split unit curve in the same basis.
VecQ split_distance_coords(int n, LeafSet split);

// The moduli fan of n-marked curves in its combinatorial subdivision,
// realized in the quotient coordinates of the complete graph on 2..n.
struct M0nFan {
  WeightedFan fan;
  std::vector<LeafSet> split_of_ray;       // per ray index
  std::map<LeafSet, int> ray_of_split;
  std::vector<TreeType> type_of_cone;      // per maximal cone
};
M0nFan m0n_fan(int n);

// Dictionary between flats of the complete graph on 2..n and tree types.
TreeType tree_type_of_flat(int n, const GraphicMatroid& complete, EdgeSet flat);
EdgeSet flat_of_split(int n, const GraphicMatroid& complete, LeafSet split);

// Coordinate-forgetting map onto the reduced weight graph.
struct ProjectionMap {
  int n = 0;
  int deleted_vertex = 0;
  Graph complete;  // complete graph on [n] minus the deleted vertex
  Graph reduced;   // subgraph of `complete`
  GraphicMatroid reduced_matroid;

  // Quotient coordinates on both sides (smallest edge zeroed).
  VecZ ray_image_of_split(LeafSet split) const;  // primitive or zero
  VecQ apply_point(const VecQ& x) const;
  bool injective_on(const TreeType& t) const;
  // Ray images of a type, deduplicated and without zeros.
  std::vector<VecZ> cone_image(const TreeType& t) const;
};
ProjectionMap projection(const WeightVector& w);

// Inherited unstable cones: the layered recursion (unstable types, then
// types forced through univalent codimension-one faces).
struct InheritedUnstable {
  std::vector<TreeType> trivalent;  // all trivalent types, canonical order
  std::vector<int> layer;           // -1 when not inherited unstable
  std::vector<int> members;         // indices with layer >= 0
};
InheritedUnstable inherited_unstable(const WeightVector& w);

struct Obstruction {
  enum class Kind { UnivalentFace, NonPure } kind;
  TreeType witness;                   // codim-1 stable type / short maximal type
  std::vector<TreeType> resolutions;  // trivalent types over a univalent face
  std::vector<bool> resolution_stable;
  std::string to_json(int indent = -1) const;
};

struct M0wResult {
  bool is_fan = false;
  WeightedFan fan;  // quotient coordinates of the reduced graph
  // Stable trivalent types matched to maximal cones of the fan.
  std::vector<std::pair<TreeType, int>> cone_of_type;
  std::optional<Obstruction> obstruction;
};
M0wResult m0w_fan(const WeightVector& w);

// Complete permutohedral fan of the two-heavy, t-light moduli space.
WeightedFan losev_manin_fan(int t);

// One weight vector per realizable chamber with entries k/denominator,
// sorted non-increasingly. Used by the verification suites.
std::vector<WeightVector> chamber_representatives(int n, int denominator = 16);

}  // namespace tropmod
