#pragma once

#include <vector>

#include "tropmod/fan.hpp"
#include "tropmod/matroid.hpp"

namespace tropmod {

// -Sum_{e in F} e_e, the ray attached to a flat in ambient coordinates.
VecZ flat_ray(const GraphicMatroid& m, EdgeSet flat);

enum class MembershipMethod { Circuits, MinBases, ChainsFan };

// Bergman fan membership of a weight covector, by three routes that must
// agree: the circuit criterion (max attained at least twice on every
// circuit), loop-freeness of the minimal-weight-basis matroid (exhaustive
// basis enumeration), and point location in the chains-of-flats structure
// (every strict sublevel set of the covector is a flat).
class MembershipOracle {
 public:
  explicit MembershipOracle(const GraphicMatroid& m);
  bool contains(const VecQ& p, MembershipMethod method) const;
  const GraphicMatroid& matroid() const { return m_; }

 private:
  GraphicMatroid m_;
  mutable std::vector<EdgeSet> circuits_, bases_;
  mutable bool have_circuits_ = false, have_bases_ = false;
};

bool bergman_membership(const GraphicMatroid& m, const VecQ& p, MembershipMethod method);

// Chains-of-flats structure on B(M), in ambient coordinates (one cone per
// maximal chain of flats, lineality the all-ones line). Quotient separately.
WeightedFan chains_of_flats_fan(const GraphicMatroid& m);

// Building sets are lists of nonempty flats, canonically ordered by
// (rank, lexicographic edge set); the full ground set is a member.
using BuildingSet = std::vector<EdgeSet>;

// All nonempty flats whose restriction subgraph is connected.
BuildingSet one_connected_building_set(const GraphicMatroid& m);

// Checks the interval-product condition directly: for every nonempty flat
// F with maximal members G_1..G_k of g below it, the join map
// prod [0,G_j] -> [0,F] is a poset isomorphism.
bool is_building_set(const GraphicMatroid& m, const BuildingSet& g);

// Nested: every antichain of >= 2 members has its join outside g.
bool is_nested(const GraphicMatroid& m, const BuildingSet& g, const std::vector<EdgeSet>& s);
// Shortcut valid for building sets of 1-connected flats: pairwise
// comparable or vertex-disjoint.
bool is_nested_one_connected(const GraphicMatroid& m, const std::vector<EdgeSet>& s);

// Nested-set structure on B(M) for a building set containing the full
// ground set (whose vector is absorbed into the lineality): one maximal
// cone per maximal nested set. Ambient coordinates; weights 1.
WeightedFan nested_set_fan(const GraphicMatroid& m, const BuildingSet& g, bool validate = true);

// The maximal nested sets themselves, in the fan's cone order.
std::vector<std::vector<EdgeSet>> maximal_nested_sets(const GraphicMatroid& m,
                                                      const BuildingSet& g,
                                                      bool validate = true);

}  // namespace tropmod
