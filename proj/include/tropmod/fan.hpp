#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropmod/linalg.hpp"

namespace tropmod {

// Sorted ray-index set. Cone dimension is |rays| + lineality dim for the
// simplicial fans produced by the Bergman machinery; fibre products may
// produce non-simplicial cones, where dim is the rank of the generators.
struct Cone {
  std::vector<int> rays;
  bool operator==(const Cone&) const = default;
  bool operator<(const Cone& o) const { return rays < o.rays; }
};

// Rational polyhedral fan with positive integer weights on maximal cones.
// Rays are primitive integer vectors in canonical (lexicographic) order,
// the lineality generators are a canonical Hermite basis, and every ray
// appears in some maximal cone.
struct WeightedFan {
  int ambient_rank = 0;
  std::vector<VecZ> rays;
  MatZ lineality;
  std::vector<Cone> maximal_cones;
  std::vector<Int> weights;
  bool pure = true;
  int dim = 0;

  int lineality_dim() const { return static_cast<int>(lineality.size()); }
  int cone_dim(const Cone& c) const;
  bool operator==(const WeightedFan&) const = default;
};

// Normalizes into the canonical form above. Cones listing the same ray set
// must carry equal weights.
WeightedFan make_fan(int ambient_rank, std::vector<VecZ> rays, MatZ lineality,
                     std::vector<Cone> maximal_cones, std::vector<Int> weights);

// The fan {0} in a rank-0 ambient space, with one (empty) maximal cone.
WeightedFan point_fan();

bool is_simplicial(const WeightedFan& f);

// Barycenter of a cone (sum of its rays); lies in the relative interior
// when the cone has rays, at the origin otherwise.
VecZ barycenter(const WeightedFan& f, const Cone& c);

// Minimal cone of f containing p, as a set of ray indices (empty = the
// lineality cone), or nullopt when p is outside the support. Assumes the
// maximal cones are simplicial.
std::optional<std::vector<int>> locate_cone(const WeightedFan& f, const VecQ& p);
bool in_support(const WeightedFan& f, const VecQ& p);

// Exact membership of p in the (closed) cone spanned by the given rays and
// lineality generators; non-simplicial cones are allowed (least-squares-free
// exact test via extreme-ray-free LP is not needed at this scale: the test
// solves the simplicial case directly and falls back to an exact feasibility
// search otherwise).
bool cone_contains(const std::vector<VecZ>& rays, const MatZ& lineality, const VecQ& p);

struct BalanceCertificate {
  bool balanced = false;
  // First violating codimension-one face, by ray indices, when unbalanced.
  std::vector<int> violating_facet;
  VecZ defect;  // quotient coordinates of the weighted normal sum
};

// Exact balancing check: for every codimension-one face tau, the weighted
// sum of the primitive generators of the adjacent maximal cones modulo the
// lattice of span(tau) must vanish. Requires a pure simplicial fan.
BalanceCertificate check_balanced(const WeightedFan& f);

// Local fan around a cone (given by its ray-index set) in lattice-exact
// quotient coordinates; weights are inherited.
WeightedFan star_fan(const WeightedFan& f, const std::vector<int>& tau_rays);
// Star at a point: star at the minimal cone containing p.
WeightedFan star_fan_at_point(const WeightedFan& f, const VecQ& p);

WeightedFan product_fan(const WeightedFan& a, const WeightedFan& b);

// Quotient by the all-ones line, presented in the coordinates where the
// coordinate of the smallest-index ground element is set to zero:
// x -> (x_1 - x_0, ..., x_{m-1} - x_0). Requires (1,...,1) in the lineality.
WeightedFan quotient_lineality(const WeightedFan& f);
// The same section map applied to a single vector.
VecZ quotient_vector(const VecZ& x);
VecQ quotient_vector_q(const VecQ& x);

// Pairwise check that cones intersect in common faces (O(cones^2)); run
// behind the --paranoid flag.
void paranoid_face_check(const WeightedFan& f);

std::string fan_to_json(const WeightedFan& f, int indent = -1);
WeightedFan fan_from_json(const std::string& text);

}  // namespace tropmod
