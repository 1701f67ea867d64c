#pragma once

#include <optional>
#include <vector>

#include "tropmod/rational.hpp"

namespace tropmod {

using VecZ = std::vector<Int>;
using MatZ = std::vector<VecZ>;
using MatQ = std::vector<VecQ>;

Int gcd_ll(Int a, Int b);
Int vec_gcd(const VecZ& v);

// Divides by the gcd of the entries; the zero vector stays zero.
// The sign is kept as given (rays are directed).
VecZ primitive(VecZ v);

bool is_zero(const VecZ& v);
VecZ add(const VecZ& a, const VecZ& b);
VecZ sub(const VecZ& a, const VecZ& b);
VecZ scale(const VecZ& a, Int c);
VecQ to_q(const VecZ& v);
// Numerator of an integral rational; only valid when the denominator is 1.
Int x_to_int(const Rat& r);
// Clears denominators and reduces to a primitive integer vector.
VecZ q_to_primitive_z(const VecQ& v);

// Rank of the row span, exact over the rationals.
int rank_q(MatQ rows);
int rank_z(const MatZ& rows);

// True iff v lies in the rational row span of `rows`.
bool in_span(const MatZ& rows, const VecZ& v);
bool in_span_q(MatQ rows, const VecQ& v);

// Solves sum_i x_i cols[i] = target exactly. Returns a solution (any, with
// free variables set to 0) or nullopt if inconsistent. `unique` reports
// whether the solution is unique.
std::optional<VecQ> solve_columns(const std::vector<VecQ>& cols, const VecQ& target,
                                  bool* unique = nullptr);

// Rational kernel basis of {x : rows * x = 0}, x column of length cols.
std::vector<VecQ> kernel_q(const MatQ& rows, int ncols);

// Smith-style diagonalization without the divisibility chain:
// tracks column operations V (n x n unimodular) such that the lattice
// generated by the rows of A, expressed in the basis W = V^{-1} of Z^n,
// is spanned by d_i * W_i for i < rank. Consequently, for a row vector r,
// the coordinates of r in the W basis are r * V, and the image of r in the
// saturated quotient Z^n / (span(rows A) cap Z^n) is the tail (r*V)[rank..n).
struct SnfResult {
  MatZ v;            // n x n unimodular column transform
  std::vector<Int> diag;
  int rank = 0;
};
SnfResult snf(MatZ a, int ncols);

// r * V for a row vector.
VecZ row_times_mat(const VecZ& r, const MatZ& v);

// Quotient map Z^n -> Z^{n - rank} modulo the saturation of span(rows).
// Lattice-exact: the image lattice is identified with Z^{n-rank}.
struct LatticeQuotient {
  MatZ v;
  int rank = 0;
  int n = 0;
  VecZ apply(const VecZ& x) const;
  VecQ apply_q(const VecQ& x) const;
};
LatticeQuotient lattice_quotient(const MatZ& span_rows, int ncols);

// Index [L : L'] of a finite-index sublattice: `sub` rows must lie in the
// rational span of `lattice` rows and both must have the same rank.
// Returns 0 if the index is not finite.
Int lattice_index(const MatZ& lattice, const MatZ& sub, int ncols);

// Saturation basis: Z-basis of span_Q(rows) cap Z^n.
MatZ saturation_basis(const MatZ& rows, int ncols);

// Extreme rays of the cone {x in R^dim : x_i >= 0 for i in nonneg,
// eq * x = 0}. Returns primitive integer generators of the extreme rays
// modulo the lineality space {x : eq*x = 0, x_i = 0 for i in nonneg},
// whose basis is returned in `lineality`. Brute force over tight sets;
// meant for dim <= ~16.
struct ConeVRep {
  std::vector<VecZ> rays;
  std::vector<VecZ> lineality;
};
ConeVRep extreme_rays(const MatQ& eq, int dim, const std::vector<int>& nonneg);

// Canonical (row-style Hermite) basis for the lattice spanned by the rows;
// used to compare lineality spaces and serialize them deterministically.
MatZ hermite_basis(MatZ rows, int ncols);

}  // namespace tropmod
