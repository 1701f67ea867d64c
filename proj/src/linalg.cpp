#include "tropmod/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace tropmod {

Int gcd_ll(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int vec_gcd(const VecZ& v) {
  Int g = 0;
  for (Int x : v) g = gcd_ll(g, x);
  return g;
}

VecZ primitive(VecZ v) {
  Int g = vec_gcd(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

bool is_zero(const VecZ& v) {
  for (Int x : v)
    if (x != 0) return false;
  return true;
}

VecZ add(const VecZ& a, const VecZ& b) {
  VecZ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

VecZ sub(const VecZ& a, const VecZ& b) {
  VecZ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

VecZ scale(const VecZ& a, Int c) {
  VecZ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

VecQ to_q(const VecZ& v) {
  VecQ r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

Int x_to_int(const Rat& r) {
  // Only valid for integral rationals.
  return r.numerator() / r.denominator();
}

VecZ q_to_primitive_z(const VecQ& v) {
  Int lcm = 1;
  for (const Rat& x : v) {
    Int d = x.denominator();
    lcm = lcm / gcd_ll(lcm, d) * d;
  }
  VecZ r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = x_to_int(v[i] * lcm);
  return primitive(r);
}

namespace {

// Row-reduces in place; returns pivot column per pivot row.
std::vector<int> row_reduce(MatQ& m) {
  std::vector<int> pivots;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == Rat(0)) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == Rat(0)) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int rank_q(MatQ rows) {
  auto p = row_reduce(rows);
  return static_cast<int>(p.size());
}

int rank_z(const MatZ& rows) {
  MatQ q;
  q.reserve(rows.size());
  for (const auto& r : rows) q.push_back(to_q(r));
  return rank_q(std::move(q));
}

bool in_span(const MatZ& rows, const VecZ& v) {
  if (is_zero(v)) return true;
  MatZ with = rows;
  with.push_back(v);
  return rank_z(rows) == rank_z(with);
}

bool in_span_q(MatQ rows, const VecQ& v) {
  int r0 = rank_q(rows);
  rows.push_back(v);
  return r0 == rank_q(std::move(rows));
}

std::optional<VecQ> solve_columns(const std::vector<VecQ>& cols, const VecQ& target,
                                  bool* unique) {
  size_t k = cols.size();
  size_t m = target.size();
  MatQ aug(m, VecQ(k + 1, Rat(0)));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < k; ++j) aug[i][j] = cols[j][i];
    aug[i][k] = target[i];
  }
  auto pivots = row_reduce(aug);
  // Inconsistent iff a pivot sits in the augmented column.
  for (int p : pivots)
    if (p == static_cast<int>(k)) return std::nullopt;
  VecQ x(k, Rat(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][k];
  if (unique) *unique = pivots.size() == k;
  return x;
}

std::vector<VecQ> kernel_q(const MatQ& rows, int ncols) {
  MatQ m = rows;
  for (auto& r : m) r.resize(ncols, Rat(0));
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<VecQ> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    VecQ v(ncols, Rat(0));
    v[free] = Rat(1);
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

void col_sub(MatZ& a, MatZ& v, int j, int t, Int q) {
  for (auto& row : a) row[j] -= q * row[t];
  for (auto& row : v) row[j] -= q * row[t];
}

void col_swap(MatZ& a, MatZ& v, int j, int t) {
  for (auto& row : a) std::swap(row[j], row[t]);
  for (auto& row : v) std::swap(row[j], row[t]);
}

}  // namespace

SnfResult snf(MatZ a, int ncols) {
  int s = static_cast<int>(a.size());
  for (auto& r : a) r.resize(ncols, 0);
  SnfResult res;
  res.v.assign(ncols, VecZ(ncols, 0));
  for (int i = 0; i < ncols; ++i) res.v[i][i] = 1;
  int t = 0;
  while (t < s && t < ncols) {
    // Smallest nonzero pivot keeps intermediate entries small.
    int pi = -1, pj = -1;
    for (int i = t; i < s; ++i)
      for (int j = t; j < ncols; ++j)
        if (a[i][j] != 0 && (pi < 0 || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    if (pj != t) col_swap(a, res.v, pj, t);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < s; ++i) {
        if (a[i][t] == 0) continue;
        Int q = a[i][t] / a[t][t];
        for (int j = 0; j < ncols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[i], a[t]);
          clean = false;
        }
      }
      for (int j = t + 1; j < ncols; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        col_sub(a, res.v, j, t, q);
        if (a[t][j] != 0) {
          col_swap(a, res.v, j, t);
          clean = false;
        }
      }
      if (clean) {
        for (int i = t + 1; i < s && clean; ++i)
          if (a[i][t] != 0) clean = false;
      }
    }
    res.diag.push_back(a[t][t]);
    ++t;
  }
  res.rank = static_cast<int>(res.diag.size());
  return res;
}

VecZ row_times_mat(const VecZ& r, const MatZ& v) {
  size_t n = v.empty() ? 0 : v[0].size();
  VecZ out(n, 0);
  for (size_t k = 0; k < r.size(); ++k) {
    if (r[k] == 0) continue;
    for (size_t j = 0; j < n; ++j) out[j] += r[k] * v[k][j];
  }
  return out;
}

VecZ LatticeQuotient::apply(const VecZ& x) const {
  VecZ c = row_times_mat(x, v);
  return VecZ(c.begin() + rank, c.end());
}

VecQ LatticeQuotient::apply_q(const VecQ& x) const {
  VecQ out(n - rank, Rat(0));
  for (int j = rank; j < n; ++j) {
    Rat acc(0);
    for (int k = 0; k < n; ++k)
      if (x[k] != Rat(0)) acc += x[k] * v[k][j];
    out[j - rank] = acc;
  }
  return out;
}

LatticeQuotient lattice_quotient(const MatZ& span_rows, int ncols) {
  SnfResult s = snf(span_rows, ncols);
  LatticeQuotient q;
  q.v = std::move(s.v);
  q.rank = s.rank;
  q.n = ncols;
  return q;
}

namespace {

Rat det_q(MatQ m) {
  size_t n = m.size();
  Rat det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t sel = c;
    while (sel < n && m[sel][c] == Rat(0)) ++sel;
    if (sel == n) return Rat(0);
    if (sel != c) {
      std::swap(m[sel], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rat inv = Rat(1) / m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == Rat(0)) continue;
      Rat f = m[i][c] * inv;
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

MatZ invert_unimodular(const MatZ& v) {
  int n = static_cast<int>(v.size());
  std::vector<VecQ> cols(n, VecQ(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cols[j][i] = Rat(v[i][j]);
  MatZ inv(n, VecZ(n, 0));
  for (int i = 0; i < n; ++i) {
    // Row i of v^{-1} solves row * v = e_i, i.e. v^T * row^T = e_i.
    VecQ target(n, Rat(0));
    target[i] = Rat(1);
    std::vector<VecQ> vt_cols(n, VecQ(n));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) vt_cols[r][c] = Rat(v[r][c]);
    auto sol = solve_columns(vt_cols, target);
    if (!sol) throw Error(ErrorCode::Internal, "matrix not invertible");
    for (int j = 0; j < n; ++j) inv[i][j] = x_to_int((*sol)[j]);
  }
  return inv;
}

}  // namespace

MatZ saturation_basis(const MatZ& rows, int ncols) {
  SnfResult s = snf(rows, ncols);
  MatZ w = invert_unimodular(s.v);
  MatZ basis;
  for (int i = 0; i < s.rank; ++i) basis.push_back(w[i]);
  return basis;
}

Int lattice_index(const MatZ& lattice, const MatZ& sub, int ncols) {
  MatQ lat_rows;
  for (const auto& r : lattice) lat_rows.push_back(to_q(r));
  int k = rank_q(lat_rows);
  if (k != static_cast<int>(lattice.size())) throw Error(ErrorCode::Internal, "lattice rows dependent");
  if (rank_z(sub) != k) return 0;
  // Coordinates of each sub generator in the lattice basis.
  std::vector<VecQ> cols(k, VecQ(ncols));
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < ncols; ++c) cols[j][c] = Rat(lattice[j][c]);
  MatQ coords;
  for (const auto& g : sub) {
    auto sol = solve_columns(cols, to_q(g));
    if (!sol) return 0;
    coords.push_back(*sol);
  }
  // Keep an independent square subset of the coordinate rows.
  MatQ square;
  for (const auto& row : coords) {
    MatQ test = square;
    test.push_back(row);
    if (rank_q(test) > static_cast<int>(square.size())) square.push_back(row);
    if (static_cast<int>(square.size()) == k) break;
  }
  if (static_cast<int>(square.size()) != k) return 0;
  Rat d = det_q(square);
  if (d < Rat(0)) d = -d;
  if (d.denominator() != 1) return 0;  // not a sublattice
  return d.numerator();
}

ConeVRep extreme_rays(const MatQ& eq, int dim, const std::vector<int>& nonneg) {
  if (nonneg.size() > 20) throw Error(ErrorCode::TooLarge, "too many sign constraints");
  ConeVRep out;
  // Lineality: eq * x = 0 and all sign-constrained coordinates zero.
  MatQ pinned = eq;
  for (int i : nonneg) {
    VecQ e(dim, Rat(0));
    e[i] = Rat(1);
    pinned.push_back(e);
  }
  for (const auto& l : kernel_q(pinned, dim)) out.lineality.push_back(q_to_primitive_z(l));

  MatQ base = eq;
  for (const auto& l : out.lineality) base.push_back(to_q(l));  // section off lineality

  std::set<VecZ> seen;
  size_t k = nonneg.size();
  for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
    MatQ rows = base;
    for (size_t b = 0; b < k; ++b) {
      if (!(mask >> b & 1)) continue;
      VecQ e(dim, Rat(0));
      e[nonneg[b]] = Rat(1);
      rows.push_back(e);
    }
    auto kern = kernel_q(rows, dim);
    if (kern.size() != 1) continue;
    VecZ g = q_to_primitive_z(kern[0]);
    int pos = 0, neg = 0;
    for (int i : nonneg) {
      if (g[i] > 0) ++pos;
      if (g[i] < 0) ++neg;
    }
    if (pos && neg) continue;
    if (neg) g = scale(g, -1);
    if (is_zero(g)) continue;
    seen.insert(g);
  }
  out.rays.assign(seen.begin(), seen.end());
  return out;
}

MatZ hermite_basis(MatZ rows, int ncols) {
  for (auto& r : rows) r.resize(ncols, 0);
  int m = static_cast<int>(rows.size());
  int r = 0;
  for (int c = 0; c < ncols && r < m; ++c) {
    // Clear column c below row r by gcd steps.
    while (true) {
      int sel = -1;
      for (int i = r; i < m; ++i)
        if (rows[i][c] != 0 && (sel < 0 || std::llabs(rows[i][c]) < std::llabs(rows[sel][c])))
          sel = i;
      if (sel < 0) break;
      std::swap(rows[sel], rows[r]);
      bool again = false;
      for (int i = r + 1; i < m; ++i) {
        if (rows[i][c] == 0) continue;
        Int q = rows[i][c] / rows[r][c];
        for (int j = 0; j < ncols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) again = true;
      }
      if (!again) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (int j = 0; j < ncols; ++j) rows[r][j] = -rows[r][j];
    // Reduce entries above the pivot into [0, pivot).
    for (int i = 0; i < r; ++i) {
      Int q = rows[i][c] / rows[r][c];
      if (rows[i][c] % rows[r][c] < 0) q -= 1;
      if (q != 0)
        for (int j = 0; j < ncols; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace tropmod
