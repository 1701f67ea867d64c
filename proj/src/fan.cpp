#include "tropmod/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace tropmod {

int WeightedFan::cone_dim(const Cone& c) const {
  MatZ gens = lineality;
  for (int r : c.rays) gens.push_back(rays[r]);
  return rank_z(gens);
}

WeightedFan make_fan(int ambient_rank, std::vector<VecZ> rays, MatZ lineality,
                     std::vector<Cone> maximal_cones, std::vector<Int> weights) {
  if (maximal_cones.size() != weights.size())
    throw Error(ErrorCode::Internal, "one weight per maximal cone");
  for (auto& r : rays) {
    r = primitive(std::move(r));
    if (is_zero(r)) throw Error(ErrorCode::Internal, "zero ray");
  }
  // Dedupe rays and drop the ones no maximal cone uses.
  std::vector<char> used(rays.size(), 0);
  for (const auto& c : maximal_cones)
    for (int r : c.rays) {
      if (r < 0 || r >= static_cast<int>(rays.size()))
        throw Error(ErrorCode::Internal, "ray index out of range");
      used[r] = 1;
    }
  std::map<VecZ, int> ray_id;
  std::vector<VecZ> sorted_rays;
  for (size_t i = 0; i < rays.size(); ++i)
    if (used[i]) ray_id.emplace(rays[i], 0);
  for (auto& [vec, id] : ray_id) {
    id = static_cast<int>(sorted_rays.size());
    sorted_rays.push_back(vec);
  }
  std::vector<std::pair<Cone, Int>> cones;
  for (size_t i = 0; i < maximal_cones.size(); ++i) {
    Cone c;
    std::set<int> remapped;
    for (int r : maximal_cones[i].rays) remapped.insert(ray_id.at(rays[r]));
    c.rays.assign(remapped.begin(), remapped.end());
    cones.emplace_back(std::move(c), weights[i]);
  }
  std::sort(cones.begin(), cones.end());
  for (size_t i = 0; i + 1 < cones.size(); ++i)
    if (cones[i].first == cones[i + 1].first && cones[i].second != cones[i + 1].second)
      throw Error(ErrorCode::Internal, "duplicate cone with conflicting weights");
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());

  WeightedFan f;
  f.ambient_rank = ambient_rank;
  f.rays = std::move(sorted_rays);
  f.lineality = hermite_basis(std::move(lineality), ambient_rank);
  for (auto& [c, w] : cones) {
    f.maximal_cones.push_back(std::move(c));
    f.weights.push_back(w);
  }
  f.dim = f.lineality_dim();
  f.pure = true;
  int first_dim = -1;
  for (const auto& c : f.maximal_cones) {
    int d = f.cone_dim(c);
    if (first_dim < 0) first_dim = d;
    if (d != first_dim) f.pure = false;
    f.dim = std::max(f.dim, d);
  }
  return f;
}

WeightedFan point_fan() {
  return make_fan(0, {}, {}, {Cone{}}, {1});
}

bool is_simplicial(const WeightedFan& f) {
  for (const auto& c : f.maximal_cones)
    if (f.cone_dim(c) != static_cast<int>(c.rays.size()) + f.lineality_dim()) return false;
  return true;
}

VecZ barycenter(const WeightedFan& f, const Cone& c) {
  VecZ p(f.ambient_rank, 0);
  for (int r : c.rays) p = add(p, f.rays[r]);
  return p;
}

namespace {

std::optional<VecQ> solve_cone_coords(const WeightedFan& f, const Cone& c, const VecQ& p,
                                      bool* unique) {
  std::vector<VecQ> cols;
  for (int r : c.rays) cols.push_back(to_q(f.rays[r]));
  for (const auto& l : f.lineality) cols.push_back(to_q(l));
  return solve_columns(cols, p, unique);
}

}  // namespace

std::optional<std::vector<int>> locate_cone(const WeightedFan& f, const VecQ& p) {
  if (static_cast<int>(p.size()) != f.ambient_rank)
    throw Error(ErrorCode::InvalidSubset, "point has wrong ambient rank");
  for (const auto& c : f.maximal_cones) {
    bool unique = false;
    auto sol = solve_cone_coords(f, c, p, &unique);
    if (!sol) continue;
    if (!unique) throw Error(ErrorCode::Internal, "locate_cone requires simplicial cones");
    bool nonneg = true;
    for (size_t i = 0; i < c.rays.size(); ++i)
      if ((*sol)[i] < Rat(0)) {
        nonneg = false;
        break;
      }
    if (!nonneg) continue;
    std::vector<int> face;
    for (size_t i = 0; i < c.rays.size(); ++i)
      if ((*sol)[i] > Rat(0)) face.push_back(c.rays[i]);
    return face;
  }
  return std::nullopt;
}

bool in_support(const WeightedFan& f, const VecQ& p) { return locate_cone(f, p).has_value(); }

bool cone_contains(const std::vector<VecZ>& rays, const MatZ& lineality, const VecQ& p) {
  std::vector<VecQ> cols;
  for (const auto& r : rays) cols.push_back(to_q(r));
  for (const auto& l : lineality) cols.push_back(to_q(l));
  bool unique = false;
  auto sol = solve_columns(cols, p, &unique);
  if (!sol) return false;
  if (unique) {
    for (size_t i = 0; i < rays.size(); ++i)
      if ((*sol)[i] < Rat(0)) return false;
    return true;
  }
  // Non-simplicial cone: exact feasibility via the homogenized cone
  // {(lambda, mu, t) : R lambda + L mu - t p = 0, lambda >= 0, t >= 0}.
  size_t n = rays.size(), k = lineality.size();
  int dim = static_cast<int>(n + k + 1);
  size_t m = p.size();
  MatQ eq(m, VecQ(dim, Rat(0)));
  for (size_t r = 0; r < m; ++r) {
    for (size_t j = 0; j < n; ++j) eq[r][j] = Rat(rays[j][r]);
    for (size_t j = 0; j < k; ++j) eq[r][n + j] = Rat(lineality[j][r]);
    eq[r][n + k] = -p[r];
  }
  std::vector<int> nonneg;
  for (size_t j = 0; j < n; ++j) nonneg.push_back(static_cast<int>(j));
  nonneg.push_back(dim - 1);
  ConeVRep rep = extreme_rays(eq, dim, nonneg);
  for (const auto& g : rep.rays)
    if (g[dim - 1] > 0) return true;
  for (const auto& g : rep.lineality)
    if (g[dim - 1] != 0) return true;
  return false;
}

BalanceCertificate check_balanced(const WeightedFan& f) {
  if (!f.pure) throw Error(ErrorCode::NotPure, "balancing requires a pure fan");
  if (!is_simplicial(f)) throw Error(ErrorCode::Internal, "balancing requires simplicial cones");
  BalanceCertificate cert;
  // Collect codimension-one faces as (facet rays) -> adjacent maximal cones.
  std::map<std::vector<int>, std::vector<int>> facets;
  for (size_t ci = 0; ci < f.maximal_cones.size(); ++ci) {
    const auto& c = f.maximal_cones[ci];
    if (c.rays.empty()) continue;  // pure lineality cone, no facets
    for (size_t drop = 0; drop < c.rays.size(); ++drop) {
      std::vector<int> facet;
      for (size_t i = 0; i < c.rays.size(); ++i)
        if (i != drop) facet.push_back(c.rays[i]);
      facets[facet].push_back(static_cast<int>(ci));
    }
  }
  for (const auto& [tau, adjacent] : facets) {
    MatZ span_rows = f.lineality;
    for (int r : tau) span_rows.push_back(f.rays[r]);
    LatticeQuotient q = lattice_quotient(span_rows, f.ambient_rank);
    VecZ sum(f.ambient_rank - q.rank, 0);
    for (int ci : adjacent) {
      const auto& c = f.maximal_cones[ci];
      int extra = -1;
      for (int r : c.rays)
        if (std::find(tau.begin(), tau.end(), r) == tau.end()) extra = r;
      VecZ tail = q.apply(f.rays[extra]);
      Int g = vec_gcd(tail);
      if (g == 0) throw Error(ErrorCode::Internal, "degenerate facet normal");
      for (auto& x : tail) x /= g;
      sum = add(sum, scale(tail, f.weights[ci]));
    }
    if (!is_zero(sum)) {
      cert.balanced = false;
      cert.violating_facet = tau;
      cert.defect = sum;
      return cert;
    }
  }
  cert.balanced = true;
  return cert;
}

WeightedFan star_fan(const WeightedFan& f, const std::vector<int>& tau_rays) {
  std::vector<int> tau = tau_rays;
  std::sort(tau.begin(), tau.end());
  bool found = false;
  for (const auto& c : f.maximal_cones)
    if (std::includes(c.rays.begin(), c.rays.end(), tau.begin(), tau.end())) found = true;
  if (!found) throw Error(ErrorCode::ConeNotInFan, "not a face of any maximal cone");

  MatZ span_rows = f.lineality;
  for (int r : tau) span_rows.push_back(f.rays[r]);
  LatticeQuotient q = lattice_quotient(span_rows, f.ambient_rank);

  std::vector<VecZ> rays;
  std::vector<Cone> cones;
  std::vector<Int> weights;
  for (size_t ci = 0; ci < f.maximal_cones.size(); ++ci) {
    const auto& c = f.maximal_cones[ci];
    if (!std::includes(c.rays.begin(), c.rays.end(), tau.begin(), tau.end())) continue;
    Cone img;
    for (int r : c.rays) {
      if (std::find(tau.begin(), tau.end(), r) != tau.end()) continue;
      img.rays.push_back(static_cast<int>(rays.size()));
      rays.push_back(q.apply(f.rays[r]));
    }
    cones.push_back(std::move(img));
    weights.push_back(f.weights[ci]);
  }
  return make_fan(f.ambient_rank - q.rank, std::move(rays), {}, std::move(cones),
                  std::move(weights));
}

WeightedFan star_fan_at_point(const WeightedFan& f, const VecQ& p) {
  auto face = locate_cone(f, p);
  if (!face) throw Error(ErrorCode::ConeNotInFan, "point outside the support");
  return star_fan(f, *face);
}

WeightedFan product_fan(const WeightedFan& a, const WeightedFan& b) {
  int rank = a.ambient_rank + b.ambient_rank;
  auto embed_left = [&](const VecZ& v) {
    VecZ w(rank, 0);
    std::copy(v.begin(), v.end(), w.begin());
    return w;
  };
  auto embed_right = [&](const VecZ& v) {
    VecZ w(rank, 0);
    std::copy(v.begin(), v.end(), w.begin() + a.ambient_rank);
    return w;
  };
  std::vector<VecZ> rays;
  for (const auto& r : a.rays) rays.push_back(embed_left(r));
  for (const auto& r : b.rays) rays.push_back(embed_right(r));
  MatZ lineality;
  for (const auto& l : a.lineality) lineality.push_back(embed_left(l));
  for (const auto& l : b.lineality) lineality.push_back(embed_right(l));
  std::vector<Cone> cones;
  std::vector<Int> weights;
  for (size_t i = 0; i < a.maximal_cones.size(); ++i)
    for (size_t j = 0; j < b.maximal_cones.size(); ++j) {
      Cone c = a.maximal_cones[i];
      for (int r : b.maximal_cones[j].rays) c.rays.push_back(r + static_cast<int>(a.rays.size()));
      cones.push_back(std::move(c));
      weights.push_back(a.weights[i] * b.weights[j]);
    }
  return make_fan(rank, std::move(rays), std::move(lineality), std::move(cones),
                  std::move(weights));
}

VecZ quotient_vector(const VecZ& x) {
  VecZ y(x.size() - 1);
  for (size_t i = 1; i < x.size(); ++i) y[i - 1] = x[i] - x[0];
  return y;
}

VecQ quotient_vector_q(const VecQ& x) {
  VecQ y(x.size() - 1);
  for (size_t i = 1; i < x.size(); ++i) y[i - 1] = x[i] - x[0];
  return y;
}

WeightedFan quotient_lineality(const WeightedFan& f) {
  if (f.ambient_rank == 0) return f;
  VecZ ones(f.ambient_rank, 1);
  if (!in_span(f.lineality, ones))
    throw Error(ErrorCode::Internal, "lineality does not contain the all-ones vector");
  std::vector<VecZ> rays;
  for (const auto& r : f.rays) rays.push_back(quotient_vector(r));
  MatZ lineality;
  for (const auto& l : f.lineality) {
    VecZ img = quotient_vector(l);
    if (!is_zero(img)) lineality.push_back(img);
  }
  return make_fan(f.ambient_rank - 1, std::move(rays), std::move(lineality), f.maximal_cones,
                  f.weights);
}

void paranoid_face_check(const WeightedFan& f) {
  for (size_t i = 0; i < f.maximal_cones.size(); ++i) {
    for (size_t j = i + 1; j < f.maximal_cones.size(); ++j) {
      const Cone& a = f.maximal_cones[i];
      const Cone& b = f.maximal_cones[j];
      std::vector<int> common;
      std::set_intersection(a.rays.begin(), a.rays.end(), b.rays.begin(), b.rays.end(),
                            std::back_inserter(common));
      std::vector<VecZ> common_rays;
      for (int r : common) common_rays.push_back(f.rays[r]);
      // Intersection cone, parametrized by both cones simultaneously.
      size_t na = a.rays.size(), nb = b.rays.size(), k = f.lineality.size();
      int dim = static_cast<int>(na + nb + 2 * k);
      MatQ eq(f.ambient_rank, VecQ(dim, Rat(0)));
      for (int r = 0; r < f.ambient_rank; ++r) {
        int col = 0;
        for (size_t x = 0; x < na; ++x) eq[r][col++] = Rat(f.rays[a.rays[x]][r]);
        for (size_t x = 0; x < k; ++x) eq[r][col++] = Rat(f.lineality[x][r]);
        for (size_t x = 0; x < nb; ++x) eq[r][col++] = Rat(-f.rays[b.rays[x]][r]);
        for (size_t x = 0; x < k; ++x) eq[r][col++] = Rat(-f.lineality[x][r]);
      }
      std::vector<int> nonneg;
      for (size_t x = 0; x < na; ++x) nonneg.push_back(static_cast<int>(x));
      for (size_t x = 0; x < nb; ++x) nonneg.push_back(static_cast<int>(na + k + x));
      ConeVRep rep = extreme_rays(eq, dim, nonneg);
      for (const auto& g : rep.rays) {
        VecQ pt(f.ambient_rank, Rat(0));
        for (int r = 0; r < f.ambient_rank; ++r) {
          Rat acc(0);
          for (size_t x = 0; x < na; ++x) acc += Rat(g[x]) * f.rays[a.rays[x]][r];
          for (size_t x = 0; x < k; ++x) acc += Rat(g[na + x]) * f.lineality[x][r];
          pt[r] = acc;
        }
        if (!cone_contains(common_rays, f.lineality, pt))
          throw Error(ErrorCode::Internal,
                      "cones " + std::to_string(i) + " and " + std::to_string(j) +
                          " do not intersect in a common face");
      }
    }
  }
}

std::string fan_to_json(const WeightedFan& f, int indent) {
  nlohmann::json j;
  j["ambient_rank"] = f.ambient_rank;
  j["rays"] = f.rays;
  j["lineality"] = f.lineality;
  nlohmann::json cones = nlohmann::json::array();
  for (const auto& c : f.maximal_cones) cones.push_back(c.rays);
  j["maximal_cones"] = std::move(cones);
  j["weights"] = f.weights;
  return j.dump(indent);
}

WeightedFan fan_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad fan JSON: ") + e.what());
  }
  std::vector<Cone> cones;
  for (const auto& c : j.at("maximal_cones")) cones.push_back(Cone{c.get<std::vector<int>>()});
  return make_fan(j.at("ambient_rank").get<int>(), j.at("rays").get<std::vector<VecZ>>(),
                  j.at("lineality").get<MatZ>(), std::move(cones),
                  j.at("weights").get<std::vector<Int>>());
}

}  // namespace tropmod
