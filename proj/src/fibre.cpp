#include "tropmod/fibre.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tropmod/bergman.hpp"

namespace tropmod {

GluedGraph glue_graphs(const Graph& g1, const Graph& shared, const Graph& g2,
                       const std::map<int, int>& map1, const std::map<int, int>& map2) {
  auto check_embedding = [&](const Graph& target, const std::map<int, int>& vmap,
                             std::vector<int>* edge_map) {
    std::set<int> image;
    for (int v : shared.vertices) {
      auto it = vmap.find(v);
      if (it == vmap.end())
        throw Error(ErrorCode::InvalidEmbedding, "vertex map must cover the shared graph");
      if (!target.has_vertex(it->second))
        throw Error(ErrorCode::InvalidEmbedding, "vertex map leaves the target graph");
      if (!image.insert(it->second).second)
        throw Error(ErrorCode::InvalidEmbedding, "vertex map is not injective");
    }
    for (const auto& [u, v] : shared.edges) {
      int idx = target.edge_index(vmap.at(u), vmap.at(v));
      if (idx < 0) throw Error(ErrorCode::InvalidEmbedding, "shared edge missing in target");
      edge_map->push_back(idx);
    }
  };
  GluedGraph out;
  out.g1 = g1;
  out.g2 = g2;
  out.shared = shared;
  out.map1 = map1;
  out.map2 = map2;
  check_embedding(g1, map1, &out.shared_edge_in_g1);
  check_embedding(g2, map2, &out.shared_edge_in_g2);

  // Result labels: g1 as-is; g2 vertices either identified or fresh.
  std::map<int, int> g2_label;  // g2 label -> result label
  for (int v : shared.vertices) g2_label[map2.at(v)] = map1.at(v);
  int next = g1.vertices.empty() ? 0 : g1.vertices.back() + 1;
  for (int v : g2.vertices) {
    if (g2_label.count(v)) continue;
    while (g1.has_vertex(next)) ++next;
    g2_label[v] = next++;
  }
  std::vector<int> verts = g1.vertices;
  for (int v : g2.vertices)
    if (!g1.has_vertex(g2_label.at(v))) verts.push_back(g2_label.at(v));
  out.g2_vertex_in_result.clear();
  for (int v : g2.vertices) out.g2_vertex_in_result.push_back(g2_label.at(v));

  std::set<int> shared_in_g2(out.shared_edge_in_g2.begin(), out.shared_edge_in_g2.end());
  std::vector<std::pair<int, int>> edges = g1.edges;
  out.g1_edge_in_result.resize(g1.num_edges());
  for (int e = 0; e < g1.num_edges(); ++e) out.g1_edge_in_result[e] = e;
  out.g2_edge_in_result.assign(g2.num_edges(), -1);
  for (size_t k = 0; k < out.shared_edge_in_g2.size(); ++k)
    out.g2_edge_in_result[out.shared_edge_in_g2[k]] = out.shared_edge_in_g1[k];
  for (int e = 0; e < g2.num_edges(); ++e) {
    if (out.g2_edge_in_result[e] >= 0) continue;
    out.g2_edge_in_result[e] = static_cast<int>(edges.size());
    edges.emplace_back(g2_label.at(g2.edges[e].first), g2_label.at(g2.edges[e].second));
  }
  out.result = make_graph(std::move(verts), std::move(edges));
  return out;
}

ChordalCertificate chordality(const Graph& g) {
  ChordalCertificate cert;
  int n = g.num_vertices();
  std::vector<std::set<int>> adj(n);
  for (const auto& [u, v] : g.edges) {
    adj[g.vertex_index(u)].insert(g.vertex_index(v));
    adj[g.vertex_index(v)].insert(g.vertex_index(u));
  }
  std::vector<bool> removed(n, false);
  for (int step = 0; step < n; ++step) {
    int found = -1;
    for (int v = 0; v < n && found < 0; ++v) {
      if (removed[v]) continue;
      bool simplicial = true;
      for (int a : adj[v]) {
        if (removed[a]) continue;
        for (int b : adj[v]) {
          if (removed[b] || b <= a) continue;
          if (!adj[a].count(b)) {
            simplicial = false;
            break;
          }
        }
        if (!simplicial) break;
      }
      if (simplicial) found = v;
    }
    if (found < 0) {
      // Stuck: exhibit a chordless cycle of length >= 4.
      GraphicMatroid m = GraphicMatroid::from_graph(g);
      std::vector<EdgeSet> cycles = m.circuits();
      std::sort(cycles.begin(), cycles.end(),
                [](EdgeSet a, EdgeSet b) { return popcount(a) < popcount(b); });
      for (EdgeSet c : cycles) {
        if (popcount(c) < 4) continue;
        // Order the cycle vertices by walking it.
        std::vector<int> cyc;
        std::vector<int> edges = set_to_indices(c);
        int cur = g.edges[edges[0]].first;
        int prev = -1;
        do {
          cyc.push_back(cur);
          for (int e : edges) {
            auto [u, v] = g.edges[e];
            int other = u == cur ? v : (v == cur ? u : -1);
            if (other >= 0 && other != prev) {
              prev = cur;
              cur = other;
              break;
            }
          }
        } while (cur != cyc[0]);
        bool chordless = true;
        for (size_t i = 0; i < cyc.size() && chordless; ++i)
          for (size_t j = i + 1; j < cyc.size(); ++j) {
            bool consecutive = j == i + 1 || (i == 0 && j == cyc.size() - 1);
            if (consecutive) continue;
            if (g.edge_index(cyc[i], cyc[j]) >= 0) {
              chordless = false;
              break;
            }
          }
        if (chordless) {
          cert.chordal = false;
          cert.chordless_cycle = cyc;
          return cert;
        }
      }
      throw Error(ErrorCode::Internal, "no elimination order and no chordless cycle");
    }
    removed[found] = true;
    cert.elimination_order.push_back(g.vertices[found]);
  }
  cert.chordal = true;
  return cert;
}

SplitGraphCertificate split_graph(const Graph& g) {
  int n = g.num_vertices();
  if (n > 20) throw Error(ErrorCode::TooLarge, "split recognition limited to 20 vertices");
  SplitGraphCertificate cert;
  for (EdgeSet clique = 0; clique < (EdgeSet(1) << n); ++clique) {
    bool ok = true;
    for (const auto& [u, v] : g.edges) {
      int iu = g.vertex_index(u), iv = g.vertex_index(v);
      // Both endpoints outside the clique: not an independent set.
      if (!((clique >> iu & 1) || (clique >> iv & 1))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (int a = 0; a < n && ok; ++a) {
      if (!(clique >> a & 1)) continue;
      for (int b = a + 1; b < n; ++b) {
        if (!(clique >> b & 1)) continue;
        if (g.edge_index(g.vertices[a], g.vertices[b]) < 0) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    cert.split = true;
    for (int v = 0; v < n; ++v)
      (clique >> v & 1 ? cert.clique : cert.independent).push_back(g.vertices[v]);
    return cert;
  }
  cert.split = false;
  return cert;
}

std::vector<int> FibreProduct::coordinate_offsets() const {
  std::vector<int> off;
  int acc = 0;
  for (const auto& f : factors) {
    off.push_back(acc);
    acc += f.ambient_rank;
  }
  return off;
}

namespace {

VecQ apply_rows(const MatZ& rows, const VecQ& x) {
  VecQ out(rows.size(), Rat(0));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < x.size(); ++c)
      if (rows[r][c] != 0) out[r] += Rat(rows[r][c]) * x[c];
  return out;
}

}  // namespace

bool FibreProduct::support_contains(const VecQ& p) const {
  auto off = coordinate_offsets();
  VecQ first_image;
  for (size_t j = 0; j < factors.size(); ++j) {
    VecQ block(p.begin() + off[j], p.begin() + off[j] + factors[j].ambient_rank);
    if (!in_support(factors[j], block)) return false;
    VecQ img = apply_rows(projections[j], block);
    if (j == 0)
      first_image = img;
    else if (img != first_image)
      return false;
  }
  return true;
}

FibreProduct multi_fibre_product(std::vector<WeightedFan> factors, std::vector<MatZ> projections,
                                 WeightedFan base) {
  if (factors.empty()) throw Error(ErrorCode::InvalidSubset, "need at least one factor");
  if (projections.size() != factors.size())
    throw Error(ErrorCode::InvalidSubset, "one projection per factor");
  size_t s = factors.size();
  int m0 = base.ambient_rank;
  for (size_t j = 0; j < s; ++j) {
    if (static_cast<int>(projections[j].size()) != m0)
      throw Error(ErrorCode::InvalidSubset, "projection must have base_rank rows");
    for (const auto& row : projections[j])
      if (static_cast<int>(row.size()) != factors[j].ambient_rank)
        throw Error(ErrorCode::InvalidSubset, "projection row length mismatch");
  }

  FibreProduct out;
  out.factors = factors;
  out.projections = projections;
  out.base = base;
  int total_rank = 0;
  out.expected_dim = -(static_cast<int>(s) - 1) * base.dim;
  for (const auto& f : factors) {
    total_rank += f.ambient_rank;
    out.expected_dim += f.dim;
  }

  // Variables per factor: one coefficient per cone ray, then one per
  // lineality generator; matching constraints tie all projections to the
  // first factor's image.
  std::vector<int> lin_counts;
  for (const auto& f : factors) lin_counts.push_back(f.lineality_dim());

  auto build_cell = [&](const std::vector<int>& tuple, std::vector<VecZ>* rays_out,
                        std::vector<VecZ>* lin_out) {
    std::vector<int> var_offset(s), ray_count(s);
    int nvars = 0;
    for (size_t j = 0; j < s; ++j) {
      var_offset[j] = nvars;
      ray_count[j] = static_cast<int>(factors[j].maximal_cones[tuple[j]].rays.size());
      nvars += ray_count[j] + lin_counts[j];
    }
    MatQ eq((s - 1) * m0, VecQ(nvars, Rat(0)));
    for (size_t j = 0; j < s; ++j) {
      const auto& cone = factors[j].maximal_cones[tuple[j]];
      for (int r = 0; r < m0; ++r) {
        for (int x = 0; x < ray_count[j] + lin_counts[j]; ++x) {
          const VecZ& gen = x < ray_count[j] ? factors[j].rays[cone.rays[x]]
                                             : factors[j].lineality[x - ray_count[j]];
          Rat coef(0);
          for (int c = 0; c < factors[j].ambient_rank; ++c)
            if (projections[j][r][c] != 0) coef += Rat(projections[j][r][c]) * gen[c];
          if (coef == Rat(0)) continue;
          // + for the first factor, - for factor j, in rows (j-1)*m0 + r.
          if (j == 0) {
            for (size_t k = 1; k < s; ++k) eq[(k - 1) * m0 + r][var_offset[0] + x] += coef;
          } else {
            eq[(j - 1) * m0 + r][var_offset[j] + x] -= coef;
          }
        }
      }
    }
    std::vector<int> nonneg;
    for (size_t j = 0; j < s; ++j)
      for (int x = 0; x < ray_count[j]; ++x) nonneg.push_back(var_offset[j] + x);
    ConeVRep rep = extreme_rays(eq, nvars, nonneg);
    auto to_ambient = [&](const VecZ& var) {
      VecQ x(total_rank, Rat(0));
      int coord = 0;
      for (size_t j = 0; j < s; ++j) {
        const auto& cone = factors[j].maximal_cones[tuple[j]];
        for (int c = 0; c < factors[j].ambient_rank; ++c) {
          Rat acc(0);
          for (int r = 0; r < ray_count[j]; ++r)
            acc += Rat(var[var_offset[j] + r]) * factors[j].rays[cone.rays[r]][c];
          for (int l = 0; l < lin_counts[j]; ++l)
            acc += Rat(var[var_offset[j] + ray_count[j] + l]) * factors[j].lineality[l][c];
          x[coord++] = acc;
        }
      }
      return q_to_primitive_z(x);
    };
    std::set<VecZ> rays;
    for (const auto& g : rep.rays) {
      VecZ x = to_ambient(g);
      if (!is_zero(x)) rays.insert(x);
    }
    rays_out->assign(rays.begin(), rays.end());
    lin_out->clear();
    for (const auto& g : rep.lineality) {
      VecZ x = to_ambient(g);
      if (!is_zero(x)) lin_out->push_back(x);
    }
  };

  // Global lineality: the matching locus of the factor lineality spaces.
  MatZ global_lineality;
  {
    int nvars = 0;
    std::vector<int> var_offset(s);
    for (size_t j = 0; j < s; ++j) {
      var_offset[j] = nvars;
      nvars += lin_counts[j];
    }
    MatQ eq((s - 1) * m0, VecQ(nvars, Rat(0)));
    for (size_t j = 0; j < s; ++j)
      for (int r = 0; r < m0; ++r)
        for (int l = 0; l < lin_counts[j]; ++l) {
          Rat coef(0);
          for (int c = 0; c < factors[j].ambient_rank; ++c)
            if (projections[j][r][c] != 0)
              coef += Rat(projections[j][r][c]) * factors[j].lineality[l][c];
          if (coef == Rat(0)) continue;
          if (j == 0) {
            for (size_t k = 1; k < s; ++k) eq[(k - 1) * m0 + r][var_offset[0] + l] += coef;
          } else {
            eq[(j - 1) * m0 + r][var_offset[j] + l] -= coef;
          }
        }
    for (const auto& ker : kernel_q(eq, nvars)) {
      VecQ x(total_rank, Rat(0));
      int coord = 0;
      for (size_t j = 0; j < s; ++j)
        for (int c = 0; c < factors[j].ambient_rank; ++c) {
          Rat acc(0);
          for (int l = 0; l < lin_counts[j]; ++l)
            acc += ker[var_offset[j] + l] * factors[j].lineality[l][c];
          x[coord++] = acc;
        }
      VecZ z = q_to_primitive_z(x);
      if (!is_zero(z)) global_lineality.push_back(z);
    }
  }

  // Enumerate cells over tuples of maximal cones.
  struct CellInfo {
    std::vector<VecZ> rays;
    std::vector<int> tuple;
    Int weight = 1;
  };
  std::vector<CellInfo> cells;
  std::set<std::vector<VecZ>> seen;
  std::vector<int> tuple(s, 0);
  bool done = false;
  while (!done) {
    CellInfo info;
    std::vector<VecZ> lin;
    build_cell(tuple, &info.rays, &lin);
    info.tuple = tuple;
    if (static_cast<int>(lin.size()) > rank_z(global_lineality))
      throw Error(ErrorCode::Internal, "cell lineality exceeds the matching locus");
    if (seen.insert(info.rays).second) cells.push_back(std::move(info));
    size_t j = 0;
    while (j < s && ++tuple[j] == static_cast<int>(factors[j].maximal_cones.size()))
      tuple[j++] = 0;
    done = j == s;
  }

  // Keep inclusion-maximal cells only.
  std::vector<bool> drop(cells.size(), false);
  for (size_t i = 0; i < cells.size(); ++i) {
    for (size_t j = 0; j < cells.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      if (cells[i].rays.size() > cells[j].rays.size()) continue;
      if (cells[i].rays == cells[j].rays) continue;
      bool inside = true;
      for (const auto& r : cells[i].rays)
        if (!cone_contains(cells[j].rays, global_lineality, to_q(r))) {
          inside = false;
          break;
        }
      if (inside) drop[i] = true;
    }
  }

  auto cell_dim = [&](const CellInfo& c) {
    MatZ gens = global_lineality;
    for (const auto& r : c.rays) gens.push_back(r);
    return rank_z(gens);
  };

  // Lattice-index weights on cells of the expected dimension.
  auto cell_weight = [&](const CellInfo& c) -> Int {
    Int factor_weight = 1;
    for (size_t j = 0; j < s; ++j) factor_weight *= factors[j].weights[c.tuple[j]];
    if (s == 1) return factor_weight;
    std::vector<MatZ> images(s);
    MatZ stacked;
    bool spans_ok = true;
    for (size_t j = 0; j < s; ++j) {
      MatZ gens;
      const auto& cone = factors[j].maximal_cones[c.tuple[j]];
      for (int r : cone.rays) gens.push_back(factors[j].rays[r]);
      for (const auto& l : factors[j].lineality) gens.push_back(l);
      MatZ lam = saturation_basis(gens, factors[j].ambient_rank);
      for (const auto& g : lam) {
        VecZ img(m0, 0);
        for (int r = 0; r < m0; ++r)
          for (int cc = 0; cc < factors[j].ambient_rank; ++cc) img[r] += projections[j][r][cc] * g[cc];
        images[j].push_back(img);
        stacked.push_back(img);
      }
    }
    int common = rank_z(stacked);
    for (size_t j = 0; j < s; ++j)
      if (rank_z(images[j]) != common) spans_ok = false;
    if (!spans_ok) return factor_weight;
    MatZ tau = saturation_basis(stacked, m0);
    int cols = (static_cast<int>(s) - 1) * m0;
    MatZ lattice, sub;
    for (size_t k = 0; k + 1 < s; ++k)
      for (const auto& b : tau) {
        VecZ row(cols, 0);
        for (int r = 0; r < m0; ++r) row[k * m0 + r] = b[r];
        lattice.push_back(row);
      }
    for (size_t j = 0; j < s; ++j)
      for (const auto& img : images[j]) {
        VecZ row(cols, 0);
        if (j + 1 < s)
          for (int r = 0; r < m0; ++r) row[j * m0 + r] += img[r];
        if (j >= 1)
          for (int r = 0; r < m0; ++r) row[(j - 1) * m0 + r] -= img[r];
        sub.push_back(row);
      }
    Int index = cols == 0 ? 1 : lattice_index(lattice, sub, cols);
    if (index == 0) throw Error(ErrorCode::Internal, "fibre cell lattice has infinite index");
    return factor_weight * index;
  };

  // Assemble the fan with a shared ray pool so cone indices line up.
  std::map<VecZ, int> ray_id;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (drop[i]) continue;
    for (const auto& r : cells[i].rays) ray_id.emplace(r, 0);
  }
  std::vector<VecZ> pool;
  for (auto& [vec, id] : ray_id) {
    id = static_cast<int>(pool.size());
    pool.push_back(vec);
  }
  std::vector<Cone> cones;
  std::vector<Int> weights;
  std::map<std::vector<int>, std::vector<int>> provenance_by_cone;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (drop[i]) continue;
    Cone c;
    for (const auto& r : cells[i].rays) c.rays.push_back(ray_id.at(r));
    std::sort(c.rays.begin(), c.rays.end());
    int d = cell_dim(cells[i]);
    Int w = d == out.expected_dim ? cell_weight(cells[i]) : 1;
    provenance_by_cone.emplace(c.rays, cells[i].tuple);
    cones.push_back(std::move(c));
    weights.push_back(w);
  }
  out.fan = make_fan(total_rank, std::move(pool), std::move(global_lineality), std::move(cones),
                     std::move(weights));
  out.provenance.clear();
  for (const auto& c : out.fan.maximal_cones) out.provenance.push_back(provenance_by_cone.at(c.rays));
  out.dimension_match = out.fan.dim == out.expected_dim;
  return out;
}

FibreProduct set_fibre_product(const WeightedFan& f1, const MatZ& p1, const WeightedFan& f2,
                               const MatZ& p2, const WeightedFan& base) {
  return multi_fibre_product({f1, f2}, {p1, p2}, base);
}

MatZ coordinate_projection(int from_rank, const std::vector<int>& coords) {
  MatZ rows;
  for (int c : coords) {
    VecZ row(from_rank, 0);
    row[c] = 1;
    rows.push_back(row);
  }
  return rows;
}

WeightGraphDecomposition weight_graph_decomposition(const WeightVector& w) {
  WeightGraphDecomposition out;
  out.graphs = weight_graphs(w);
  const Graph& g = out.graphs.reduced;
  for (int v : g.vertices) {
    if (w.entries[v - 1] > Rat(1, 2))
      out.clique_vertices.push_back(v);
    else
      out.small_vertices.push_back(v);
  }
  // K(w): restriction to the clique vertices; must be complete.
  EdgeSet clique_edges = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edges[e];
    bool cu = std::binary_search(out.clique_vertices.begin(), out.clique_vertices.end(), u);
    bool cv = std::binary_search(out.clique_vertices.begin(), out.clique_vertices.end(), v);
    if (cu && cv) clique_edges |= EdgeSet(1) << e;
  }
  out.clique_graph = make_graph(out.clique_vertices, [&] {
    std::vector<std::pair<int, int>> es;
    for (int e : set_to_indices(clique_edges)) es.push_back(g.edges[e]);
    return es;
  }());
  size_t expect = out.clique_vertices.size() * (out.clique_vertices.size() - 1) / 2;
  if (out.clique_graph.edges.size() != expect)
    throw Error(ErrorCode::Internal, "vertices of weight > 1/2 do not form a clique");

  for (int i : out.small_vertices) {
    std::vector<int> verts = out.clique_vertices;
    verts.push_back(i);
    std::sort(verts.begin(), verts.end());
    std::vector<std::pair<int, int>> es;
    int degree = 0;
    for (const auto& [u, v] : g.edges) {
      bool ku = std::binary_search(verts.begin(), verts.end(), u);
      bool kv = std::binary_search(verts.begin(), verts.end(), v);
      if (ku && kv) es.emplace_back(u, v);
      if (u == i || v == i) ++degree;
    }
    out.factors.emplace_back(i, make_graph(verts, std::move(es)));
    if (degree == 1) out.degree_one.push_back(i);
  }
  // Gluing the factors along K(w) must return the reduced graph.
  std::set<std::pair<int, int>> covered(out.clique_graph.edges.begin(),
                                        out.clique_graph.edges.end());
  for (const auto& [i, gi] : out.factors)
    for (const auto& e : gi.edges) covered.insert(e);
  std::set<std::pair<int, int>> reduced_edges(g.edges.begin(), g.edges.end());
  if (covered != reduced_edges)
    throw Error(ErrorCode::Internal, "decomposition does not recover the weight graph");
  return out;
}

namespace {

// Keeps the listed leaves (old labels, in the given order defining the new
// labels 1..k) and drops the others, contracting the freed edges.
TreeType forget_tree_type(const TreeType& t, const std::vector<int>& kept_order) {
  int k = static_cast<int>(kept_order.size());
  std::map<int, int> relabel;
  for (int i = 0; i < k; ++i) relabel[kept_order[i]] = i + 1;
  std::vector<LeafSet> splits;
  for (LeafSet s : t.splits) {
    LeafSet ns = 0;
    for (int leaf : leaf_list(s)) {
      auto it = relabel.find(leaf);
      if (it != relabel.end()) ns |= LeafSet(1) << (it->second - 1);
    }
    int size = popcount(ns);
    if (size < 2 || size > k - 2) continue;
    splits.push_back(ns);
  }
  return make_tree_type(k, std::move(splits));
}

struct RngSampler {
  std::mt19937_64 rng;
  explicit RngSampler(uint64_t seed) : rng(seed) {}
  Rat positive(int hi = 8, int maxden = 4) {
    std::uniform_int_distribution<Int> num(1, hi), den(1, maxden);
    return Rat(num(rng), den(rng));
  }
  Rat any(int hi = 8, int maxden = 4) {
    std::uniform_int_distribution<Int> num(-hi, hi), den(1, maxden);
    return Rat(num(rng), den(rng));
  }
};

VecQ random_interior_point(const WeightedFan& f, const Cone& c, RngSampler& rng) {
  VecQ p(f.ambient_rank, Rat(0));
  for (int r : c.rays) {
    Rat coef = rng.positive();
    for (int i = 0; i < f.ambient_rank; ++i) p[i] += coef * f.rays[r][i];
  }
  for (const auto& l : f.lineality) {
    Rat coef = rng.any();
    for (int i = 0; i < f.ambient_rank; ++i) p[i] += coef * l[i];
  }
  return p;
}

}  // namespace

std::string FibreTheoremReport::to_json(int indent) const {
  nlohmann::json j;
  j["ok"] = ok;
  j["seed"] = seed;
  j["product_cells"] = product_cells;
  j["nested_cones"] = nested_cones;
  j["cones_per_cell"] = cones_per_cell;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  return j.dump(indent);
}

FibreTheoremReport verify_fibre_theorem(const WeightVector& w, uint64_t seed,
                                        int samples_per_cone) {
  FibreTheoremReport report;
  report.seed = seed;
  RngSampler rng(seed);
  auto cls = classify_weights(w);
  if (cls.heavy_count < 2)
    throw Error(ErrorCode::FewerThanTwoHeavy, "fibre decomposition needs two heavy entries");
  auto dec = weight_graph_decomposition(w);
  const Graph& reduced = dec.graphs.reduced;
  GraphicMatroid glued_m = GraphicMatroid::from_graph(reduced);
  MembershipOracle glued_oracle(glued_m);

  auto add_check = [&](const std::string& name, bool pass, const std::string& detail = "") {
    report.checks.push_back({name, pass, detail});
  };

  add_check("reduced_graph_is_split", split_graph(reduced).split);
  add_check("reduced_graph_is_chordal", chordality(reduced).chordal);

  // Factor fans (nested structure) and the common base.
  std::vector<WeightedFan> factor_fans;
  std::vector<MatZ> projections;
  std::vector<Graph> factor_graphs;
  if (dec.factors.empty()) {
    factor_graphs.push_back(dec.clique_graph);
  } else {
    for (const auto& [i, gi] : dec.factors) factor_graphs.push_back(gi);
  }
  for (const Graph& gi : factor_graphs) {
    GraphicMatroid mi = GraphicMatroid::from_graph(gi);
    factor_fans.push_back(nested_set_fan(mi, one_connected_building_set(mi)));
    std::vector<int> coords;
    for (const auto& [u, v] : dec.clique_graph.edges) {
      int idx = gi.edge_index(u, v);
      if (idx < 0) throw Error(ErrorCode::Internal, "clique edge missing from factor");
      coords.push_back(idx);
    }
    projections.push_back(coordinate_projection(mi.ground_size(), coords));
  }
  GraphicMatroid clique_m = GraphicMatroid::from_graph(dec.clique_graph);
  WeightedFan base = chains_of_flats_fan(clique_m);

  FibreProduct fp = multi_fibre_product(factor_fans, projections, base);
  report.product_cells = static_cast<int>(fp.fan.maximal_cones.size());

  WeightedFan glued_fan = nested_set_fan(glued_m, one_connected_building_set(glued_m));
  report.nested_cones = static_cast<int>(glued_fan.maximal_cones.size());

  add_check("expected_dimension",
            fp.expected_dim == glued_m.rank() && fp.dimension_match,
            "expected " + std::to_string(fp.expected_dim) + ", fibre " +
                std::to_string(fp.fan.dim) + ", reduced graph rank " +
                std::to_string(glued_m.rank()));

  bool weights_one = true;
  for (Int wt : fp.fan.weights)
    if (wt != 1) weights_one = false;
  add_check("weights_all_one", weights_one);

  // Coordinate translations between the glued space and the product space.
  auto off = fp.coordinate_offsets();
  auto glued_to_product = [&](const VecQ& x) {
    VecQ p(fp.fan.ambient_rank, Rat(0));
    for (size_t j = 0; j < factor_graphs.size(); ++j)
      for (int e = 0; e < factor_graphs[j].num_edges(); ++e) {
        int idx = reduced.edge_index(factor_graphs[j].edges[e].first,
                                     factor_graphs[j].edges[e].second);
        p[off[j] + e] = x[idx];
      }
    return p;
  };
  auto product_to_glued = [&](const VecQ& p) {
    VecQ x(reduced.num_edges(), Rat(0));
    for (int e = 0; e < reduced.num_edges(); ++e) {
      for (size_t j = 0; j < factor_graphs.size(); ++j) {
        int idx = factor_graphs[j].edge_index(reduced.edges[e].first, reduced.edges[e].second);
        if (idx >= 0) {
          x[e] = p[off[j] + idx];
          break;
        }
      }
    }
    return x;
  };

  // Exact direction: every nested cone embeds into exactly one cell.
  std::vector<int> cell_of_cone(glued_fan.maximal_cones.size(), -1);
  std::vector<int> per_cell(fp.fan.maximal_cones.size(), 0);
  bool glued_in_fibre = true;
  for (size_t ci = 0; ci < glued_fan.maximal_cones.size(); ++ci) {
    const Cone& c = glued_fan.maximal_cones[ci];
    int found = -1;
    for (size_t cell = 0; cell < fp.fan.maximal_cones.size(); ++cell) {
      std::vector<VecZ> cell_rays;
      for (int r : fp.fan.maximal_cones[cell].rays) cell_rays.push_back(fp.fan.rays[r]);
      bool inside = true;
      for (int r : c.rays) {
        if (!cone_contains(cell_rays, fp.fan.lineality, glued_to_product(to_q(glued_fan.rays[r])))) {
          inside = false;
          break;
        }
      }
      if (inside && !cone_contains(cell_rays, fp.fan.lineality,
                                   glued_to_product(to_q(barycenter(glued_fan, c)))))
        inside = false;
      if (inside) {
        if (found >= 0) {
          glued_in_fibre = false;  // interior in two cells: not a refinement
          break;
        }
        found = static_cast<int>(cell);
      }
    }
    if (found < 0) glued_in_fibre = false;
    cell_of_cone[ci] = found;
    if (found >= 0) ++per_cell[found];
  }
  add_check("nested_cones_inside_unique_cells", glued_in_fibre);
  report.cones_per_cell = per_cell;

  // Sampled direction: cell points land in the Bergman fan of the glued
  // graph (rays, barycenters, and random interior points; exact arithmetic).
  bool fibre_in_glued = true;
  for (size_t cell = 0; cell < fp.fan.maximal_cones.size() && fibre_in_glued; ++cell) {
    const Cone& c = fp.fan.maximal_cones[cell];
    std::vector<VecQ> points;
    for (int r : c.rays) points.push_back(to_q(fp.fan.rays[r]));
    points.push_back(to_q(barycenter(fp.fan, c)));
    for (int k = 0; k < samples_per_cone; ++k)
      points.push_back(random_interior_point(fp.fan, c, rng));
    for (const auto& p : points) {
      if (!glued_oracle.contains(product_to_glued(p), MembershipMethod::Circuits)) {
        fibre_in_glued = false;
        break;
      }
    }
  }
  add_check("fibre_points_in_glued_bergman", fibre_in_glued);

  // And glued points land in the set-theoretic fibre product.
  bool glued_in_fibre_sampled = true;
  for (size_t ci = 0; ci < glued_fan.maximal_cones.size() && glued_in_fibre_sampled; ++ci) {
    for (int k = 0; k < samples_per_cone; ++k) {
      VecQ p = random_interior_point(glued_fan, glued_fan.maximal_cones[ci], rng);
      if (!fp.support_contains(glued_to_product(p))) {
        glued_in_fibre_sampled = false;
        break;
      }
    }
  }
  add_check("glued_points_in_fibre_support", glued_in_fibre_sampled);

  int total = 0;
  for (int c : per_cell) total += c;
  add_check("refinement_counts_cover",
            total == report.nested_cones && report.nested_cones > 0,
            std::to_string(total) + " cones over " + std::to_string(report.product_cells) +
                " cells");

  // Refinement factorials: a cell splits into one cone per ordering of the
  // light leaves sharing a position on the base curve.
  if (cls.heavy_light && !dec.factors.empty()) {
    auto trivalent = enumerate_tree_types(w.n(), true);
    std::vector<TreeType> stable;
    for (const auto& t : trivalent)
      if (is_w_stable(t, w)) stable.push_back(t);
    bool bijection_ok = stable.size() == glued_fan.maximal_cones.size();
    // Match each stable type to its nested cone through the projection.
    ProjectionMap pm = projection(w);
    std::map<std::vector<int>, int> cone_id;
    for (size_t i = 0; i < glued_fan.maximal_cones.size(); ++i)
      cone_id[glued_fan.maximal_cones[i].rays] = static_cast<int>(i);
    std::map<VecZ, int> ray_id;
    for (size_t i = 0; i < glued_fan.rays.size(); ++i)
      ray_id[glued_fan.rays[i]] = static_cast<int>(i);
    std::vector<std::vector<const TreeType*>> types_in_cell(fp.fan.maximal_cones.size());
    for (const auto& t : stable) {
      std::vector<int> cone;
      bool ok = true;
      for (LeafSet s : t.splits) {
        // Full-coordinate ray of the projected flat.
        LeafSet side = s;
        if (side >> (pm.deleted_vertex - 1) & 1) side = full_leaf_set(w.n()) & ~side;
        EdgeSet fl = 0;
        for (int e = 0; e < reduced.num_edges(); ++e) {
          auto [u, v] = reduced.edges[e];
          if ((side >> (u - 1) & 1) && (side >> (v - 1) & 1)) fl |= EdgeSet(1) << e;
        }
        if (fl == 0) {
          ok = false;
          break;
        }
        auto it = ray_id.find(flat_ray(glued_m, fl));
        if (it == ray_id.end()) {
          ok = false;
          break;
        }
        cone.push_back(it->second);
      }
      if (!ok) {
        bijection_ok = false;
        continue;
      }
      std::sort(cone.begin(), cone.end());
      cone.erase(std::unique(cone.begin(), cone.end()), cone.end());
      auto it = cone_id.find(cone);
      if (it == cone_id.end() || cell_of_cone[it->second] < 0) {
        bijection_ok = false;
        continue;
      }
      types_in_cell[cell_of_cone[it->second]].push_back(&t);
    }
    bool factorials_ok = bijection_ok;
    std::vector<int> lights = cls.small_indices;  // 0-based
    for (size_t cell = 0; cell < types_in_cell.size() && factorials_ok; ++cell) {
      if (types_in_cell[cell].empty()) {
        factorials_ok = false;
        break;
      }
      const TreeType& t = *types_in_cell[cell][0];
      // Group lights by their position relative to the heavy skeleton.
      std::vector<int> heavy_order;
      for (int i = 0; i < w.n(); ++i)
        if (std::find(lights.begin(), lights.end(), i) == lights.end())
          heavy_order.push_back(i + 1);
      std::map<TreeType, int> groups;
      for (int li : lights) {
        std::vector<int> kept = heavy_order;
        kept.push_back(li + 1);
        groups[forget_tree_type(t, kept)]++;
      }
      long long expected = 1;
      for (const auto& [pos, r] : groups)
        for (int k = 2; k <= r; ++k) expected *= k;
      if (expected != static_cast<long long>(types_in_cell[cell].size())) factorials_ok = false;
    }
    add_check("losev_manin_refinement_factors", factorials_ok,
              "stable types " + std::to_string(stable.size()));
  }

  report.ok = true;
  for (const auto& c : report.checks)
    if (!c.pass) report.ok = false;
  return report;
}

}  // namespace tropmod
