#include "tropmod/moduli.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tropmod {

LeafSet full_leaf_set(int n) { return (LeafSet(1) << n) - 1; }

std::vector<int> leaf_list(LeafSet s) {
  std::vector<int> out;
  for (int i = 0; s >> i; ++i)
    if (s >> i & 1) out.push_back(i + 1);
  return out;
}

LeafSet leaf_mask(const std::vector<int>& leaves) {
  LeafSet s = 0;
  for (int l : leaves) s |= LeafSet(1) << (l - 1);
  return s;
}

LeafSet canonical_split(LeafSet side, int n) {
  if (side & 1) side = full_leaf_set(n) & ~side;
  return side;
}

bool splits_compatible(LeafSet a, LeafSet b) {
  return (a & b) == 0 || (a & b) == a || (a & b) == b;
}

bool split_less(LeafSet a, LeafSet b) {
  int pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  while (a && b) {
    int la = __builtin_ctz(a), lb = __builtin_ctz(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

bool TreeType::operator<(const TreeType& o) const {
  if (n != o.n) return n < o.n;
  return std::lexicographical_compare(splits.begin(), splits.end(), o.splits.begin(),
                                      o.splits.end(), split_less);
}

TreeType make_tree_type(int n, std::vector<LeafSet> splits) {
  if (n < 4) throw Error(ErrorCode::InvalidSubset, "tree types need n >= 4");
  TreeType t;
  t.n = n;
  for (LeafSet s : splits) {
    LeafSet c = canonical_split(s, n);
    int size = popcount(c);
    if (size < 2 || size > n - 2)
      throw Error(ErrorCode::InvalidSubset, "split side size out of range");
    t.splits.push_back(c);
  }
  std::sort(t.splits.begin(), t.splits.end(), split_less);
  t.splits.erase(std::unique(t.splits.begin(), t.splits.end()), t.splits.end());
  for (size_t i = 0; i < t.splits.size(); ++i)
    for (size_t j = i + 1; j < t.splits.size(); ++j)
      if (!splits_compatible(t.splits[i], t.splits[j]))
        throw Error(ErrorCode::InvalidSubset, "incompatible splits");
  if (static_cast<int>(t.splits.size()) > n - 3)
    throw Error(ErrorCode::InvalidSubset, "too many splits");
  return t;
}

std::string tree_type_to_json(const TreeType& t) {
  nlohmann::json j = nlohmann::json::array();
  for (LeafSet s : t.splits) j.push_back(leaf_list(s));
  return j.dump();
}

namespace {

// Children of each split (and of the root) in the laminar family.
struct TreeStructure {
  std::vector<int> parent;                 // -1 = root
  std::vector<std::vector<int>> children;  // per split
  std::vector<int> root_children;
};

TreeStructure tree_structure(const TreeType& t) {
  int k = static_cast<int>(t.splits.size());
  TreeStructure ts;
  ts.parent.assign(k, -1);
  ts.children.assign(k, {});
  for (int i = 0; i < k; ++i) {
    int best = -1;
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      if ((t.splits[i] & t.splits[j]) != t.splits[i]) continue;  // need splits[i] subset
      if (t.splits[i] == t.splits[j]) continue;
      if (best < 0 || (t.splits[j] & t.splits[best]) == t.splits[j]) best = j;
    }
    ts.parent[i] = best;
  }
  for (int i = 0; i < k; ++i) {
    if (ts.parent[i] >= 0)
      ts.children[ts.parent[i]].push_back(i);
    else
      ts.root_children.push_back(i);
  }
  return ts;
}

}  // namespace

std::vector<TreeVertex> tree_vertices(const TreeType& t) {
  TreeStructure ts = tree_structure(t);
  int k = static_cast<int>(t.splits.size());
  std::vector<TreeVertex> verts;
  LeafSet root_leaves = full_leaf_set(t.n);
  for (int i = 0; i < k; ++i) {
    TreeVertex v;
    v.leaves = t.splits[i];
    for (int c : ts.children[i]) v.leaves &= ~t.splits[c];
    v.edges = 1 + static_cast<int>(ts.children[i].size());
    verts.push_back(v);
  }
  for (int i : ts.root_children) root_leaves &= ~t.splits[i];
  TreeVertex root;
  root.leaves = root_leaves;
  root.edges = static_cast<int>(ts.root_children.size());
  verts.push_back(root);
  return verts;
}

std::string tree_type_dot(const TreeType& t, const std::string& name) {
  TreeStructure ts = tree_structure(t);
  std::ostringstream os;
  os << "graph " << name << " {\n";
  auto vname = [&](int i) { return i < 0 ? std::string("v_root") : "v" + std::to_string(i); };
  for (size_t i = 0; i < t.splits.size(); ++i)
    os << "  " << vname(static_cast<int>(i)) << " -- " << vname(ts.parent[i]) << ";\n";
  auto verts = tree_vertices(t);
  for (size_t i = 0; i < verts.size(); ++i) {
    int host = i < t.splits.size() ? static_cast<int>(i) : -1;
    for (int leaf : leaf_list(verts[i].leaves))
      os << "  leaf" << leaf << " [label=\"" << leaf << "\", shape=plaintext];\n  leaf" << leaf
         << " -- " << vname(host) << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::vector<TreeType> enumerate_tree_types(int n, bool only_trivalent) {
  if (n < 4 || n > 8) throw Error(ErrorCode::TooLarge, "tree type enumeration needs 4 <= n <= 8");
  std::vector<LeafSet> all_splits;
  for (LeafSet s = 0; s <= full_leaf_set(n); ++s) {
    if (s & 1) continue;
    int size = popcount(s);
    if (size < 2 || size > n - 2) continue;
    all_splits.push_back(s);
  }
  std::sort(all_splits.begin(), all_splits.end(), split_less);
  std::vector<TreeType> out;
  std::vector<LeafSet> current;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (!only_trivalent || static_cast<int>(current.size()) == n - 3) {
      TreeType t;
      t.n = n;
      t.splits = current;
      std::sort(t.splits.begin(), t.splits.end(), split_less);
      out.push_back(std::move(t));
    }
    if (static_cast<int>(current.size()) == n - 3) return;
    for (size_t i = start; i < all_splits.size(); ++i) {
      bool ok = true;
      for (LeafSet s : current)
        if (!splits_compatible(s, all_splits[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      current.push_back(all_splits[i]);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

WeightVector make_weight_vector(VecQ entries) {
  if (entries.size() < 4) throw Error(ErrorCode::InvalidSubset, "weight vectors need n >= 4");
  Rat total(0);
  for (const Rat& w : entries) {
    if (w <= Rat(0) || w > Rat(1))
      throw Error(ErrorCode::InvalidSubset, "weights must satisfy 0 < w_i <= 1");
    total += w;
  }
  if (total <= Rat(2)) throw Error(ErrorCode::InvalidSubset, "weights must sum to more than 2");
  return WeightVector{std::move(entries)};
}

WeightVector parse_weight_vector(const std::string& csv) {
  return make_weight_vector(parse_rational_list(csv));
}

bool ChamberSignature::contains_set(LeafSet s) const {
  return std::binary_search(family.begin(), family.end(), s);
}

std::vector<LeafSet> ChamberSignature::maximal_members() const {
  std::vector<LeafSet> out;
  for (LeafSet s : family) {
    bool maximal = true;
    for (LeafSet t : family)
      if (t != s && (s & t) == s) maximal = false;
    if (maximal) out.push_back(s);
  }
  return out;
}

bool ChamberSignature::operator<(const ChamberSignature& o) const {
  if (n != o.n) return n < o.n;
  return family < o.family;
}

ChamberSignature chamber_signature(const WeightVector& w) {
  ChamberSignature sig;
  sig.n = w.n();
  for (LeafSet s = 1; s <= full_leaf_set(w.n()); ++s) {
    Rat sum(0);
    for (int i = 0; i < w.n(); ++i)
      if (s >> i & 1) sum += w.entries[i];
    if (sum <= Rat(1)) sig.family.push_back(s);
  }
  return sig;
}

WeightClassification classify_weights(const WeightVector& w) {
  int n = w.n();
  WeightClassification cls;
  cls.signature = chamber_signature(w);
  std::vector<bool> heavy(n), small(n);
  for (int i = 0; i < n; ++i) {
    heavy[i] = true;
    for (int j = 0; j < n; ++j)
      if (j != i && w.entries[i] + w.entries[j] <= Rat(1)) heavy[i] = false;
  }
  for (int i = 0; i < n; ++i) {
    small[i] = true;
    for (int j = 0; j < n; ++j)
      if (j != i && w.entries[i] + w.entries[j] > Rat(1) && !heavy[j]) small[i] = false;
  }
  cls.classes.resize(n);
  cls.small_total = Rat(0);
  bool all_heavy_or_small = true;
  for (int i = 0; i < n; ++i) {
    if (heavy[i]) {
      cls.classes[i] = WeightClass::Heavy;
      ++cls.heavy_count;
    } else if (small[i]) {
      cls.classes[i] = WeightClass::Small;
      cls.small_indices.push_back(i);
      cls.small_total += w.entries[i];
    } else {
      cls.classes[i] = WeightClass::Neither;
      all_heavy_or_small = false;
    }
  }
  cls.heavy_light = all_heavy_or_small && cls.small_total <= Rat(1);
  if (cls.heavy_light) {
    int f = cls.heavy_count, t = n - f;
    VecQ rep;
    for (int i = 0; i < f; ++i) rep.push_back(Rat(1));
    for (int i = 0; i < t; ++i) rep.push_back(Rat(1, 2 * t));
    cls.canonical_representative = make_weight_vector(std::move(rep));
  }
  return cls;
}

Graph total_weight_graph(const WeightVector& w) {
  std::vector<int> verts;
  for (int i = 1; i <= w.n(); ++i) verts.push_back(i);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < w.n(); ++i)
    for (int j = i + 1; j < w.n(); ++j)
      if (w.entries[i] + w.entries[j] > Rat(1)) edges.emplace_back(i + 1, j + 1);
  return make_graph(std::move(verts), std::move(edges));
}

WeightGraphs weight_graphs(const WeightVector& w) {
  WeightGraphs out;
  out.total = total_weight_graph(w);
  auto cls = classify_weights(w);
  if (cls.heavy_count == 0)
    throw Error(ErrorCode::NoHeavyVertex, "reduced weight graph needs a heavy entry");
  int best = 0;
  for (int i = 1; i < w.n(); ++i)
    if (w.entries[i] > w.entries[best]) best = i;
  out.deleted_vertex = best + 1;
  std::vector<int> verts;
  std::vector<std::pair<int, int>> edges;
  for (int v : out.total.vertices)
    if (v != out.deleted_vertex) verts.push_back(v);
  for (const auto& [u, v] : out.total.edges)
    if (u != out.deleted_vertex && v != out.deleted_vertex) edges.emplace_back(u, v);
  out.reduced = make_graph(std::move(verts), std::move(edges));
  return out;
}

bool is_w_stable(const TreeType& t, const WeightVector& w) {
  for (const TreeVertex& v : tree_vertices(t)) {
    Rat sum(0);
    for (int leaf : leaf_list(v.leaves)) sum += w.entries[leaf - 1];
    if (sum + v.edges <= Rat(2)) return false;
  }
  return true;
}

bool is_w_stable(const TreeType& t, const ChamberSignature& sig) {
  for (const TreeVertex& v : tree_vertices(t)) {
    if (v.edges >= 2) continue;
    if (v.edges == 0) return true;  // star type; sum w > 2 by invariant
    if (sig.contains_set(v.leaves)) return false;
  }
  return true;
}

std::vector<LeafSet> distance_basis(int n) {
  std::vector<LeafSet> basis;
  LeafSet excluded = leaf_mask({2, 3});
  for (int i = 2; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      LeafSet s = leaf_mask({i, j});
      if (s != excluded) basis.push_back(s);
    }
  std::sort(basis.begin(), basis.end(), split_less);
  return basis;
}

VecQ distance_vector(const MetricTree& t) {
  int n = t.type.n;
  if (t.lengths.size() != t.type.splits.size())
    throw Error(ErrorCode::InvalidSubset, "one length per split");
  for (const Rat& l : t.lengths)
    if (l <= Rat(0)) throw Error(ErrorCode::InvalidSubset, "edge lengths must be positive");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
  auto separates = [](LeafSet side, int i, int j) {
    return ((side >> (i - 1)) & 1) != ((side >> (j - 1)) & 1);
  };
  VecQ dist(pairs.size(), Rat(0));
  for (size_t p = 0; p < pairs.size(); ++p)
    for (size_t s = 0; s < t.type.splits.size(); ++s)
      if (separates(t.type.splits[s], pairs[p].first, pairs[p].second))
        dist[p] += t.lengths[s];
  // Express modulo Phi(R^n) in the v_S basis.
  auto basis = distance_basis(n);
  std::vector<VecQ> cols;
  for (LeafSet s : basis) {
    VecQ col(pairs.size());
    for (size_t p = 0; p < pairs.size(); ++p)
      col[p] = separates(s, pairs[p].first, pairs[p].second) ? Rat(1) : Rat(0);
    cols.push_back(std::move(col));
  }
  for (int k = 1; k <= n; ++k) {
    VecQ col(pairs.size());
    for (size_t p = 0; p < pairs.size(); ++p)
      col[p] = Rat((pairs[p].first == k) + (pairs[p].second == k));
    cols.push_back(std::move(col));
  }
  bool unique = false;
  auto sol = solve_columns(cols, dist, &unique);
  if (!sol || !unique) throw Error(ErrorCode::Internal, "distance basis is degenerate");
  return VecQ(sol->begin(), sol->begin() + basis.size());
}

VecQ split_distance_coords(int n, LeafSet split) {
  MetricTree t;
  t.type = make_tree_type(n, {split});
  t.lengths = {Rat(1)};
  return distance_vector(t);
}

EdgeSet flat_of_split(int /*n*/, const GraphicMatroid& complete, LeafSet split) {
  EdgeSet f = 0;
  const Graph& g = complete.graph();
  for (int e = 0; e < g.num_edges(); ++e) {
    int u = g.edges[e].first, v = g.edges[e].second;
    if ((split >> (u - 1) & 1) && (split >> (v - 1) & 1)) f |= EdgeSet(1) << e;
  }
  return f;
}

TreeType tree_type_of_flat(int n, const GraphicMatroid& complete, EdgeSet flat) {
  Flat f = complete.make_flat(flat);
  std::vector<LeafSet> splits;
  for (const auto& block : f.blocks) {
    if (block.size() < 2) continue;
    splits.push_back(leaf_mask(block));
  }
  return make_tree_type(n, std::move(splits));
}

M0nFan m0n_fan(int n) {
  if (n < 4 || n > 8) throw Error(ErrorCode::TooLarge, "moduli fan needs 4 <= n <= 8");
  std::vector<int> labels;
  for (int i = 2; i <= n; ++i) labels.push_back(i);
  GraphicMatroid km = GraphicMatroid::from_graph(complete_graph(labels));

  std::vector<LeafSet> splits;
  for (LeafSet s = 0; s <= full_leaf_set(n); ++s) {
    if (s & 1) continue;
    int size = popcount(s);
    if (size < 2 || size > n - 2) continue;
    splits.push_back(s);
  }
  std::map<LeafSet, VecZ> ray_vec;
  std::vector<VecZ> rays;
  std::map<LeafSet, int> tmp_index;
  for (LeafSet s : splits) {
    VecZ v = quotient_vector(flat_ray(km, flat_of_split(n, km, s)));
    ray_vec[s] = v;
    tmp_index[s] = static_cast<int>(rays.size());
    rays.push_back(std::move(v));
  }
  auto types = enumerate_tree_types(n, true);
  std::vector<Cone> cones;
  for (const TreeType& t : types) {
    Cone c;
    for (LeafSet s : t.splits) c.rays.push_back(tmp_index.at(s));
    std::sort(c.rays.begin(), c.rays.end());
    cones.push_back(std::move(c));
  }
  M0nFan out;
  out.fan = make_fan(km.ground_size() - 1, std::move(rays), {}, std::move(cones),
                     std::vector<Int>(types.size(), 1));
  // Recover the split/type maps against the canonicalized fan.
  std::map<VecZ, int> ray_id;
  for (size_t i = 0; i < out.fan.rays.size(); ++i) ray_id[out.fan.rays[i]] = static_cast<int>(i);
  out.split_of_ray.resize(out.fan.rays.size());
  for (LeafSet s : splits) {
    int idx = ray_id.at(ray_vec[s]);
    out.ray_of_split[s] = idx;
    out.split_of_ray[idx] = s;
  }
  std::map<std::vector<int>, int> cone_id;
  for (size_t i = 0; i < out.fan.maximal_cones.size(); ++i)
    cone_id[out.fan.maximal_cones[i].rays] = static_cast<int>(i);
  out.type_of_cone.resize(out.fan.maximal_cones.size());
  for (const TreeType& t : types) {
    std::vector<int> c;
    for (LeafSet s : t.splits) c.push_back(out.ray_of_split.at(s));
    std::sort(c.begin(), c.end());
    out.type_of_cone[cone_id.at(c)] = t;
  }
  return out;
}

ProjectionMap projection(const WeightVector& w) {
  WeightGraphs wg = weight_graphs(w);
  ProjectionMap pm;
  pm.n = w.n();
  pm.deleted_vertex = wg.deleted_vertex;
  std::vector<int> labels;
  for (int i = 1; i <= w.n(); ++i)
    if (i != wg.deleted_vertex) labels.push_back(i);
  pm.complete = complete_graph(labels);
  pm.reduced = wg.reduced;
  pm.reduced_matroid = GraphicMatroid::from_graph(pm.reduced);
  return pm;
}

VecZ ProjectionMap::ray_image_of_split(LeafSet split) const {
  LeafSet side = split;
  if (side >> (deleted_vertex - 1) & 1) side = full_leaf_set(n) & ~side;
  EdgeSet f = 0;
  for (int e = 0; e < reduced.num_edges(); ++e) {
    int u = reduced.edges[e].first, v = reduced.edges[e].second;
    if ((side >> (u - 1) & 1) && (side >> (v - 1) & 1)) f |= EdgeSet(1) << e;
  }
  if (reduced.num_edges() <= 1) return VecZ(std::max(reduced.num_edges() - 1, 0), 0);
  return quotient_vector(flat_ray(reduced_matroid, f));
}

VecQ ProjectionMap::apply_point(const VecQ& x) const {
  if (static_cast<int>(x.size()) != complete.num_edges() - 1)
    throw Error(ErrorCode::InvalidSubset, "point has wrong ambient rank");
  VecQ lifted(complete.num_edges(), Rat(0));
  for (size_t i = 0; i + 1 < lifted.size(); ++i) lifted[i + 1] = x[i];
  VecQ selected(reduced.num_edges(), Rat(0));
  for (int e = 0; e < reduced.num_edges(); ++e) {
    int idx = complete.edge_index(reduced.edges[e].first, reduced.edges[e].second);
    selected[e] = lifted[idx];
  }
  if (selected.empty()) return {};
  return quotient_vector_q(selected);
}

std::vector<VecZ> ProjectionMap::cone_image(const TreeType& t) const {
  std::set<VecZ> imgs;
  for (LeafSet s : t.splits) {
    VecZ v = ray_image_of_split(s);
    if (!is_zero(v)) imgs.insert(v);
  }
  return std::vector<VecZ>(imgs.begin(), imgs.end());
}

bool ProjectionMap::injective_on(const TreeType& t) const {
  std::set<VecZ> imgs;
  for (LeafSet s : t.splits) {
    VecZ v = ray_image_of_split(s);
    if (is_zero(v)) return false;
    if (!imgs.insert(v).second) return false;
  }
  return true;
}

InheritedUnstable inherited_unstable(const WeightVector& w) {
  int n = w.n();
  InheritedUnstable out;
  out.trivalent = enumerate_tree_types(n, true);
  int count = static_cast<int>(out.trivalent.size());
  out.layer.assign(count, -1);

  // Codimension-one faces: remove one split; the three adjacent trivalent
  // types share the remaining splits.
  std::map<std::vector<LeafSet>, std::vector<int>> facets;
  for (int i = 0; i < count; ++i) {
    const auto& splits = out.trivalent[i].splits;
    for (size_t drop = 0; drop < splits.size(); ++drop) {
      std::vector<LeafSet> facet;
      for (size_t j = 0; j < splits.size(); ++j)
        if (j != drop) facet.push_back(splits[j]);
      facets[facet].push_back(i);
    }
  }
  for (int i = 0; i < count; ++i)
    if (!is_w_stable(out.trivalent[i], w)) out.layer[i] = 0;
  for (int round = 0;; ++round) {
    std::vector<int> additions;
    for (const auto& [facet, adj] : facets) {
      for (int i : adj) {
        if (out.layer[i] >= 0) continue;
        bool all_unstable = true;
        for (int j : adj)
          if (j != i && (out.layer[j] < 0 || out.layer[j] > round)) all_unstable = false;
        if (all_unstable) additions.push_back(i);
      }
    }
    bool changed = false;
    for (int i : additions)
      if (out.layer[i] < 0) {
        out.layer[i] = round + 1;
        changed = true;
      }
    if (!changed) break;
  }
  for (int i = 0; i < count; ++i)
    if (out.layer[i] >= 0) out.members.push_back(i);
  return out;
}

std::string Obstruction::to_json(int indent) const {
  nlohmann::json j;
  j["kind"] = kind == Kind::UnivalentFace ? "univalent_face" : "non_pure";
  j["witness_splits"] = nlohmann::json::parse(tree_type_to_json(witness));
  if (kind == Kind::UnivalentFace) {
    nlohmann::json res = nlohmann::json::array();
    for (size_t i = 0; i < resolutions.size(); ++i) {
      nlohmann::json r;
      r["splits"] = nlohmann::json::parse(tree_type_to_json(resolutions[i]));
      r["stable"] = static_cast<bool>(resolution_stable[i]);
      res.push_back(std::move(r));
    }
    j["resolutions"] = std::move(res);
  }
  return j.dump(indent);
}

M0wResult m0w_fan(const WeightVector& w) {
  int n = w.n();
  auto cls = classify_weights(w);
  if (cls.heavy_count < 2)
    throw Error(ErrorCode::FewerThanTwoHeavy, "the fan needs at least two heavy entries");
  M0wResult out;
  auto trivalent = enumerate_tree_types(n, true);
  std::vector<TreeType> stable;
  for (const auto& t : trivalent)
    if (is_w_stable(t, w)) stable.push_back(t);

  if (cls.heavy_light) {
    ProjectionMap pm = projection(w);
    BuildingSet bs = one_connected_building_set(pm.reduced_matroid);
    out.fan = quotient_lineality(nested_set_fan(pm.reduced_matroid, bs));
    out.is_fan = true;
    std::map<VecZ, int> ray_id;
    for (size_t i = 0; i < out.fan.rays.size(); ++i)
      ray_id[out.fan.rays[i]] = static_cast<int>(i);
    std::map<std::vector<int>, int> cone_id;
    for (size_t i = 0; i < out.fan.maximal_cones.size(); ++i)
      cone_id[out.fan.maximal_cones[i].rays] = static_cast<int>(i);
    std::set<int> used;
    for (const TreeType& t : stable) {
      auto imgs = pm.cone_image(t);
      if (static_cast<int>(imgs.size()) != n - 3)
        throw Error(ErrorCode::Internal, "stable type does not project injectively");
      std::vector<int> cone;
      for (const VecZ& v : imgs) {
        auto it = ray_id.find(v);
        if (it == ray_id.end()) throw Error(ErrorCode::Internal, "projected ray missing from fan");
        cone.push_back(it->second);
      }
      std::sort(cone.begin(), cone.end());
      auto it = cone_id.find(cone);
      if (it == cone_id.end()) throw Error(ErrorCode::Internal, "projected cone is not nested");
      if (!used.insert(it->second).second)
        throw Error(ErrorCode::Internal, "two stable types project to one cone");
      out.cone_of_type.emplace_back(t, it->second);
    }
    if (used.size() != out.fan.maximal_cones.size())
      throw Error(ErrorCode::Internal, "projection misses nested cones");
    return out;
  }

  // Not heavy/light: produce the obstruction witness.
  auto all_types = enumerate_tree_types(n, false);
  std::set<TreeType> stable_set;
  for (const auto& t : all_types)
    if (is_w_stable(t, w)) stable_set.insert(t);
  // Univalent codimension-one faces first (the illustrated phenomenon).
  std::map<std::vector<LeafSet>, std::vector<int>> facets;
  for (size_t i = 0; i < trivalent.size(); ++i) {
    const auto& splits = trivalent[i].splits;
    for (size_t drop = 0; drop < splits.size(); ++drop) {
      std::vector<LeafSet> facet;
      for (size_t j = 0; j < splits.size(); ++j)
        if (j != drop) facet.push_back(splits[j]);
      facets[facet].push_back(static_cast<int>(i));
    }
  }
  std::optional<Obstruction> univalent;
  for (const auto& [facet, adj] : facets) {
    TreeType tau;
    tau.n = n;
    tau.splits = facet;
    if (!stable_set.count(tau)) continue;
    int stable_res = 0;
    for (int i : adj)
      if (stable_set.count(trivalent[i])) ++stable_res;
    if (stable_res != 1) continue;
    Obstruction ob;
    ob.kind = Obstruction::Kind::UnivalentFace;
    ob.witness = tau;
    for (int i : adj) {
      ob.resolutions.push_back(trivalent[i]);
      ob.resolution_stable.push_back(stable_set.count(trivalent[i]) > 0);
    }
    if (!univalent || ob.witness < univalent->witness) univalent = std::move(ob);
  }
  if (univalent) {
    out.obstruction = std::move(univalent);
    return out;
  }
  // Otherwise a maximal stable type of too-small dimension must exist.
  for (const TreeType& t : all_types) {
    if (!stable_set.count(t) || t.trivalent()) continue;
    bool maximal = true;
    for (const TreeType& s : stable_set) {
      if (s.splits.size() <= t.splits.size()) continue;
      bool superset = std::includes(s.splits.begin(), s.splits.end(), t.splits.begin(),
                                    t.splits.end());
      if (superset) {
        maximal = false;
        break;
      }
    }
    if (maximal) {
      Obstruction ob;
      ob.kind = Obstruction::Kind::NonPure;
      ob.witness = t;
      out.obstruction = std::move(ob);
      return out;
    }
  }
  throw Error(ErrorCode::Internal, "no balancing obstruction found for a non-heavy/light vector");
}

WeightedFan losev_manin_fan(int t) {
  if (t < 2) throw Error(ErrorCode::InvalidSubset, "losev-manin fan needs t >= 2");
  std::vector<int> leaves;
  for (int i = 0; i < t; ++i) leaves.push_back(3 + i);
  GraphicMatroid star = GraphicMatroid::from_graph(star_graph(2, leaves));
  return quotient_lineality(chains_of_flats_fan(star));
}

std::vector<WeightVector> chamber_representatives(int n, int denominator) {
  std::vector<WeightVector> reps;
  std::set<std::vector<LeafSet>> seen;
  std::vector<int> ks(n);
  auto rec = [&](auto&& self, int pos, int maxk, int sum) -> void {
    if (pos == n) {
      if (sum <= 2 * denominator) return;
      VecQ entries;
      for (int k : ks) entries.push_back(Rat(k, denominator));
      WeightVector w{std::move(entries)};
      auto sig = chamber_signature(w);
      if (seen.insert(sig.family).second) reps.push_back(std::move(w));
      return;
    }
    // Non-increasing entries; prune when the sum cannot exceed 2.
    for (int k = maxk; k >= 1; --k) {
      if (sum + k * (n - pos) <= 2 * denominator) break;
      ks[pos] = k;
      self(self, pos + 1, k, sum + k);
    }
  };
  rec(rec, 0, denominator, 0);
  return reps;
}

}  // namespace tropmod
