#include "tropmod/bergman.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropmod {

VecZ flat_ray(const GraphicMatroid& m, EdgeSet flat) {
  VecZ v(m.ground_size(), 0);
  for (int e = 0; e < m.ground_size(); ++e)
    if (flat >> e & 1) v[e] = -1;
  return v;
}

MembershipOracle::MembershipOracle(const GraphicMatroid& m) : m_(m) {}

bool MembershipOracle::contains(const VecQ& p, MembershipMethod method) const {
  if (static_cast<int>(p.size()) != m_.ground_size())
    throw Error(ErrorCode::InvalidSubset, "covector length must equal the ground size");
  switch (method) {
    case MembershipMethod::Circuits: {
      if (!have_circuits_) {
        circuits_ = m_.circuits();
        have_circuits_ = true;
      }
      for (EdgeSet c : circuits_) {
        Rat best;
        int count = 0;
        for (int e = 0; e < m_.ground_size(); ++e) {
          if (!(c >> e & 1)) continue;
          if (count == 0 || p[e] > best) {
            best = p[e];
            count = 1;
          } else if (p[e] == best) {
            ++count;
          }
        }
        if (count < 2) return false;
      }
      return true;
    }
    case MembershipMethod::MinBases:
      if (!have_bases_) {
        bases_ = m_.bases();
        have_bases_ = true;
      }
      {
        // M_p: bases of minimal p-weight; membership iff it has no loop.
        std::vector<EdgeSet> minimal;
        Rat best;
        bool first = true;
        for (EdgeSet b : bases_) {
          Rat w(0);
          for (int e = 0; e < m_.ground_size(); ++e)
            if (b >> e & 1) w += p[e];
          if (first || w < best) {
            best = w;
            minimal.clear();
            first = false;
          }
          if (w == best) minimal.push_back(b);
        }
        EdgeSet covered = 0;
        for (EdgeSet b : minimal) covered |= b;
        return covered == m_.full_set();
      }
    case MembershipMethod::ChainsFan: {
      // p lies in a chains-of-flats cone iff its strict sublevel sets,
      // except the full one, are flats.
      std::vector<Rat> values(p.begin(), p.end());
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (size_t j = 0; j + 1 < values.size(); ++j) {
        EdgeSet level = 0;
        for (int e = 0; e < m_.ground_size(); ++e)
          if (p[e] <= values[j]) level |= EdgeSet(1) << e;
        if (!m_.is_flat(level)) return false;
      }
      return true;
    }
  }
  return false;
}

bool bergman_membership(const GraphicMatroid& m, const VecQ& p, MembershipMethod method) {
  return MembershipOracle(m).contains(p, method);
}

WeightedFan chains_of_flats_fan(const GraphicMatroid& m) {
  auto flats = m.flats();
  int top_rank = m.rank();
  // Group proper nonempty flats by rank for the chain search.
  std::vector<std::vector<EdgeSet>> by_rank(top_rank + 1);
  std::map<EdgeSet, int> ray_index;
  for (const Flat& f : flats) {
    if (f.edges == 0 || f.edges == m.full_set()) continue;
    by_rank[f.rank].push_back(f.edges);
    ray_index.emplace(f.edges, 0);
  }
  std::vector<VecZ> rays;
  for (auto& [fl, idx] : ray_index) {
    idx = static_cast<int>(rays.size());
    rays.push_back(flat_ray(m, fl));
  }
  std::vector<Cone> cones;
  std::vector<int> chain;
  auto rec = [&](auto&& self, EdgeSet current, int rank) -> void {
    if (rank == top_rank - 1 || top_rank == 0) {
      // The chain completes with the full set, which joins the lineality.
      cones.push_back(Cone{chain});
      std::sort(cones.back().rays.begin(), cones.back().rays.end());
      return;
    }
    for (EdgeSet next : by_rank[rank + 1]) {
      if (!contains(next, current)) continue;
      chain.push_back(ray_index.at(next));
      self(self, next, rank + 1);
      chain.pop_back();
    }
  };
  if (top_rank <= 1) {
    cones.push_back(Cone{});
  } else {
    rec(rec, 0, 0);
  }
  MatZ lineality = {VecZ(m.ground_size(), 1)};
  if (m.ground_size() == 0) lineality.clear();
  std::vector<Int> weights(cones.size(), 1);
  return make_fan(m.ground_size(), std::move(rays), std::move(lineality), std::move(cones),
                  std::move(weights));
}

namespace {

bool flat_lex_less(EdgeSet a, EdgeSet b) {
  while (a && b) {
    int la = __builtin_ctz(a), lb = __builtin_ctz(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

void canonical_sort(const GraphicMatroid& m, std::vector<EdgeSet>& flats) {
  std::sort(flats.begin(), flats.end(), [&](EdgeSet a, EdgeSet b) {
    int ra = m.rank(a), rb = m.rank(b);
    if (ra != rb) return ra < rb;
    return flat_lex_less(a, b);
  });
}

// Vertex set touched by an edge set, as a mask over vertex indices.
EdgeSet vertex_mask(const Graph& g, EdgeSet edges) {
  EdgeSet mask = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!(edges >> e & 1)) continue;
    mask |= EdgeSet(1) << g.vertex_index(g.edges[e].first);
    mask |= EdgeSet(1) << g.vertex_index(g.edges[e].second);
  }
  return mask;
}

}  // namespace

BuildingSet one_connected_building_set(const GraphicMatroid& m) {
  if (!m.graph().connected())
    throw Error(ErrorCode::DisconnectedGraph, "1-connected building set needs a connected graph");
  BuildingSet g;
  for (const Flat& f : m.flats()) {
    if (f.edges == 0) continue;
    if (m.one_connected(f.edges)) g.push_back(f.edges);
  }
  canonical_sort(m, g);
  return g;
}

bool is_building_set(const GraphicMatroid& m, const BuildingSet& g) {
  auto all = m.flats();
  std::set<EdgeSet> members(g.begin(), g.end());
  for (EdgeSet f : g)
    if (f == 0 || !m.is_flat(f)) return false;

  for (const Flat& f : all) {
    if (f.edges == 0) continue;
    // Maximal members of g below f.
    std::vector<EdgeSet> below;
    for (EdgeSet cand : g)
      if (contains(f.edges, cand)) below.push_back(cand);
    std::vector<EdgeSet> maximal;
    for (EdgeSet cand : below) {
      bool is_max = true;
      for (EdgeSet other : below)
        if (other != cand && contains(other, cand)) is_max = false;
      if (is_max) maximal.push_back(cand);
    }
    // Interval [0, f] and the factor intervals.
    std::vector<EdgeSet> interval;
    for (const Flat& x : all)
      if (contains(f.edges, x.edges)) interval.push_back(x.edges);
    if (maximal.empty()) {
      if (interval.size() != 1) return false;  // only the empty flat
      continue;
    }
    std::vector<std::vector<EdgeSet>> factors;
    size_t tuple_count = 1;
    for (EdgeSet gmax : maximal) {
      std::vector<EdgeSet> fi;
      for (const Flat& x : all)
        if (contains(gmax, x.edges)) fi.push_back(x.edges);
      tuple_count *= fi.size();
      if (tuple_count > 2'000'000) throw Error(ErrorCode::TooLarge, "building set check too large");
      factors.push_back(std::move(fi));
    }
    if (tuple_count != interval.size()) return false;
    // The join map must be a bijection onto the interval with a monotone
    // inverse (forward monotonicity is automatic for joins).
    std::map<EdgeSet, std::vector<EdgeSet>> image;
    std::vector<size_t> idx(factors.size(), 0);
    std::vector<EdgeSet> tuple(factors.size());
    bool done = false;
    while (!done) {
      EdgeSet join_union = 0;
      for (size_t j = 0; j < factors.size(); ++j) {
        tuple[j] = factors[j][idx[j]];
        join_union |= tuple[j];
      }
      EdgeSet join = m.closure(join_union);
      if (!contains(f.edges, join)) return false;
      if (!image.emplace(join, tuple).second) return false;  // not injective
      size_t j = 0;
      while (j < factors.size() && ++idx[j] == factors[j].size()) idx[j++] = 0;
      done = j == factors.size();
    }
    if (image.size() != interval.size()) return false;  // not surjective
    for (auto it = image.begin(); it != image.end(); ++it)
      for (auto jt = image.begin(); jt != image.end(); ++jt) {
        if (!contains(jt->first, it->first)) continue;
        for (size_t k = 0; k < factors.size(); ++k)
          if (!contains(jt->second[k], it->second[k])) return false;
      }
  }
  return true;
}

bool is_nested(const GraphicMatroid& m, const BuildingSet& g, const std::vector<EdgeSet>& s) {
  std::set<EdgeSet> members(g.begin(), g.end());
  for (EdgeSet f : s)
    if (!members.count(f)) throw Error(ErrorCode::InvalidSubset, "nested candidate not in the building set");
  std::vector<EdgeSet> elems(s.begin(), s.end());
  // Depth-first over antichains of size >= 2.
  std::vector<EdgeSet> antichain;
  auto incomparable = [&](EdgeSet a, EdgeSet b) {
    return !contains(a, b) && !contains(b, a);
  };
  bool ok = true;
  auto rec = [&](auto&& self, size_t start, EdgeSet joined) -> void {
    if (!ok) return;
    if (antichain.size() >= 2 && members.count(m.closure(joined))) {
      ok = false;
      return;
    }
    for (size_t i = start; i < elems.size() && ok; ++i) {
      bool fits = true;
      for (EdgeSet a : antichain)
        if (!incomparable(a, elems[i])) {
          fits = false;
          break;
        }
      if (!fits) continue;
      antichain.push_back(elems[i]);
      self(self, i + 1, joined | elems[i]);
      antichain.pop_back();
    }
  };
  rec(rec, 0, 0);
  return ok;
}

bool is_nested_one_connected(const GraphicMatroid& m, const std::vector<EdgeSet>& s) {
  const Graph& g = m.graph();
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) {
      if (contains(s[i], s[j]) || contains(s[j], s[i])) continue;
      if (vertex_mask(g, s[i]) & vertex_mask(g, s[j])) return false;
    }
  return true;
}

std::vector<std::vector<EdgeSet>> maximal_nested_sets(const GraphicMatroid& m,
                                                      const BuildingSet& g, bool validate) {
  if (std::find(g.begin(), g.end(), m.full_set()) == g.end())
    throw Error(ErrorCode::NotABuildingSet, "building set must contain the full ground set");
  if (validate && !is_building_set(m, g))
    throw Error(ErrorCode::NotABuildingSet, "interval-product condition fails");

  std::vector<EdgeSet> members;
  for (EdgeSet f : g)
    if (f != m.full_set()) members.push_back(f);
  canonical_sort(m, members);
  size_t k = members.size();

  bool fast = g == one_connected_building_set(m);
  // Pairwise compatibility; sufficient for 1-connected building sets, a
  // necessary filter otherwise (full antichain joins checked below).
  std::vector<std::vector<char>> compat(k, std::vector<char>(k, 0));
  const Graph& graph = m.graph();
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j) {
      bool ok;
      if (contains(members[i], members[j]) || contains(members[j], members[i])) {
        ok = true;
      } else if (fast) {
        ok = !(vertex_mask(graph, members[i]) & vertex_mask(graph, members[j]));
      } else {
        ok = is_nested(m, g, {members[i], members[j]});
      }
      compat[i][j] = compat[j][i] = ok;
    }

  std::vector<std::vector<EdgeSet>> out;
  std::vector<int> current;
  auto nested_with = [&](const std::vector<int>& set, int cand) {
    for (int i : set)
      if (!compat[i][cand]) return false;
    if (fast) return true;
    std::vector<EdgeSet> test;
    for (int i : set) test.push_back(members[i]);
    test.push_back(members[cand]);
    return is_nested(m, g, test);
  };
  auto rec = [&](auto&& self, size_t start) -> void {
    bool extendable = false;
    for (size_t i = 0; i < k; ++i) {
      if (std::find(current.begin(), current.end(), static_cast<int>(i)) != current.end())
        continue;
      if (nested_with(current, static_cast<int>(i))) {
        extendable = true;
        if (i >= start) {
          current.push_back(static_cast<int>(i));
          self(self, i + 1);
          current.pop_back();
        }
      }
    }
    if (!extendable) {
      std::vector<EdgeSet> set;
      for (int i : current) set.push_back(members[i]);
      out.push_back(std::move(set));
    }
  };
  rec(rec, 0);
  return out;
}

WeightedFan nested_set_fan(const GraphicMatroid& m, const BuildingSet& g, bool validate) {
  auto nested = maximal_nested_sets(m, g, validate);
  std::map<EdgeSet, int> ray_index;
  std::vector<VecZ> rays;
  std::vector<Cone> cones;
  for (const auto& set : nested) {
    Cone c;
    for (EdgeSet f : set) {
      auto it = ray_index.find(f);
      if (it == ray_index.end()) {
        it = ray_index.emplace(f, static_cast<int>(rays.size())).first;
        rays.push_back(flat_ray(m, f));
      }
      c.rays.push_back(it->second);
    }
    std::sort(c.rays.begin(), c.rays.end());
    cones.push_back(std::move(c));
  }
  MatZ lineality = {VecZ(m.ground_size(), 1)};
  std::vector<Int> weights(cones.size(), 1);
  return make_fan(m.ground_size(), std::move(rays), std::move(lineality), std::move(cones),
                  std::move(weights));
}

}  // namespace tropmod
