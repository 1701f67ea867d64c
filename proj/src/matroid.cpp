#include "tropmod/matroid.hpp"

#include <algorithm>
#include <map>

namespace tropmod {

GraphicMatroid GraphicMatroid::from_graph(Graph g) {
  // make_graph already rejects loops and parallel edges
  return GraphicMatroid(make_graph(g.vertices, g.edges));
}

void GraphicMatroid::check_subset(EdgeSet s) const {
  if (!contains(full_set(), s)) throw Error(ErrorCode::InvalidSubset, "edge index out of range");
}

int GraphicMatroid::rank(EdgeSet s) const {
  check_subset(s);
  return graph_.num_vertices() - graph_.components(s);
}

EdgeSet GraphicMatroid::closure(EdgeSet s) const {
  check_subset(s);
  auto ids = graph_.component_ids(s);
  EdgeSet cl = 0;
  for (int e = 0; e < ground_size(); ++e) {
    const auto& [u, v] = graph_.edges[e];
    if (ids[graph_.vertex_index(u)] == ids[graph_.vertex_index(v)]) cl |= EdgeSet(1) << e;
  }
  return cl;
}

Flat GraphicMatroid::make_flat(EdgeSet s) const {
  if (closure(s) != s) throw Error(ErrorCode::InvalidSubset, "edge set is not closed");
  Flat f;
  f.edges = s;
  f.rank = rank(s);
  auto ids = graph_.component_ids(s);
  int nblocks = ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
  f.blocks.assign(nblocks, {});
  for (int v = 0; v < graph_.num_vertices(); ++v) f.blocks[ids[v]].push_back(graph_.vertices[v]);
  std::sort(f.blocks.begin(), f.blocks.end());
  return f;
}

namespace {

bool lex_less(EdgeSet a, EdgeSet b) {
  // Lexicographic on the sorted index sequences.
  while (a && b) {
    int la = __builtin_ctz(a), lb = __builtin_ctz(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

}  // namespace

std::vector<Flat> GraphicMatroid::flats() const {
  int n = graph_.num_vertices();
  if (n > 12) throw Error(ErrorCode::TooLarge, "flat enumeration limited to 12 vertices");

  // Adjacency over vertex indices for the block-connectivity check.
  std::vector<EdgeSet> adj(n, 0);
  for (int e = 0; e < ground_size(); ++e) {
    int u = graph_.vertex_index(graph_.edges[e].first);
    int v = graph_.vertex_index(graph_.edges[e].second);
    adj[u] |= EdgeSet(1) << v;
    adj[v] |= EdgeSet(1) << u;
  }
  auto block_connected = [&](EdgeSet verts) {
    int start = __builtin_ctz(verts);
    EdgeSet seen = EdgeSet(1) << start, frontier = seen;
    while (frontier) {
      EdgeSet next = 0;
      for (EdgeSet f = frontier; f; f &= f - 1) next |= adj[__builtin_ctz(f)];
      next &= verts & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == verts;
  };

  std::vector<Flat> out;
  // Partitions via recursive block assignment; each block must induce a
  // connected subgraph, which makes partition -> flat injective.
  std::vector<EdgeSet> blocks;
  auto emit = [&]() {
    EdgeSet fl = 0;
    for (int e = 0; e < ground_size(); ++e) {
      int u = graph_.vertex_index(graph_.edges[e].first);
      int v = graph_.vertex_index(graph_.edges[e].second);
      for (EdgeSet b : blocks)
        if ((b >> u & 1) && (b >> v & 1)) {
          fl |= EdgeSet(1) << e;
          break;
        }
    }
    out.push_back(make_flat(fl));
  };
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      for (EdgeSet b : blocks)
        if (!block_connected(b)) return;
      emit();
      return;
    }
    // Index loop: deeper levels push and pop blocks, which may reallocate.
    size_t count = blocks.size();
    for (size_t bi = 0; bi < count; ++bi) {
      blocks[bi] |= EdgeSet(1) << v;
      self(self, v + 1);
      blocks[bi] &= ~(EdgeSet(1) << v);
    }
    blocks.push_back(EdgeSet(1) << v);
    self(self, v + 1);
    blocks.pop_back();
  };
  if (n == 0) {
    out.push_back(Flat{});
  } else {
    rec(rec, 0);
  }
  std::sort(out.begin(), out.end(), [](const Flat& a, const Flat& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return lex_less(a.edges, b.edges);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Flat& a, const Flat& b) { return a.edges == b.edges; }),
            out.end());
  return out;
}

std::vector<EdgeSet> GraphicMatroid::circuits() const {
  int m = ground_size();
  if (m > 20) throw Error(ErrorCode::TooLarge, "circuit enumeration limited to 20 edges");
  std::vector<EdgeSet> out;
  for (EdgeSet s = 1; s < (EdgeSet(1) << m); ++s) {
    // A circuit of a graphic matroid is a simple cycle: every touched
    // vertex has degree 2 and the touched edges are connected.
    std::map<int, int> degree;
    for (int e = 0; e < m; ++e) {
      if (!(s >> e & 1)) continue;
      degree[graph_.edges[e].first]++;
      degree[graph_.edges[e].second]++;
    }
    bool ok = true;
    for (const auto& [v, d] : degree)
      if (d != 2) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (static_cast<int>(degree.size()) != popcount(s)) continue;  // one cycle, not several
    if (rank(s) != popcount(s) - 1) continue;                      // connected single cycle
    out.push_back(s);
  }
  return out;
}

std::vector<EdgeSet> GraphicMatroid::bases() const {
  int m = ground_size();
  if (m > 20) throw Error(ErrorCode::TooLarge, "basis enumeration limited to 20 edges");
  int r = rank();
  std::vector<EdgeSet> out;
  auto rec = [&](auto&& self, int next, EdgeSet cur, int size) -> void {
    if (size == r) {
      out.push_back(cur);
      return;
    }
    for (int e = next; e < m; ++e) {
      EdgeSet cand = cur | (EdgeSet(1) << e);
      if (rank(cand) == size + 1) self(self, e + 1, cand, size + 1);
    }
  };
  rec(rec, 0, 0, 0);
  return out;
}

MinWeightBases GraphicMatroid::minimal_weight_bases(const VecQ& c) const {
  if (static_cast<int>(c.size()) != ground_size())
    throw Error(ErrorCode::InvalidSubset, "covector length must equal the ground size");
  MinWeightBases res;
  bool first = true;
  for (EdgeSet b : bases()) {
    Rat w(0);
    for (int e = 0; e < ground_size(); ++e)
      if (b >> e & 1) w += c[e];
    if (first || w < res.weight) {
      res.weight = w;
      res.bases.clear();
      first = false;
    }
    if (w == res.weight) res.bases.push_back(b);
  }
  EdgeSet covered = 0;
  for (EdgeSet b : res.bases) covered |= b;
  res.loop_free = covered == full_set();
  return res;
}

GraphicMatroid GraphicMatroid::restriction(EdgeSet s, std::vector<int>* new_to_old) const {
  check_subset(s);
  return GraphicMatroid(graph_.restriction(s, new_to_old));
}

bool GraphicMatroid::one_connected(EdgeSet s) const {
  check_subset(s);
  if (s == 0) return false;
  return graph_.restriction(s).connected();
}

bool GraphicMatroid::two_connected(EdgeSet s) const {
  check_subset(s);
  Graph h = graph_.restriction(s);
  if (h.num_vertices() <= 1) return true;
  if (!h.connected()) return false;
  if (h.num_vertices() == 2) return true;
  // 2-connected: no cut vertex.
  for (int cut = 0; cut < h.num_vertices(); ++cut) {
    EdgeSet keep = 0;
    for (int e = 0; e < h.num_edges(); ++e) {
      int u = h.vertex_index(h.edges[e].first);
      int v = h.vertex_index(h.edges[e].second);
      if (u != cut && v != cut) keep |= EdgeSet(1) << e;
    }
    auto ids = h.component_ids(keep);
    // Count components among the vertices other than `cut`.
    std::vector<int> seen;
    for (int v = 0; v < h.num_vertices(); ++v) {
      if (v == cut) continue;
      if (std::find(seen.begin(), seen.end(), ids[v]) == seen.end()) seen.push_back(ids[v]);
    }
    if (seen.size() > 1) return false;
  }
  return true;
}

GraphicMatroid direct_sum(const GraphicMatroid& a, const GraphicMatroid& b) {
  const Graph& ga = a.graph();
  const Graph& gb = b.graph();
  int offset = 0;
  if (!ga.vertices.empty() && !gb.vertices.empty())
    offset = ga.vertices.back() + 1 - gb.vertices.front();
  if (offset < 0) offset = 0;
  std::vector<int> verts = ga.vertices;
  for (int v : gb.vertices) verts.push_back(v + offset);
  std::vector<std::pair<int, int>> edges = ga.edges;
  for (const auto& [u, v] : gb.edges) edges.emplace_back(u + offset, v + offset);
  return GraphicMatroid::from_graph(make_graph(std::move(verts), std::move(edges)));
}

}  // namespace tropmod
