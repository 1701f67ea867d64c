#include "tropmod/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tropmod {

std::vector<int> set_to_indices(EdgeSet s) {
  std::vector<int> idx;
  for (int i = 0; s >> i; ++i)
    if (s >> i & 1) idx.push_back(i);
  return idx;
}

EdgeSet indices_to_set(const std::vector<int>& idx) {
  EdgeSet s = 0;
  for (int i : idx) s |= EdgeSet(1) << i;
  return s;
}

int Graph::vertex_index(int label) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), label);
  if (it == vertices.end() || *it != label) return -1;
  return static_cast<int>(it - vertices.begin());
}

bool Graph::has_vertex(int label) const { return vertex_index(label) >= 0; }

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].first == u && edges[i].second == v) return static_cast<int>(i);
  return -1;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<int> Graph::component_ids(EdgeSet s) const {
  Dsu dsu(num_vertices());
  for (int e = 0; e < num_edges(); ++e) {
    if (!(s >> e & 1)) continue;
    dsu.unite(vertex_index(edges[e].first), vertex_index(edges[e].second));
  }
  std::vector<int> ids(num_vertices());
  std::map<int, int> relabel;
  for (int v = 0; v < num_vertices(); ++v) {
    int root = dsu.find(v);
    auto it = relabel.try_emplace(root, static_cast<int>(relabel.size())).first;
    ids[v] = it->second;
  }
  return ids;
}

int Graph::components(EdgeSet s) const {
  auto ids = component_ids(s);
  return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
}

bool Graph::connected() const {
  if (num_vertices() <= 1) return true;
  return components((num_edges() >= 32 ? ~EdgeSet(0) : (EdgeSet(1) << num_edges()) - 1)) == 1;
}

Graph Graph::restriction(EdgeSet s, std::vector<int>* new_to_old) const {
  std::set<int> verts;
  std::vector<std::pair<int, int>> es;
  std::vector<int> mapping;
  for (int e = 0; e < num_edges(); ++e) {
    if (!(s >> e & 1)) continue;
    verts.insert(edges[e].first);
    verts.insert(edges[e].second);
    es.push_back(edges[e]);
    mapping.push_back(e);
  }
  if (new_to_old) *new_to_old = mapping;
  return make_graph(std::vector<int>(verts.begin(), verts.end()), std::move(es));
}

std::string Graph::dot(const std::string& name) const {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  std::set<int> touched;
  for (const auto& [u, v] : edges) {
    touched.insert(u);
    touched.insert(v);
  }
  for (int v : vertices)
    if (!touched.count(v)) os << "  " << v << ";\n";
  for (const auto& [u, v] : edges) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

Graph make_graph(std::vector<int> vertices, std::vector<std::pair<int, int>> edges) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw Error(ErrorCode::InvalidGraph, "duplicate vertex label");
  Graph g;
  g.vertices = std::move(vertices);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u == v) throw Error(ErrorCode::InvalidGraph, "loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!g.has_vertex(u) || !g.has_vertex(v))
      throw Error(ErrorCode::InvalidGraph, "edge endpoint not a listed vertex");
    if (!seen.insert({u, v}).second)
      throw Error(ErrorCode::InvalidGraph, "parallel edge " + std::to_string(u) + "-" + std::to_string(v));
    g.edges.emplace_back(u, v);
  }
  if (g.num_edges() > 31) throw Error(ErrorCode::TooLarge, "more than 31 edges");
  return g;
}

Graph complete_graph(const std::vector<int>& labels) {
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < sorted.size(); ++i)
    for (size_t j = i + 1; j < sorted.size(); ++j) edges.emplace_back(sorted[i], sorted[j]);
  return make_graph(sorted, std::move(edges));
}

Graph star_graph(int center, const std::vector<int>& leaves) {
  std::vector<int> verts = leaves;
  verts.push_back(center);
  std::vector<std::pair<int, int>> edges;
  for (int l : leaves) edges.emplace_back(center, l);
  return make_graph(std::move(verts), std::move(edges));
}

Graph parse_graph_edge_list(const std::string& text) {
  std::vector<std::pair<int, int>> edges;
  std::set<int> verts;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v)) throw Error(ErrorCode::ParseError, "expected 'u v' on line: " + line);
    edges.emplace_back(u, v);
    verts.insert(u);
    verts.insert(v);
  }
  return make_graph(std::vector<int>(verts.begin(), verts.end()), std::move(edges));
}

Graph parse_graph_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad graph JSON: ") + e.what());
  }
  if (!j.contains("vertices") || !j.contains("edges"))
    throw Error(ErrorCode::ParseError, "graph JSON needs 'vertices' and 'edges'");
  std::vector<int> verts = j["vertices"].get<std::vector<int>>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "edge must be [u,v]");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return make_graph(std::move(verts), std::move(edges));
}

}  // namespace tropmod
