#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "tropmod/matroid.hpp"

using namespace tropmod;
using namespace tropmod::testutil;

namespace {

// Independent oracle: flats are exactly the closed subsets.
std::vector<EdgeSet> flats_by_subset_filter(const GraphicMatroid& m) {
  std::vector<EdgeSet> out;
  for (EdgeSet s = 0; s <= m.full_set(); ++s)
    if (m.closure(s) == s) out.push_back(s);
  return out;
}

std::vector<GraphicMatroid> small_zoo() {
  std::vector<GraphicMatroid> zoo;
  zoo.push_back(GraphicMatroid::from_graph(triangle()));
  zoo.push_back(GraphicMatroid::from_graph(k4()));
  zoo.push_back(GraphicMatroid::from_graph(triangle_with_tail()));
  zoo.push_back(GraphicMatroid::from_graph(two_triangles()));
  zoo.push_back(GraphicMatroid::from_graph(four_cycle()));
  zoo.push_back(GraphicMatroid::from_graph(path(4)));
  zoo.push_back(GraphicMatroid::from_graph(star_graph(2, {3, 4, 5})));
  // Eight edges: K_4 with two pendant edges.
  zoo.push_back(GraphicMatroid::from_graph(
      make_graph({2, 3, 4, 5, 6, 7},
                 {{2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {2, 6}, {3, 7}})));
  return zoo;
}

}  // namespace

TEST_CASE("graph invariants are enforced") {
  CHECK_THROWS_AS(make_graph({1, 2}, {{1, 1}}), Error);          // loop
  CHECK_THROWS_AS(make_graph({1, 2}, {{1, 2}, {2, 1}}), Error);  // parallel
  CHECK_THROWS_AS(make_graph({1, 2}, {{1, 3}}), Error);          // missing endpoint
  CHECK_THROWS_AS(make_graph({1, 1, 2}, {}), Error);             // duplicate label
}

TEST_CASE("graph parsers") {
  Graph a = parse_graph_edge_list("2 3\n3 4\n2 4\n");
  CHECK(a.num_edges() == 3);
  CHECK(a.num_vertices() == 3);
  Graph b = parse_graph_json(R"({"vertices": [2,3,4], "edges": [[2,3],[3,4],[2,4]]})");
  CHECK(b.edges == a.edges);
  CHECK_THROWS_AS(parse_graph_json("{}"), Error);
  std::string dot = a.dot();
  CHECK(dot.find("graph") == 0);
  CHECK(dot.find("2 -- 3") != std::string::npos);
}

TEST_CASE("rank of small complete graphs") {
  GraphicMatroid k3 = GraphicMatroid::from_graph(triangle());
  CHECK(k3.rank() == 2);
  CHECK(k3.ground_size() == 3);
  GraphicMatroid k2 = GraphicMatroid::from_graph(complete_graph({1, 2}));
  CHECK(k2.rank() == 1);
  CHECK(k2.ground_size() == 1);
  GraphicMatroid m4 = GraphicMatroid::from_graph(k4());
  CHECK(m4.rank() == 3);
  // All closed subsets, by brute force: 1 + 6 + (3 + 4) + 1.
  CHECK(flats_by_subset_filter(m4).size() == 15);
  CHECK(m4.flats().size() == 15);
}

TEST_CASE("rank and closure on K_3") {
  GraphicMatroid m = GraphicMatroid::from_graph(triangle());
  CHECK(m.rank(0b001) == 1);
  CHECK(m.closure(0b001) == 0b001);
  CHECK(m.rank(0b011) == 2);
  CHECK(m.closure(0b011) == 0b111);  // the third edge closes up
  CHECK(m.rank(0) == 0);
  CHECK(m.closure(0) == 0);
  CHECK_THROWS_AS(m.rank(0b1000), Error);
}

TEST_CASE("flat enumeration is graded and complete") {
  GraphicMatroid k3 = GraphicMatroid::from_graph(triangle());
  auto flats = k3.flats();
  REQUIRE(flats.size() == 5);
  CHECK(flats.front().edges == 0);
  CHECK(flats.back().edges == k3.full_set());
  CHECK(flats[1].rank == 1);

  GraphicMatroid k2 = GraphicMatroid::from_graph(complete_graph({1, 2}));
  CHECK(k2.flats().size() == 2);

  for (const auto& m : small_zoo()) {
    auto enumerated = m.flats();
    auto filtered = flats_by_subset_filter(m);
    REQUIRE(enumerated.size() == filtered.size());
    for (const auto& f : enumerated) CHECK(m.closure(f.edges) == f.edges);
    // Graded order.
    for (size_t i = 0; i + 1 < enumerated.size(); ++i)
      CHECK(enumerated[i].rank <= enumerated[i + 1].rank);
  }
}

TEST_CASE("flat blocks induce connected subgraphs") {
  GraphicMatroid m = GraphicMatroid::from_graph(two_triangles());
  for (const Flat& f : m.flats()) {
    int covered = 0;
    for (const auto& block : f.blocks) covered += static_cast<int>(block.size());
    CHECK(covered == m.graph().num_vertices());
  }
}

TEST_CASE("circuits of small graphs") {
  CHECK(GraphicMatroid::from_graph(triangle()).circuits().size() == 1);
  // 4 triangles and 3 four-cycles.
  CHECK(GraphicMatroid::from_graph(k4()).circuits().size() == 7);
  CHECK(GraphicMatroid::from_graph(path(3)).circuits().empty());
  auto c4 = GraphicMatroid::from_graph(four_cycle()).circuits();
  REQUIRE(c4.size() == 1);
  CHECK(popcount(c4[0]) == 4);
}

TEST_CASE("dependent iff contains a circuit") {
  for (const auto& m : small_zoo()) {
    auto circuits = m.circuits();
    for (EdgeSet s = 0; s <= m.full_set(); ++s) {
      bool dependent = m.rank(s) < popcount(s);
      bool has_circuit = false;
      for (EdgeSet c : circuits)
        if (contains(s, c)) has_circuit = true;
      CHECK(dependent == has_circuit);
    }
  }
}

TEST_CASE("rank axioms hold exhaustively") {
  for (const auto& m : small_zoo()) {
    EdgeSet full = m.full_set();
    for (EdgeSet s = 0; s <= full; ++s) {
      int r = m.rank(s);
      CHECK(r <= popcount(s));
      EdgeSet cl = m.closure(s);
      CHECK(contains(cl, s));
      CHECK(m.closure(cl) == cl);
      for (int e = 0; e < m.ground_size(); ++e) {
        if (s >> e & 1) continue;
        int up = m.rank(s | (EdgeSet(1) << e)) - r;
        CHECK(up >= 0);
        CHECK(up <= 1);
      }
    }
    // Submodularity and closure monotonicity over all pairs.
    for (EdgeSet a = 0; a <= full; ++a)
      for (EdgeSet b = a; b <= full; ++b) {
        CHECK(m.rank(a) + m.rank(b) >= m.rank(a | b) + m.rank(a & b));
        if (contains(b, a)) CHECK(contains(m.closure(b), m.closure(a)));
      }
  }
}

TEST_CASE("bases and minimal weight bases") {
  GraphicMatroid k3 = GraphicMatroid::from_graph(triangle());
  CHECK(k3.bases().size() == 3);

  auto zero = k3.minimal_weight_bases(VecQ(3, Rat(0)));
  CHECK(zero.bases.size() == 3);
  CHECK(zero.loop_free);

  // Edge 0 never occurs in a minimal basis when it carries extra weight.
  auto skewed = k3.minimal_weight_bases({Rat(1), Rat(0), Rat(0)});
  CHECK(skewed.bases.size() == 1);
  CHECK_FALSE(skewed.loop_free);

  // On the Bergman ray of the flat {0} the two bases through edge 0 win.
  auto on_ray = k3.minimal_weight_bases({Rat(-1), Rat(0), Rat(0)});
  CHECK(on_ray.bases.size() == 2);
  CHECK(on_ray.loop_free);
  for (EdgeSet b : on_ray.bases) CHECK((b & 1) == 1);
}

TEST_CASE("direct sum and restriction") {
  GraphicMatroid k3 = GraphicMatroid::from_graph(triangle());
  GraphicMatroid k2 = GraphicMatroid::from_graph(complete_graph({1, 2}));
  GraphicMatroid sum = direct_sum(k3, k2);
  CHECK(sum.rank() == 3);
  CHECK(sum.ground_size() == 4);
  CHECK(sum.circuits().size() == 1);

  GraphicMatroid m4 = GraphicMatroid::from_graph(k4());
  // Edges {2,3},{2,4},{3,4} of K_4 form a triangle.
  EdgeSet tri = 0;
  tri |= EdgeSet(1) << m4.graph().edge_index(2, 3);
  tri |= EdgeSet(1) << m4.graph().edge_index(2, 4);
  tri |= EdgeSet(1) << m4.graph().edge_index(3, 4);
  std::vector<int> back;
  GraphicMatroid restricted = m4.restriction(tri, &back);
  CHECK(restricted.rank() == 2);
  CHECK(restricted.ground_size() == 3);
  CHECK(back.size() == 3);
  CHECK_THROWS_AS(m4.restriction(EdgeSet(1) << 10), Error);
}

TEST_CASE("restriction to a small vertex's neighborhood clique") {
  // G_i(w) for a degree-2 small vertex contains the complete graph K_2 on
  // its neighborhood; restricting to those edges gives that matroid.
  Graph gi = make_graph({2, 3, 4}, {{2, 3}, {2, 4}, {3, 4}});  // K(w)=edge {2,3} plus vertex 4
  GraphicMatroid m = GraphicMatroid::from_graph(gi);
  EdgeSet neighborhood = EdgeSet(1) << m.graph().edge_index(2, 3);
  GraphicMatroid k = m.restriction(neighborhood);
  CHECK(k.ground_size() == 1);
  CHECK(k.rank() == 1);
}

TEST_CASE("connectivity predicates") {
  GraphicMatroid m = GraphicMatroid::from_graph(two_triangles());
  const Graph& g = m.graph();
  EdgeSet t1 = 0;
  t1 |= EdgeSet(1) << g.edge_index(2, 3);
  t1 |= EdgeSet(1) << g.edge_index(2, 4);
  t1 |= EdgeSet(1) << g.edge_index(3, 4);
  CHECK(m.one_connected(t1));
  CHECK(m.two_connected(t1));
  EdgeSet disjoint = (EdgeSet(1) << g.edge_index(2, 4)) | (EdgeSet(1) << g.edge_index(3, 5));
  CHECK_FALSE(m.one_connected(disjoint));
  EdgeSet path_two = (EdgeSet(1) << g.edge_index(2, 4)) | (EdgeSet(1) << g.edge_index(2, 5));
  CHECK(m.one_connected(path_two));
  CHECK_FALSE(m.two_connected(path_two));  // cut vertex 2
}

TEST_CASE("size guards return typed errors") {
  // 13 vertices: flats are guarded.
  std::vector<int> verts;
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= 13; ++i) verts.push_back(i);
  for (int i = 1; i < 13; ++i) edges.emplace_back(i, i + 1);
  GraphicMatroid big = GraphicMatroid::from_graph(make_graph(verts, edges));
  try {
    big.flats();
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}
