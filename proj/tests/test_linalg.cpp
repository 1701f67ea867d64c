#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tropmod/linalg.hpp"

using namespace tropmod;

TEST_CASE("rational parsing round trips") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("-2/8") == Rat(-1, 4));
  CHECK(parse_rational(" 1 ") == Rat(1));
  CHECK(to_string(Rat(3, 4)) == "3/4");
  CHECK(to_string(Rat(5)) == "5");
  auto v = parse_rational_list("1,1,3/4,3/4,1/4");
  CHECK(v.size() == 5);
  CHECK(v[2] == Rat(3, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("primitive vectors and gcd") {
  CHECK(primitive({2, 4, -6}) == VecZ{1, 2, -3});
  CHECK(primitive({0, 0}) == VecZ{0, 0});
  CHECK(vec_gcd({4, 6}) == 2);
  CHECK(q_to_primitive_z({Rat(1, 2), Rat(1, 3)}) == VecZ{3, 2});
}

TEST_CASE("rank and span") {
  MatZ rows = {{1, 0, 1}, {0, 1, 1}, {1, 1, 2}};
  CHECK(rank_z(rows) == 2);
  CHECK(in_span(rows, {2, 3, 5}));
  CHECK_FALSE(in_span(rows, {0, 0, 1}));
}

TEST_CASE("solve_columns") {
  std::vector<VecQ> cols = {{Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
  bool unique = false;
  auto sol = solve_columns(cols, {Rat(3), Rat(2)}, &unique);
  REQUIRE(sol.has_value());
  CHECK(unique);
  CHECK((*sol)[0] == Rat(1));
  CHECK((*sol)[1] == Rat(2));
  CHECK_FALSE(solve_columns({{Rat(1), Rat(1)}}, {Rat(1), Rat(2)}).has_value());
}

TEST_CASE("kernel") {
  MatQ rows = {{Rat(1), Rat(1), Rat(0)}};
  auto k = kernel_q(rows, 3);
  CHECK(k.size() == 2);
  for (const auto& v : k) CHECK(v[0] + v[1] == Rat(0));
}

TEST_CASE("snf quotient is lattice exact") {
  // Quotient of Z^3 by the saturation of span{(2,2,0)}: the image of
  // (1,1,0) must be zero and (1,0,0) must be primitive.
  LatticeQuotient q = lattice_quotient({{2, 2, 0}}, 3);
  CHECK(q.rank == 1);
  CHECK(is_zero(q.apply({1, 1, 0})));
  VecZ img = q.apply({1, 0, 0});
  CHECK(vec_gcd(img) == 1);
}

TEST_CASE("snf handles a dependent row set") {
  LatticeQuotient q = lattice_quotient({{1, 2, 3}, {2, 4, 6}}, 3);
  CHECK(q.rank == 1);
  CHECK(is_zero(q.apply({3, 6, 9})));
}

TEST_CASE("saturation basis") {
  MatZ sat = saturation_basis({{2, 0}, {0, 3}}, 2);
  CHECK(rank_z(sat) == 2);
  // Index of the original lattice inside its saturation.
  CHECK(lattice_index(sat, {{2, 0}, {0, 3}}, 2) == 6);
}

TEST_CASE("lattice index") {
  MatZ lattice = {{1, 0}, {0, 1}};
  CHECK(lattice_index(lattice, {{2, 0}, {0, 1}}, 2) == 2);
  CHECK(lattice_index(lattice, {{1, 1}, {1, -1}}, 2) == 2);
  CHECK(lattice_index(lattice, {{1, 0}}, 2) == 0);  // rank drop
}

TEST_CASE("extreme rays of a quadrant slice") {
  // {x >= 0, y >= 0, z free, x + y - z = 0}: rays (1,0,1) and (0,1,1).
  MatQ eq = {{Rat(1), Rat(1), Rat(-1)}};
  auto rep = extreme_rays(eq, 3, {0, 1});
  CHECK(rep.lineality.empty());
  REQUIRE(rep.rays.size() == 2);
  CHECK(rep.rays[0] == VecZ{0, 1, 1});
  CHECK(rep.rays[1] == VecZ{1, 0, 1});
}

TEST_CASE("extreme rays with lineality") {
  // {x >= 0} in R^2: one ray, lineality e_2.
  auto rep = extreme_rays({}, 2, {0});
  REQUIRE(rep.rays.size() == 1);
  CHECK(rep.rays[0][0] == 1);
  REQUIRE(rep.lineality.size() == 1);
  CHECK(rep.lineality[0][0] == 0);
}

TEST_CASE("hermite basis is canonical") {
  MatZ a = hermite_basis({{0, 1, 1}, {1, 1, 0}}, 3);
  MatZ b = hermite_basis({{1, 2, 1}, {1, 1, 0}}, 3);
  CHECK(a == b);
  CHECK(hermite_basis({{-1, -1, -1}}, 3) == MatZ{{1, 1, 1}});
}
