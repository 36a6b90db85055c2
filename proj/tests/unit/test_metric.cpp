#include <cmath>

#include "doctest.h"
#include "meshgen.hpp"
#include "plembed/metric.hpp"

using namespace plembed;

TEST_CASE("cube distances tighten with refinement") {
  const PLSurface s = meshgen::cube().surface();
  // Corner to opposite corner: the unfolded straight path measures sqrt(5).
  const double exact = std::sqrt(5.0);
  double prev = 1e300;
  for (int refine = 0; refine <= 4; ++refine) {
    DistanceField f = distance_field(s, 0, refine);
    CHECK(f.distance[0] == 0.0);
    CHECK(f.distance[6] <= prev + 1e-15);  // monotone non-increasing
    CHECK(f.distance[6] >= exact - 1e-12); // never below the geodesic
    prev = f.distance[6];
  }
  CHECK(prev <= exact * 1.02);
  // Neighbours are reached along the shared edge already at refine 0.
  DistanceField f0 = distance_field(s, 0, 0);
  CHECK(f0.distance[1] == doctest::Approx(1.0));
}

TEST_CASE("distance fields are symmetric") {
  for (int refine : {0, 2}) {
    const PLSurface s = meshgen::icosahedron().surface();
    DistanceEngine e(s, refine);
    DistanceField a = e.field_from(0);
    for (int v : {3, 7, 11}) {
      DistanceField b = e.field_from(v);
      CHECK(std::abs(a.distance[v] - b.distance[0]) <= 1e-9);
    }
  }
}

TEST_CASE("flat patch distances approach straight lines") {
  const PLSurface s = meshgen::grid_patch(4).surface();
  // Corner (0,4) to corner (4,0): no grid line helps, the straight segment
  // crosses faces diagonally. Refinement must close in on 4*sqrt(2).
  const int a = 0 * 5 + 4, b = 4 * 5 + 0;
  const double exact = 4.0 * std::sqrt(2.0);
  DistanceField coarse = distance_field(s, a, 0);
  DistanceField fine = distance_field(s, a, 4);
  CHECK(fine.distance[b] <= coarse.distance[b]);
  CHECK(fine.distance[b] >= exact - 1e-12);
  CHECK(fine.distance[b] <= exact * 1.02);
  // Along the grid diagonal the straight path is an edge path already.
  DistanceField diag = distance_field(s, 0, 0);
  CHECK(diag.distance[4 * 5 + 4] == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("engine input validation") {
  const PLSurface s = meshgen::cube().surface();
  CHECK_THROWS_AS(distance_field(s, -1, 0), ValidationError);
  CHECK_THROWS_AS(distance_field(s, 8, 0), ValidationError);
  CHECK_THROWS_AS(distance_field(s, 0, -1), ValidationError);
  CHECK_THROWS_AS(distance_field(s, 0, 9), ValidationError);
  DistanceEngine e(s, 1);
  CHECK(e.refine() == 1);
  CHECK(e.base_vertex_count() == 8);
  CHECK(e.node_count() == 8 + 18);  // one midpoint per edge
}

TEST_CASE("farthest point sampling is greedy from vertex 0") {
  const PLSurface s = meshgen::cube().surface();
  Net n4 = farthest_point_net_count(s, 4, 0);
  REQUIRE(n4.landmarks.size() == 4);
  CHECK(n4.landmarks[0] == 0);
  CHECK(n4.landmarks[1] == 6);  // the opposite corner is farthest
  CHECK(n4.requested_count == 4);
  CHECK(n4.covering_radius > 0.0);

  // Prefix property: a larger net extends a smaller one.
  Net n8 = farthest_point_net_count(s, 8, 0);
  for (int i = 0; i < 4; ++i) CHECK(n8.landmarks[i] == n4.landmarks[i]);
  CHECK(n8.covering_radius == 0.0);

  // Counts out of range.
  CHECK_THROWS_AS(farthest_point_net_count(s, 0, 0), ValidationError);
  CHECK_THROWS_AS(farthest_point_net_count(s, 9, 0), ValidationError);
}

TEST_CASE("epsilon nets stop at the requested covering radius") {
  const PLSurface s = meshgen::icosphere(1).surface();
  Net coarse = farthest_point_net_epsilon(s, 1.0, 0);
  Net fine = farthest_point_net_epsilon(s, 0.5, 0);
  CHECK(coarse.covering_radius <= 1.0);
  CHECK(fine.covering_radius <= 0.5);
  CHECK(coarse.landmarks.size() <= fine.landmarks.size());
  CHECK(coarse.requested_epsilon == 1.0);
  CHECK_THROWS_AS(farthest_point_net_epsilon(s, 0.0, 0), ValidationError);
  CHECK_THROWS_AS(farthest_point_net_epsilon(s, -1.0, 0), ValidationError);
}

TEST_CASE("covering radius shrinks as landmarks are added") {
  const PLSurface s = meshgen::icosphere(1).surface();
  double prev = 1e300;
  for (int m : {2, 8, 32}) {
    Net n = farthest_point_net_count(s, m, 0);
    CHECK(n.covering_radius <= prev);
    prev = n.covering_radius;
  }
}

TEST_CASE("short map check compares metrics through a vertex map") {
  EmbeddedMesh cube = meshgen::cube();
  EmbeddedMesh small = meshgen::scaled(cube, 0.8);
  std::vector<int> identity(8);
  for (int v = 0; v < 8; ++v) identity[v] = v;

  ShortMapReport contract = short_map_check(cube.surface(), small.surface(),
                                            identity, 1);
  CHECK(contract.max_ratio == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(contract.is_short);
  CHECK(contract.pair_count == 28);

  ShortMapReport same = short_map_check(cube.surface(), cube.surface(),
                                        identity, 1);
  CHECK(same.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(same.is_short);

  ShortMapReport expand = short_map_check(small.surface(), cube.surface(),
                                          identity, 1);
  CHECK(expand.max_ratio == doctest::Approx(1.25).epsilon(1e-12));
  CHECK_FALSE(expand.is_short);

  std::vector<int> wrong_size(7, 0);
  CHECK_THROWS_AS(short_map_check(cube.surface(), cube.surface(), wrong_size, 0),
                  ValidationError);
  std::vector<int> out_of_range(8, 0);
  out_of_range[3] = 99;
  CHECK_THROWS_AS(
      short_map_check(cube.surface(), cube.surface(), out_of_range, 0),
      ValidationError);
}

TEST_CASE("collapsing map is short with ratio zero") {
  EmbeddedMesh cube = meshgen::cube();
  std::vector<int> constant(8, 2);
  ShortMapReport r = short_map_check(cube.surface(), cube.surface(), constant, 0);
  CHECK(r.max_ratio == 0.0);
  CHECK(r.is_short);
}
