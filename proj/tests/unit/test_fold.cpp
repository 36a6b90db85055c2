#include <array>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "plembed/fold.hpp"

using namespace plembed;

namespace {

constexpr double kPi = std::numbers::pi;
const std::array<double, 3> kUnitSides = {1.0, 1.0, 1.0};

BasicConstructionInput unit_shrink(double ratio) {
  BasicConstructionInput in;
  in.big_sides = kUnitSides;
  in.ratio = ratio;
  return in;
}

}  // namespace

TEST_CASE("level-0 crease pattern of the equilateral triangle") {
  CreasePattern pat = make_crease_pattern(kUnitSides, 0);
  CHECK(pat.level == 0);
  REQUIRE(pat.pieces == 6);
  REQUIRE(pat.feet.size() == 6);
  const double R = 1.0 / std::sqrt(3.0);
  CHECK(pat.circumradius == doctest::Approx(R).epsilon(1e-14));
  for (int p = 0; p < 3; ++p)
    CHECK(pat.corner_angles[p] == doctest::Approx(kPi / 3.0).epsilon(1e-14));

  // Feet alternate corner, edge midpoint; corners carry side -1.
  for (int j = 0; j < 6; ++j) {
    if (j % 2 == 0) {
      CHECK(pat.foot_side[j] == -1);
      CHECK(pat.feet[j].norm() == doctest::Approx(R).epsilon(1e-13));
    } else {
      CHECK(pat.foot_side[j] == j / 2);
      CHECK(pat.feet[j].norm() == doctest::Approx(R / 2.0).epsilon(1e-13));
    }
  }

  // The development walks one full counterclockwise turn: corner p sits at
  // angle 2*pi*p/3 for the equilateral pattern.
  for (int p = 0; p < 3; ++p) {
    double want = 2.0 * kPi * p / 3.0;
    double got = std::atan2(pat.feet[2 * p][1], pat.feet[2 * p][0]);
    if (got < 0.0) got += 2.0 * kPi;
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("deeper levels halve every boundary segment") {
  CreasePattern one = make_crease_pattern(kUnitSides, 1);
  CreasePattern two = make_crease_pattern(kUnitSides, 2);
  CHECK(one.pieces == 12);
  CHECK(two.pieces == 24);
  REQUIRE(two.feet.size() == 24);
  for (int j = 0; j < 12; ++j)
    CHECK((two.feet[2 * j] - one.feet[j]).norm() <= 1e-15);
}

TEST_CASE("crease pattern rejects bad triangles and levels") {
  CHECK_THROWS_AS(make_crease_pattern({1.0, 1.0, 1.5}, 0), ValidationError);
  CHECK_THROWS_AS(make_crease_pattern({3.0, 4.0, 5.0}, 0), ValidationError);
  CHECK_THROWS_AS(make_crease_pattern({1.0, 1.0, 3.0}, 0), ValidationError);
  CHECK_THROWS_AS(make_crease_pattern({1.0, 1.0, 0.0}, 0), ValidationError);
  CHECK_THROWS_AS(make_crease_pattern(kUnitSides, -1), ValidationError);
  CHECK_THROWS_AS(make_crease_pattern(kUnitSides, 13), ValidationError);
  CHECK_THROWS_AS(make_crease_pattern(kUnitSides, 0, 1.2), ValidationError);
}

TEST_CASE("fold solver input validation") {
  CreasePattern pat = make_crease_pattern(kUnitSides, 0);
  CHECK_THROWS_AS(fold_basic_construction(unit_shrink(0.0), pat),
                  ValidationError);
  CHECK_THROWS_AS(fold_basic_construction(unit_shrink(1.1), pat),
                  ValidationError);

  BasicConstructionInput tilted = unit_shrink(1.0);
  tilted.face_rotation_max = kPi / 2.0;
  CHECK_THROWS_AS(fold_basic_construction(tilted, pat), ValidationError);
  tilted.face_rotation_max = -0.1;
  CHECK_THROWS_AS(fold_basic_construction(tilted, pat), ValidationError);

  BasicConstructionInput other = unit_shrink(1.0);
  other.big_sides = {1.1, 1.0, 1.0};
  CHECK_THROWS_AS(fold_basic_construction(other, pat), ValidationError);

  FoldOptions bad;
  bad.max_iterations = -1;
  CHECK_THROWS_AS(fold_basic_construction(unit_shrink(1.0), pat, bad),
                  ValidationError);
  bad.max_iterations = 10;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(fold_basic_construction(unit_shrink(1.0), pat, bad),
                  ValidationError);

  FoldState wrong;
  wrong.bends.assign(5, 0.0);  // pattern has 6 pieces
  CHECK_THROWS_AS(fold_basic_construction(unit_shrink(1.0), pat, {}, &wrong),
                  ValidationError);
}

TEST_CASE("ratio one folds flat onto its own outline") {
  CreasePattern pat = make_crease_pattern(kUnitSides, 0);
  PleatedSurface out = fold_basic_construction(unit_shrink(1.0), pat);
  CHECK(out.feasible);
  CHECK(out.constraint_residual <= 1e-10);
  CHECK(out.isometry_residual <= 1e-12);
  CHECK(out.prism_height == 0.0);
  CHECK(out.pieces == 6);
  CHECK(out.level == 0);
  CHECK(out.iterations > 0);

  // Each triangle corner must sit on its prism base corner.
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d got = out.mesh.point(1 + 2 * k);
    CHECK((got - out.prism_base[k]).norm() <= 1e-9);
  }
  const double R = 1.0 / std::sqrt(3.0);
  for (int k = 0; k < 3; ++k)
    CHECK(out.prism_base[k].norm() == doctest::Approx(R).epsilon(1e-12));

  // The root stays a rotation.
  Eigen::Matrix3d gram = out.state.root.transpose() * out.state.root;
  CHECK((gram - Eigen::Matrix3d::Identity()).norm() <= 1e-12);

  // Slit disk: apex + N+1 rim vertices, one boundary loop.
  MeshTopologyReport t = out.mesh.surface().topology_report();
  CHECK(t.vertex_count == 8);
  CHECK(t.face_count == 6);
  CHECK(t.euler_characteristic == 1);
  CHECK(t.boundary_component_count == 1);
}

TEST_CASE("strict shrinking cannot be met at level 0") {
  BasicConstructionInput in;
  in.big_sides = {1.2, 1.2, 1.2};
  in.ratio = 1.0 / 1.2;
  PleatedSurface out = fold_basic_construction(in, make_crease_pattern(in.big_sides, 0));
  CHECK_FALSE(out.feasible);
  CHECK(out.constraint_residual >= 1e-3);
  // Rigid placement keeps the surface isometric even without convergence.
  CHECK(out.isometry_residual <= 1e-12);
  // Height of the target prism: sqrt(R^2 - r^2) over the shared axis.
  double R = 1.2 / std::sqrt(3.0);
  double r = R / 1.2;
  CHECK(out.prism_height == doctest::Approx(std::sqrt(R * R - r * r)).epsilon(1e-12));
}

TEST_CASE("the solver is deterministic") {
  BasicConstructionInput in;
  in.big_sides = {1.2, 1.2, 1.2};
  in.ratio = 1.0 / 1.2;
  CreasePattern pat = make_crease_pattern(in.big_sides, 0);
  PleatedSurface a = fold_basic_construction(in, pat);
  PleatedSurface b = fold_basic_construction(in, pat);
  REQUIRE(a.state.bends.size() == b.state.bends.size());
  for (size_t j = 0; j < a.state.bends.size(); ++j)
    CHECK(a.state.bends[j] == b.state.bends[j]);
  CHECK(a.constraint_residual == b.constraint_residual);
}

TEST_CASE("warm start is honored") {
  CreasePattern pat = make_crease_pattern(kUnitSides, 0);
  PleatedSurface sol = fold_basic_construction(unit_shrink(1.0), pat);
  FoldOptions frozen;
  frozen.max_iterations = 0;
  PleatedSurface replay =
      fold_basic_construction(unit_shrink(1.0), pat, frozen, &sol.state);
  CHECK(replay.iterations == 0);
  CHECK(replay.constraint_residual == sol.constraint_residual);
  CHECK(replay.feasible == sol.feasible);
}

TEST_CASE("level sweep refines the fold") {
  BasicConstructionInput in;
  in.big_sides = {1.2, 1.2, 1.2};
  in.ratio = 1.0 / 1.2;
  std::vector<PleatedSurface> runs = fold_level_sweep(in, 2);
  REQUIRE(runs.size() == 3);
  for (int k = 0; k <= 2; ++k) {
    CHECK(runs[k].level == k);
    CHECK(runs[k].pieces == 6 * (1 << k));
    CHECK(runs[k].isometry_residual <= 1e-12);
  }
  CHECK(runs[1].constraint_residual < runs[0].constraint_residual);
  CHECK(runs[2].constraint_residual < runs[1].constraint_residual);

  CHECK_THROWS_AS(fold_level_sweep(in, -1), ValidationError);
}

TEST_CASE("tilt allowance widens the search space without breaking it") {
  BasicConstructionInput in;
  in.big_sides = {1.2, 1.2, 1.2};
  in.ratio = 1.0 / 1.2;
  in.face_rotation_max = 0.3;
  PleatedSurface out =
      fold_basic_construction(in, make_crease_pattern(in.big_sides, 0));
  CHECK(out.isometry_residual <= 1e-12);
  for (double rot : out.state.face_rotations) {
    CHECK(rot <= 0.3);
    CHECK(rot >= -0.3);
  }
}
