#include <cmath>
#include <numbers>

#include "doctest.h"
#include "meshgen.hpp"
#include "plembed/qc.hpp"

using namespace plembed;

namespace {

constexpr double kPi = std::numbers::pi;

MapSampler linear(double a, double b) {
  return [a, b](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = x;
    y[0] *= a;
    y[1] *= b;
    return y;
  };
}

}  // namespace

TEST_CASE("pointwise dilatation of simple linear maps") {
  Eigen::VectorXd x(2);
  x << 0.3, -0.7;

  DilatationReport stretch = pointwise_dilatation(linear(2.0, 1.0), x);
  CHECK(stretch.kind == DilatationKind::PointwiseNumeric);
  CHECK(stretch.dim == 2);
  CHECK(stretch.inner == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(stretch.outer == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(stretch.maximal == doctest::Approx(2.0).epsilon(1e-9));

  DilatationReport ident = pointwise_dilatation(linear(1.0, 1.0), x);
  CHECK(ident.inner == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ident.outer == doctest::Approx(1.0).epsilon(1e-9));

  MapSampler rot = [](const Eigen::VectorXd& v) {
    Eigen::VectorXd y(2);
    y << -v[1], v[0];
    return y;
  };
  DilatationReport r = pointwise_dilatation(rot, x);
  CHECK(r.maximal == doctest::Approx(1.0).epsilon(1e-9));

  // Explicit step behaves the same on a linear map.
  DilatationReport fixed = pointwise_dilatation(linear(2.0, 1.0), x, 1e-6);
  CHECK(fixed.inner == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("pointwise dilatation rejects degenerate input") {
  Eigen::VectorXd x(2);
  x << 1.0, 0.0;
  MapSampler reflect = [](const Eigen::VectorXd& v) {
    Eigen::VectorXd y(2);
    y << v[1], v[0];
    return y;
  };
  CHECK_THROWS_AS(pointwise_dilatation(reflect, x), NumericError);

  Eigen::VectorXd one(1);
  one << 2.0;
  CHECK_THROWS_AS(pointwise_dilatation(linear(1.0, 1.0), one), ValidationError);

  MapSampler shrink_dim = [](const Eigen::VectorXd& v) {
    return Eigen::VectorXd(v.head(1));
  };
  CHECK_THROWS_AS(pointwise_dilatation(shrink_dim, x), ValidationError);
}

TEST_CASE("folding map geometry and closed-form dilatation") {
  FoldingMap fold(kPi / 2.0, kPi, 3);
  Eigen::VectorXd x(3);
  x << 0.0, 1.0, 0.5;  // phi = pi/2, the far wall of the wedge
  Eigen::VectorXd y = fold.apply(x);
  CHECK(y[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(y[1]) < 1e-12);
  CHECK(y[2] == 0.5);  // axis coordinates ride along unchanged

  Eigen::VectorXd on_wall(3);
  on_wall << 2.0, 0.0, -1.0;  // phi = 0 is fixed
  CHECK((fold.apply(on_wall) - on_wall).norm() < 1e-15);

  DilatationReport closed = folding_map_dilatation(kPi / 2.0, kPi, 3);
  CHECK(closed.kind == DilatationKind::ClosedFormMap);
  CHECK(closed.inner == 2.0);
  CHECK(closed.outer == 4.0);
  CHECK(closed.maximal == 4.0);

  DilatationReport still = folding_map_dilatation(kPi / 3.0, kPi / 3.0, 4);
  CHECK(still.inner == 1.0);
  CHECK(still.outer == 1.0);

  // Gentler fold in the plane: c = 1.5, so K_I = K_O = 1.5.
  DilatationReport plane = folding_map_dilatation(1.0, 1.5, 2);
  CHECK(plane.inner == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(plane.outer == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("numeric jacobians agree with the closed form") {
  CHECK(folding_numeric_deviation(kPi / 2.0, kPi, 3, 16, 42) < 1e-6);
  CHECK(folding_numeric_deviation(kPi / 6.0, kPi / 2.0, 2, 16, 42) < 1e-6);
  CHECK(folding_numeric_deviation(1.0, 2.0, 4, 8, 42) < 1e-6);
  CHECK_THROWS_AS(folding_numeric_deviation(1.0, 2.0, 3, 0, 42),
                  ValidationError);
}

TEST_CASE("folding map validation") {
  CHECK_THROWS_AS(FoldingMap(kPi, kPi / 2.0, 3), ValidationError);  // shrinking
  CHECK_THROWS_AS(FoldingMap(0.0, kPi, 3), ValidationError);
  CHECK_THROWS_AS(FoldingMap(1.0, 7.0, 3), ValidationError);  // beta > 2*pi
  CHECK_THROWS_AS(FoldingMap(1.0, 2.0, 1), ValidationError);
  FoldingMap ok(kPi / 2.0, kPi, 3);
  Eigen::VectorXd bad(2);
  bad << 1.0, 0.0;
  CHECK_THROWS_AS(ok.apply(bad), ValidationError);
}

TEST_CASE("wedge coefficients") {
  DilatationReport r = wedge_coefficients(Wedge(kPi / 2.0, 3));
  CHECK(r.kind == DilatationKind::CoefficientOfDomain);
  CHECK(r.inner == 2.0);
  CHECK(r.outer == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.maximal == 2.0);
  CHECK(!r.note.empty());

  DilatationReport flat = wedge_coefficients(Wedge(kPi, 3));
  CHECK(flat.inner == 1.0);

  // Reflex wedges construct fine but have no known coefficient.
  Wedge reflex(1.5 * kPi, 3);
  CHECK_THROWS_AS(wedge_coefficients(reflex), ValidationError);

  CHECK_THROWS_AS(Wedge(0.0, 3), ValidationError);
  CHECK_THROWS_AS(Wedge(2.0 * kPi + 0.1, 3), ValidationError);
  CHECK_THROWS_AS(Wedge(1.0, 1), ValidationError);
}

TEST_CASE("dihedral wedge coefficients multiply") {
  DihedralWedge w(4, {kPi / 2.0, kPi / 3.0});
  DilatationReport r = dihedral_wedge_coefficients(w);
  CHECK(r.inner == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(r.outer == doctest::Approx(std::cbrt(6.0)).epsilon(1e-15));
  CHECK(r.maximal == doctest::Approx(6.0).epsilon(1e-15));

  // Only the first angle may be reflex, and then no coefficient is known.
  DihedralWedge reflex_first(4, {1.5 * kPi, kPi / 2.0});
  CHECK_THROWS_AS(dihedral_wedge_coefficients(reflex_first), ValidationError);
  CHECK_THROWS_AS(DihedralWedge(4, {kPi / 2.0, 1.5 * kPi}), ValidationError);

  CHECK_THROWS_AS(DihedralWedge(3, {}), ValidationError);
  CHECK_THROWS_AS(DihedralWedge(3, {1.0, 1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(DihedralWedge(1, {1.0}), ValidationError);
}

TEST_CASE("facet-count bound for convex polyhedra") {
  DilatationReport tet = convex_polyhedron_bound(4, 3);
  CHECK(tet.kind == DilatationKind::LowerBound);
  CHECK(tet.inner == 3.0);
  CHECK(tet.outer == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));

  DilatationReport box = convex_polyhedron_bound(6, 3);
  CHECK(box.inner == doctest::Approx(5.0 / 3.0).epsilon(1e-15));

  // Many facets: the bound tends to 1 from above.
  CHECK(convex_polyhedron_bound(1000, 3).inner > 1.0);
  CHECK(convex_polyhedron_bound(1000, 3).inner < 1.01);

  CHECK_THROWS_AS(convex_polyhedron_bound(3, 3), ValidationError);
  CHECK_THROWS_AS(convex_polyhedron_bound(4, 1), ValidationError);
}

TEST_CASE("sharpest-edge bound on meshes") {
  PolyhedronDihedralBound cube = polyhedron_dihedral_bound(meshgen::cube());
  CHECK(cube.min_dihedral == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(cube.report.inner == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(cube.report.kind == DilatationKind::LowerBound);
  // The witness must be one of the twelve unit edges, never a face diagonal.
  const EmbeddedMesh& m = meshgen::cube();
  double len =
      (m.point(cube.witness_edge_u) - m.point(cube.witness_edge_v)).norm();
  CHECK(len == doctest::Approx(1.0).epsilon(1e-15));

  PolyhedronDihedralBound prism =
      polyhedron_dihedral_bound(meshgen::wedge_prism(kPi / 10.0));
  CHECK(prism.report.inner == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(((prism.witness_edge_u == 0 && prism.witness_edge_v == 3) ||
         (prism.witness_edge_u == 3 && prism.witness_edge_v == 0)));

  CHECK_THROWS_AS(polyhedron_dihedral_bound(meshgen::torus(2.0, 1.0, 16, 8)),
                  ValidationError);
  CHECK_THROWS_AS(polyhedron_dihedral_bound(meshgen::open_box()),
                  ValidationError);
}

TEST_CASE("dilatation kind names") {
  CHECK(std::string(to_string(DilatationKind::PointwiseNumeric)) ==
        "pointwise-numeric");
  CHECK(std::string(to_string(DilatationKind::ClosedFormMap)) ==
        "closed-form-map");
  CHECK(std::string(to_string(DilatationKind::CoefficientOfDomain)) ==
        "coefficient-of-domain");
  CHECK(std::string(to_string(DilatationKind::LowerBound)) == "lower-bound");
}
