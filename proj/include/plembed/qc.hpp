#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "plembed/curvature.hpp"
#include "plembed/mesh.hpp"

namespace plembed {

// Planar wedge (dihedral angle alpha around a codimension-2 axis) in R^dim.
struct Wedge {
  double angle = 0.0;  // (0, 2*pi]
  int dim = 3;
  Wedge(double angle, int dim);
};

// Intersection of q wedges with a common codimension-(q+1) edge; the first
// angle may be reflex, the rest must be at most pi.
struct DihedralWedge {
  int dim = 3;
  std::vector<double> angles;  // 1 <= size <= dim-1
  DihedralWedge(int dim, std::vector<double> angles);
};

// The angle-expanding fold around a codimension-2 axis: cylindrical
// (r, phi, z...) -> (r, (beta/alpha) phi, z...), mapping the wedge of angle
// alpha onto the wedge of angle beta >= alpha while fixing r and z.
struct FoldingMap {
  double alpha = 0.0;
  double beta = 0.0;
  int dim = 3;
  FoldingMap(double alpha, double beta, int dim);
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

enum class DilatationKind {
  PointwiseNumeric,    // finite-difference Jacobian at one point
  ClosedFormMap,       // exact values of a concrete map
  CoefficientOfDomain, // best constant over all maps of a domain
  LowerBound,          // bound, not necessarily attained
};

const char* to_string(DilatationKind k);

struct DilatationReport {
  double inner = 1.0;    // K_I
  double outer = 1.0;    // K_O
  double maximal = 1.0;  // K = max(K_I, K_O)
  DilatationKind kind = DilatationKind::ClosedFormMap;
  int dim = 0;
  std::string note;  // qualifications, e.g. outer value only bounded below
};

using MapSampler = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Dilatations from the singular values of a central-difference Jacobian:
// with s1 >= ... >= sn and J = prod(s), K_O = s1^n / J and K_I = J / sn^n.
// step <= 0 picks 1e-5 times the local coordinate scale. Orientation must
// be positive.
DilatationReport pointwise_dilatation(const MapSampler& f,
                                      const Eigen::VectorXd& x,
                                      double step = 0.0);

// Closed form for the folding map: with c = beta/alpha >= 1 the singular
// values are (1, c, 1, ...), so K_I = c and K_O = c^(dim-1).
DilatationReport folding_map_dilatation(double alpha, double beta, int dim);

// Max relative deviation between the closed form and pointwise_dilatation
// over `samples` seeded interior points of the wedge.
double folding_numeric_deviation(double alpha, double beta, int dim,
                                 int samples, std::uint64_t seed);

// Best dilatation coefficients of the wedge domain itself: K_I = pi/alpha,
// K = pi/alpha; the outer value (pi/alpha)^(1/(dim-1)) is a lower bound.
// Reflex wedges (alpha > pi) are refused: no coefficient is known for them.
DilatationReport wedge_coefficients(const Wedge& w);

// Product rule over the wedge angles: K_I = prod(pi/alpha_i).
DilatationReport dihedral_wedge_coefficients(const DihedralWedge& w);

// Any flattening of a bounded convex polyhedron with m facets in R^dim has
// K_I >= (m - dim + 2) / (m - dim); requires m >= dim + 1.
DilatationReport convex_polyhedron_bound(int facets, int dim);

struct PolyhedronDihedralBound {
  DilatationReport report;  // K >= pi / min dihedral
  double min_dihedral = 0.0;
  int witness_edge_u = -1, witness_edge_v = -1;
};

// Sharpest-edge bound for a convex closed mesh in R^3; meshes with a reflex
// dihedral are refused naming the witness edge.
PolyhedronDihedralBound polyhedron_dihedral_bound(const EmbeddedMesh& m);

}  // namespace plembed
