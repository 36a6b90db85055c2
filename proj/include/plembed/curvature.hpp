#pragma once

#include <vector>

#include "plembed/mesh.hpp"

namespace plembed {

struct VertexDefect {
  int vertex = -1;
  double defect = 0.0;  // 2*pi - total angle interior, pi - total on boundary
  bool boundary = false;
};

// Dihedral angle across an interior edge, measured inside the surface's
// solid side (outward orientation for closed meshes): flat edges give pi,
// convex edges less than pi, reflex edges more. The concentrated mean
// curvature measure is length * (pi - dihedral), positive on convex edges.
struct EdgeDihedral {
  int edge = -1;
  int u = -1, v = -1;
  double length = 0.0;
  double dihedral = 0.0;
  double measure = 0.0;
};

struct CurvatureReport {
  std::vector<VertexDefect> defects;
  std::vector<EdgeDihedral> dihedrals;       // empty for intrinsic-only input
  std::vector<int> skipped_boundary_edges;   // edges with one face
  double defect_total = 0.0;
  double two_pi_chi = 0.0;
  double gauss_bonnet_residual = 0.0;        // |defect_total - two_pi_chi|
};

// Angle defect at every vertex plus the Gauss-Bonnet totals.
CurvatureReport angle_defects(const PLSurface& s);

// Signed residual sum(defects) - 2*pi*chi for a closed surface. Surfaces
// with boundary are rejected; angle_defects still reports their totals.
double gauss_bonnet_check(const PLSurface& s);

// Defects plus per-edge dihedral data for a mesh in R^3 (orientable).
CurvatureReport dihedral_data(const EmbeddedMesh& m);

struct ExtremalVertexCheck {
  int vertex = -1;      // farthest vertex from the coordinate centroid
  double distance = 0.0;
  double defect = 0.0;
  bool pass = false;    // defect > 0
};

// Any closed embedded mesh must carry positive curvature at its farthest
// vertex from the centroid (a sphere shrinking onto the mesh touches it
// first at a locally convex vertex). Ties resolve to the lowest index.
ExtremalVertexCheck extremal_vertex_defect_check(const EmbeddedMesh& m);

}  // namespace plembed
