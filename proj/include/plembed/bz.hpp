#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "plembed/mesh.hpp"
#include "plembed/rng.hpp"

namespace plembed {

// Power map between cones: (rho, phi) -> (a rho^(lambda/theta), (lambda/theta) phi).
// Bijective from the cone of total angle theta onto the cone of angle lambda;
// radial rays go to radial rays. For lambda = 2*pi the target is the plane.
struct ConeFlatteningMap {
  double theta = 0.0;
  double lambda = 0.0;
  double scale = 1.0;
  ConeFlatteningMap(double theta, double lambda, double scale = 1.0);
  // Polar-to-polar: returns (r, psi) for a source point (rho, phi).
  Eigen::Vector2d apply_polar(double rho, double phi) const;
};

// Planar development of the star of one vertex under a ConeFlatteningMap.
struct ConeLayout {
  int center = -1;       // the flattened vertex; its image is the origin
  double theta = 0.0;    // total corner angle at the center
  double lambda = 0.0;
  double scale = 1.0;
  bool interior = false; // star wraps all the way around
  // Ring neighbours in cyclic star order. For an interior vertex the first
  // neighbour is repeated at the end, so the final ray closes the layout.
  std::vector<int> ring;
  std::vector<double> ray_angles;            // psi of each ring vertex
  std::vector<Eigen::Vector2d> positions;    // image of each ring vertex
};

// Develops the faces around `vertex` into the plane through the power map:
// ray angles are scaled by lambda/theta and radii by rho -> scale*rho^(lambda/theta).
// With lambda = 2*pi the image angles always total 2*pi, whatever the cone
// angle at the vertex was. Fails if the faces around the vertex do not form a
// single fan.
ConeLayout flatten_cone_vertex(const PLSurface& s, int vertex,
                               double lambda = 6.283185307179586,
                               double scale = 1.0);

// Max pointwise dilatation of the cone power map over seeded sample points
// away from the apex, each measured through local isometric charts of the
// source and target cones. The planar power map is conformal, so the result
// should sit at 1 up to differencing error for every theta, lambda.
double planar_conformality_check(double theta, double lambda, double scale,
                                 int samples,
                                 std::uint64_t seed = kDefaultSeed);

// Splits every face into n^2 similar copies (edge n-section). Lengths of the
// children are exact parent lengths divided by n, so the PL metric, the area,
// and the defects at original vertices are preserved; new vertices interior
// to a face are flat, and the Euler characteristic does not change.
PLSurface subdivide_n2(const PLSurface& s, int n);

// Same split applied to an embedded mesh; new vertices are placed on the
// straight parent faces.
EmbeddedMesh subdivide_n2(const EmbeddedMesh& m, int n);

// Cone of total angle theta > 2*pi realized as a circular saw blade: 2N
// congruent triangles around the apex, alternating base-circle points P_i
// with raised tooth tips M_i over the arc midpoints. Each triangle has apex
// angle beta = theta/(2N), so the apex angles sum to theta exactly while the
// footprint stays a disk of the given radius.
struct RippledCone {
  double theta = 0.0;
  int teeth = 0;
  double radius = 0.0;
  double half_width = 0.0;  // delta; tooth flank length is 2*delta
  double pair_angle = 0.0;  // beta, apex angle of one triangle
  double elevation = 0.0;   // angle the tip directions make with the base plane
  double spoke_length = 0.0;  // apex-to-tip distance
  double apex_angle_sum = 0.0;  // recomputed from the emitted mesh
  int apex = 0;             // apex vertex index in the mesh
  EmbeddedMesh mesh;
};

RippledCone build_rippled_cone(double theta, int teeth, double radius,
                               double half_width);

// Map of the disk of radius r2 on a cone of angle theta > 2*pi: inside r1 it
// keeps radial distances and contracts circles by 2*pi/theta; on the annulus
// r1 < rho < r2 it switches to the power map with the matching scale, so the
// two rules agree on the circle rho = r1.
struct ContractionAnnulusMap {
  double theta = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double factor = 0.0;  // 2*pi/theta
  ContractionAnnulusMap(double theta, double r1, double r2);
  // Polar-to-polar: returns (r, psi) for a source point (rho, phi), rho <= r2.
  Eigen::Vector2d apply_polar(double rho, double phi) const;
};

ContractionAnnulusMap contraction_annulus_map(double theta, double r1,
                                              double r2);

}  // namespace plembed
