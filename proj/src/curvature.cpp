#include "plembed/curvature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

namespace plembed {

namespace {

constexpr double kPi = std::numbers::pi;

void fill_defects(const PLSurface& s, CurvatureReport& r) {
  r.defects.resize(s.vertex_count());
  double total = 0.0;
  for (int v = 0; v < s.vertex_count(); ++v) {
    VertexDefect& d = r.defects[v];
    d.vertex = v;
    d.boundary = s.vertex_on_boundary(v);
    double full = d.boundary ? kPi : 2.0 * kPi;
    d.defect = full - s.total_vertex_angle(v);
    total += d.defect;
  }
  MeshTopologyReport topo = s.topology_report();
  r.defect_total = total;
  r.two_pi_chi = 2.0 * kPi * topo.euler_characteristic;
  r.gauss_bonnet_residual = std::abs(total - r.two_pi_chi);
}

}  // namespace

CurvatureReport angle_defects(const PLSurface& s) {
  CurvatureReport r;
  fill_defects(s, r);
  return r;
}

double gauss_bonnet_check(const PLSurface& s) {
  if (!s.closed())
    throw ValidationError(
        "gauss-bonnet check is defined here for closed surfaces only");
  CurvatureReport r = angle_defects(s);
  return r.defect_total - r.two_pi_chi;
}

CurvatureReport dihedral_data(const EmbeddedMesh& m) {
  if (m.dimension() != 3)
    throw ValidationError("dihedral data requires a mesh in R^3");
  const PLSurface& s = m.surface();
  CurvatureReport r;
  fill_defects(s, r);

  std::vector<Face> faces = m.outward_faces();
  const Eigen::MatrixXd& c = m.coords();
  auto normal = [&](int f) {
    Eigen::Vector3d a = c.row(faces[f][0]), b = c.row(faces[f][1]),
                    d = c.row(faces[f][2]);
    return Eigen::Vector3d((b - a).cross(d - a).normalized());
  };
  auto has_directed = [&](int f, int u, int v) {
    for (int k = 0; k < 3; ++k)
      if (faces[f][k] == u && faces[f][(k + 1) % 3] == v) return true;
    return false;
  };

  const std::vector<Edge>& edges = s.edges();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const Edge& ed = edges[e];
    if (ed.boundary()) {
      r.skipped_boundary_edges.push_back(e);
      continue;
    }
    // Orient the edge as it appears in its first incident face.
    int f1 = ed.face[0], f2 = ed.face[1];
    int u = ed.u, v = ed.v;
    if (!has_directed(f1, u, v)) std::swap(u, v);
    Eigen::Vector3d axis =
        (Eigen::Vector3d(c.row(v)) - Eigen::Vector3d(c.row(u))).normalized();
    Eigen::Vector3d n1 = normal(f1), n2 = normal(f2);
    // Signed exterior (bending) angle; convex edges bend positively.
    double exterior = std::atan2(n1.cross(n2).dot(axis), n1.dot(n2));
    EdgeDihedral d;
    d.edge = e;
    d.u = ed.u;
    d.v = ed.v;
    d.length = ed.length;
    d.dihedral = kPi - exterior;
    d.measure = ed.length * exterior;
    r.dihedrals.push_back(d);
  }
  return r;
}

ExtremalVertexCheck extremal_vertex_defect_check(const EmbeddedMesh& m) {
  if (!m.surface().closed())
    throw ValidationError(
        "extremal vertex check is defined for closed meshes only");
  const Eigen::MatrixXd& c = m.coords();
  Eigen::RowVectorXd centroid = c.colwise().mean();
  ExtremalVertexCheck r;
  for (int v = 0; v < m.vertex_count(); ++v) {
    double dist = (c.row(v) - centroid).norm();
    if (dist > r.distance) {
      r.distance = dist;
      r.vertex = v;
    }
  }
  r.defect = 2.0 * std::numbers::pi - m.surface().total_vertex_angle(r.vertex);
  r.pass = r.defect > 0.0;
  return r;
}

}  // namespace plembed
