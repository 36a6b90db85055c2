#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "plembed/errors.hpp"

namespace plembed {

using Face = std::array<int, 3>;

// Canonical key for an undirected edge.
inline std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

using EdgeLengthTable = std::unordered_map<std::uint64_t, double>;

struct Edge {
  int u = -1, v = -1;  // endpoints, u < v
  double length = 0.0;
  std::array<int, 2> face = {-1, -1};
  int face_count = 0;
  bool boundary() const { return face_count == 1; }
};

struct MeshTopologyReport {
  int vertex_count = 0;
  int edge_count = 0;
  int face_count = 0;
  int euler_characteristic = 0;
  bool orientable = false;
  int boundary_component_count = 0;
};

// Triangulated surface carrying an intrinsic PL metric: geometry lives in the
// per-edge lengths, never in coordinates. Each face is isometric to the
// Euclidean triangle with its three edge lengths. Identified vertices (e.g.
// the flat torus) are represented by index aliasing at build time, so a
// vertex pair names at most one edge.
//
// Construction validates: positive finite lengths, strict triangle inequality
// on every face, at most two faces per edge, no isolated vertices, and
// connectedness. Orientability is decided and recorded, not enforced.
class PLSurface {
 public:
  PLSurface(int vertex_count, std::vector<Face> faces,
            const EdgeLengthTable& lengths);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }

  int edge_index(int u, int v) const;  // -1 if absent
  double edge_length(int u, int v) const;

  // Faces incident to a vertex (unordered).
  const std::vector<int>& incident_faces(int v) const { return vertex_faces_[v]; }

  // Interior angle of face f at its k-th corner (law of cosines, clamped).
  double corner_angle(int f, int k) const { return corner_angles_[f][k]; }

  // Sum of corner angles of all faces incident to v.
  double total_vertex_angle(int v) const;

  bool vertex_on_boundary(int v) const { return vertex_boundary_[v]; }
  bool closed() const { return closed_; }
  bool orientable() const { return orientable_; }
  int boundary_component_count() const { return boundary_components_; }

  // Consistently oriented copy of the face list. Only defined for orientable
  // surfaces; the global flip is arbitrary (embedded meshes canonicalize it
  // by signed volume).
  const std::vector<Face>& oriented_faces() const;

  MeshTopologyReport topology_report() const;

 private:
  int vertex_count_ = 0;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, int> edge_index_;
  std::vector<std::vector<int>> vertex_faces_;
  std::vector<bool> vertex_boundary_;
  std::vector<std::array<double, 3>> corner_angles_;
  std::vector<Face> oriented_faces_;
  bool orientable_ = false;
  bool closed_ = false;
  int boundary_components_ = 0;
};

// Build a PL surface from a face list and an edge-length table. The table
// must cover every edge referenced by a face; extra entries are rejected.
PLSurface build_pl_surface(int vertex_count, const std::vector<Face>& faces,
                           const EdgeLengthTable& lengths);

// Convenience builder: per-face length triples (|v0v1|, |v1v2|, |v2v0|).
// Lengths given twice for a shared edge must agree to 1e-12 relative.
PLSurface build_pl_surface(int vertex_count, const std::vector<Face>& faces,
                           const std::vector<std::array<double, 3>>& face_lengths);

// Vertex coordinates in R^n (n >= 2) plus a face list; the intrinsic metric
// is derived from Euclidean edge lengths and validated on construction.
class EmbeddedMesh {
 public:
  EmbeddedMesh(Eigen::MatrixXd coords, std::vector<Face> faces);

  int vertex_count() const { return static_cast<int>(coords_.rows()); }
  int dimension() const { return static_cast<int>(coords_.cols()); }
  const Eigen::MatrixXd& coords() const { return coords_; }
  Eigen::VectorXd point(int v) const { return coords_.row(v); }
  const std::vector<Face>& faces() const { return surface_.faces(); }
  const PLSurface& surface() const { return surface_; }

  // Sum of signed tetrahedron volumes over consistently oriented faces.
  // Requires a closed orientable surface in R^3.
  double signed_volume() const;

  // Consistently oriented faces with outward orientation for closed meshes
  // in R^3 (positive signed volume); the BFS orientation otherwise.
  std::vector<Face> outward_faces() const;

 private:
  Eigen::MatrixXd coords_;
  PLSurface surface_;
};

MeshTopologyReport topology_report(const PLSurface& s);
inline MeshTopologyReport topology_report(const EmbeddedMesh& m) {
  return m.surface().topology_report();
}

// ---- stock intrinsic constructions ----

// k x k unit square grid with both side pairs identified: every cell is split
// by a sqrt(2) diagonal. V = k^2, E = 3k^2, F = 2k^2, chi = 0, every vertex
// flat. Requires k >= 3 so vertex pairs name edges uniquely.
PLSurface make_flat_torus_grid(int k);

}  // namespace plembed
