#pragma once

#include <array>
#include <optional>
#include <vector>

#include "plembed/mesh.hpp"

namespace plembed {

struct DistanceField {
  int source = 0;
  int refine = 0;
  std::vector<double> distance;  // indexed by original vertex
};

struct Net {
  std::vector<int> landmarks;     // greedy order, landmarks[0] == 0
  double covering_radius = 0.0;   // max over vertices of distance to the set
  std::optional<double> requested_epsilon;
  std::optional<int> requested_count;
};

struct ShortMapReport {
  double max_ratio = 0.0;          // smallest C with rho(f x, f y) <= C d(x,y)
  bool is_short = false;           // max_ratio < 1
  std::array<int, 2> witness = {-1, -1};
  int pair_count = 0;
};

// Shortest-path engine over a refined surface graph.
//
// Each face is laid out flat and covered by the triangular grid obtained from
// `refine` passes of 4-to-1 midpoint subdivision (2^refine segments per
// edge). Grid nodes on a shared edge are shared between faces. The graph
// connects every pair of nodes that lie on a common original face by the
// straight segment between them inside that face; segments are intrinsic
// lengths, so graph distances over-approximate geodesic distances and are
// monotone non-increasing in `refine`. Plain 1-skeleton paths (refine 0 has
// only the mesh edges) cannot bend inside faces and do not converge to
// geodesics, which is why the within-face segments are part of the graph.
class DistanceEngine {
 public:
  DistanceEngine(const PLSurface& s, int refine);

  DistanceField field_from(int source_vertex) const;
  int refine() const { return refine_; }
  int base_vertex_count() const { return base_vertices_; }
  int node_count() const { return static_cast<int>(adjacency_.size()); }

 private:
  int refine_ = 0;
  int base_vertices_ = 0;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

// Distances from one source vertex; refine >= 0 (each level quadruples the
// face count of the underlying grid; levels above 8 are rejected).
DistanceField distance_field(const PLSurface& s, int source, int refine);

// Greedy farthest-point sampling seeded at vertex 0, ties to the lowest
// index. The epsilon variant stops once the covering radius is <= eps; the
// count variant stops at m landmarks (1 <= m <= vertex count).
Net farthest_point_net_epsilon(const PLSurface& s, double eps, int refine);
Net farthest_point_net_count(const PLSurface& s, int m, int refine);

// Smallest C with d_target(f x, f y) <= C d_source(x, y) over all vertex
// pairs; the map is short when C < 1. vertex_map[i] names the target vertex
// for source vertex i.
ShortMapReport short_map_check(const PLSurface& source, const PLSurface& target,
                               const std::vector<int>& vertex_map, int refine);

}  // namespace plembed
