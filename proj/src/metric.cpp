#include "plembed/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <Eigen/Core>

namespace plembed {

namespace {

// 2-d layout of a face from its edge lengths: v0 at the origin, v1 on the
// positive x-axis, v2 above it.
std::array<Eigen::Vector2d, 3> face_layout(double l01, double l12, double l20) {
  double x = (l01 * l01 + l20 * l20 - l12 * l12) / (2.0 * l01);
  double y = std::sqrt(std::max(0.0, l20 * l20 - x * x));
  return {Eigen::Vector2d(0, 0), Eigen::Vector2d(l01, 0),
          Eigen::Vector2d(x, y)};
}

}  // namespace

DistanceEngine::DistanceEngine(const PLSurface& s, int refine)
    : refine_(refine), base_vertices_(s.vertex_count()) {
  if (refine < 0) throw ValidationError("refine must be >= 0");
  if (refine > 8)
    throw ValidationError("refine > 8 would build an excessive graph");
  const int n = 1 << refine;
  const int V = s.vertex_count();
  const int E = static_cast<int>(s.edges().size());
  const int per_edge = n - 1;                    // interior nodes per edge
  const int per_face = (n - 1) * (n - 2) / 2;    // interior nodes per face
  const int F = static_cast<int>(s.faces().size());
  adjacency_.resize(V + E * per_edge + F * per_face);

  auto add = [&](int a, int b, double len) {
    adjacency_[a].push_back({b, len});
    adjacency_[b].push_back({a, len});
  };

  // Chords along each original edge: straight sub-segments, all pairs so the
  // full edge keeps its exact length as a single arc.
  for (int e = 0; e < E; ++e) {
    const Edge& ed = s.edges()[e];
    auto node = [&](int step) {  // step 0..n from ed.u
      if (step == 0) return ed.u;
      if (step == n) return ed.v;
      return V + e * per_edge + (step - 1);
    };
    for (int p = 0; p <= n; ++p)
      for (int q = p + 1; q <= n; ++q)
        add(node(p), node(q), ed.length * (q - p) / n);
  }

  // Within-face chords between all grid nodes not sharing an original edge.
  for (int f = 0; f < F; ++f) {
    const Face& fc = s.faces()[f];
    double l01 = s.edge_length(fc[0], fc[1]);
    double l12 = s.edge_length(fc[1], fc[2]);
    double l20 = s.edge_length(fc[2], fc[0]);
    auto P = face_layout(l01, l12, l20);

    auto edge_node = [&](int a, int b, int step_from_a) {
      int e = s.edge_index(a, b);
      const Edge& ed = s.edges()[e];
      int step = ed.u == a ? step_from_a : n - step_from_a;
      if (step == 0) return ed.u;
      if (step == n) return ed.v;
      return V + e * per_edge + (step - 1);
    };

    int interior_seen = 0;
    auto node_id = [&](int i, int j) {
      if (i == 0 && j == 0) return fc[0];
      if (i == n && j == 0) return fc[1];
      if (i == 0 && j == n) return fc[2];
      if (j == 0) return edge_node(fc[0], fc[1], i);
      if (i == 0) return edge_node(fc[0], fc[2], j);
      if (i + j == n) return edge_node(fc[1], fc[2], j);
      return V + E * per_edge + f * per_face + interior_seen++;
    };

    // Tag nodes with the boundary sides they sit on, to skip pairs already
    // covered by the edge chords above.
    struct Tagged {
      int id;
      Eigen::Vector2d pos;
      bool on01, on02, on12;
    };
    std::vector<Tagged> grid;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; i + j <= n; ++j) {
        Eigen::Vector2d pos =
            P[0] + (P[1] - P[0]) * (double(i) / n) + (P[2] - P[0]) * (double(j) / n);
        grid.push_back({node_id(i, j), pos, j == 0, i == 0, i + j == n});
      }
    }
    for (size_t a = 0; a < grid.size(); ++a) {
      for (size_t b = a + 1; b < grid.size(); ++b) {
        const Tagged& x = grid[a];
        const Tagged& y = grid[b];
        if ((x.on01 && y.on01) || (x.on02 && y.on02) || (x.on12 && y.on12))
          continue;
        add(x.id, y.id, (x.pos - y.pos).norm());
      }
    }
  }
}

DistanceField DistanceEngine::field_from(int source_vertex) const {
  if (source_vertex < 0 || source_vertex >= base_vertices_)
    throw ValidationError("source vertex " + std::to_string(source_vertex) +
                          " out of range");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(adjacency_.size(), inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source_vertex] = 0.0;
  heap.push({0.0, source_vertex});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (auto [w, len] : adjacency_[v]) {
      double nd = d + len;
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.push({nd, w});
      }
    }
  }
  DistanceField field;
  field.source = source_vertex;
  field.refine = refine_;
  field.distance.assign(dist.begin(), dist.begin() + base_vertices_);
  for (int v = 0; v < base_vertices_; ++v)
    if (!std::isfinite(field.distance[v]))
      throw NumericError("vertex " + std::to_string(v) +
                         " unreachable from source " +
                         std::to_string(source_vertex));
  return field;
}

DistanceField distance_field(const PLSurface& s, int source, int refine) {
  return DistanceEngine(s, refine).field_from(source);
}

namespace {

Net greedy_net(const PLSurface& s, std::optional<double> eps,
               std::optional<int> count, int refine) {
  DistanceEngine engine(s, refine);
  const int V = s.vertex_count();
  Net net;
  net.requested_epsilon = eps;
  net.requested_count = count;
  net.landmarks.push_back(0);
  std::vector<double> nearest = engine.field_from(0).distance;
  while (true) {
    int far = 0;
    for (int v = 1; v < V; ++v)
      if (nearest[v] > nearest[far]) far = v;  // strict: ties keep lowest index
    net.covering_radius = nearest[far];
    if (eps && net.covering_radius <= *eps) break;
    if (count && static_cast<int>(net.landmarks.size()) >= *count) break;
    if (net.covering_radius == 0.0) break;  // vertex set exhausted
    net.landmarks.push_back(far);
    DistanceField f = engine.field_from(far);
    for (int v = 0; v < V; ++v) nearest[v] = std::min(nearest[v], f.distance[v]);
  }
  return net;
}

}  // namespace

Net farthest_point_net_epsilon(const PLSurface& s, double eps, int refine) {
  if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");
  return greedy_net(s, eps, std::nullopt, refine);
}

Net farthest_point_net_count(const PLSurface& s, int m, int refine) {
  if (m < 1) throw ValidationError("landmark count must be >= 1");
  if (m > s.vertex_count())
    throw ValidationError("landmark count " + std::to_string(m) +
                          " exceeds vertex count " +
                          std::to_string(s.vertex_count()));
  return greedy_net(s, std::nullopt, m, refine);
}

ShortMapReport short_map_check(const PLSurface& source, const PLSurface& target,
                               const std::vector<int>& vertex_map, int refine) {
  const int V = source.vertex_count();
  if (static_cast<int>(vertex_map.size()) != V)
    throw ValidationError("vertex map must name a target for every source vertex");
  for (int v = 0; v < V; ++v)
    if (vertex_map[v] < 0 || vertex_map[v] >= target.vertex_count())
      throw ValidationError("vertex map sends " + std::to_string(v) +
                            " to missing target vertex " +
                            std::to_string(vertex_map[v]));

  DistanceEngine src_engine(source, refine);
  DistanceEngine dst_engine(target, refine);

  // One field per distinct mapped target vertex.
  std::vector<int> dst_field_index(target.vertex_count(), -1);
  std::vector<DistanceField> dst_fields;
  for (int v = 0; v < V; ++v) {
    int t = vertex_map[v];
    if (dst_field_index[t] < 0) {
      dst_field_index[t] = static_cast<int>(dst_fields.size());
      dst_fields.push_back(dst_engine.field_from(t));
    }
  }

  ShortMapReport report;
  for (int x = 0; x < V; ++x) {
    DistanceField fx = src_engine.field_from(x);
    const DistanceField& gx = dst_fields[dst_field_index[vertex_map[x]]];
    for (int y = x + 1; y < V; ++y) {
      double d = fx.distance[y];
      if (d == 0.0)
        throw ValidationError("vertices " + std::to_string(x) + " and " +
                              std::to_string(y) +
                              " are at distance zero (degenerate metric)");
      double ratio = gx.distance[vertex_map[y]] / d;
      ++report.pair_count;
      if (ratio > report.max_ratio) {
        report.max_ratio = ratio;
        report.witness = {x, y};
      }
    }
  }
  report.is_short = report.max_ratio < 1.0;
  return report;
}

}  // namespace plembed
