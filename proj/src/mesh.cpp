#include "plembed/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include <Eigen/Geometry>

namespace plembed {

namespace {

std::string edge_name(int u, int v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

PLSurface::PLSurface(int vertex_count, std::vector<Face> faces,
                     const EdgeLengthTable& lengths)
    : vertex_count_(vertex_count), faces_(std::move(faces)) {
  if (vertex_count_ <= 0)
    throw ValidationError("surface needs at least one vertex");
  if (faces_.empty()) throw ValidationError("surface needs at least one face");

  // Face sanity and edge assembly.
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
    const Face& fc = faces_[f];
    for (int k = 0; k < 3; ++k) {
      if (fc[k] < 0 || fc[k] >= vertex_count_)
        throw ValidationError("face " + std::to_string(f) +
                              " references missing vertex " +
                              std::to_string(fc[k]));
    }
    if (fc[0] == fc[1] || fc[1] == fc[2] || fc[2] == fc[0])
      throw ValidationError("face " + std::to_string(f) +
                            " repeats a vertex (degenerate)");
    for (int k = 0; k < 3; ++k) {
      int u = fc[k], v = fc[(k + 1) % 3];
      std::uint64_t key = edge_key(u, v);
      auto it = edge_index_.find(key);
      int e;
      if (it == edge_index_.end()) {
        e = static_cast<int>(edges_.size());
        edge_index_.emplace(key, e);
        Edge ed;
        ed.u = std::min(u, v);
        ed.v = std::max(u, v);
        edges_.push_back(ed);
      } else {
        e = it->second;
      }
      Edge& ed = edges_[e];
      if (ed.face_count >= 2)
        throw ValidationError("edge " + edge_name(ed.u, ed.v) +
                              " borders more than two faces (non-manifold), "
                              "third is face " + std::to_string(f));
      ed.face[ed.face_count++] = f;
    }
  }

  // Lengths: every edge covered, nothing extra, all positive and finite.
  if (lengths.size() != edges_.size())
    throw ValidationError("edge-length table has " +
                          std::to_string(lengths.size()) + " entries, surface has " +
                          std::to_string(edges_.size()) + " edges");
  for (Edge& ed : edges_) {
    auto it = lengths.find(edge_key(ed.u, ed.v));
    if (it == lengths.end())
      throw ValidationError("missing length for edge " + edge_name(ed.u, ed.v));
    ed.length = it->second;
    if (!(std::isfinite(ed.length) && ed.length > 0.0))
      throw ValidationError("edge " + edge_name(ed.u, ed.v) +
                            " has non-positive or non-finite length");
  }

  // Strict triangle inequality per face, then corner angles.
  corner_angles_.resize(faces_.size());
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
    const Face& fc = faces_[f];
    double l01 = edge_length(fc[0], fc[1]);
    double l12 = edge_length(fc[1], fc[2]);
    double l20 = edge_length(fc[2], fc[0]);
    if (!(l01 + l12 > l20 && l12 + l20 > l01 && l20 + l01 > l12))
      throw ValidationError("face " + std::to_string(f) +
                            " violates the strict triangle inequality (" +
                            std::to_string(l01) + ", " + std::to_string(l12) +
                            ", " + std::to_string(l20) + ")");
    auto angle = [](double a, double b, double opp) {
      double c = (a * a + b * b - opp * opp) / (2.0 * a * b);
      return std::acos(std::clamp(c, -1.0, 1.0));
    };
    corner_angles_[f] = {angle(l01, l20, l12), angle(l01, l12, l20),
                         angle(l12, l20, l01)};
  }

  // Vertex incidence; isolated vertices are rejected.
  vertex_faces_.resize(vertex_count_);
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f)
    for (int k = 0; k < 3; ++k) vertex_faces_[faces_[f][k]].push_back(f);
  for (int v = 0; v < vertex_count_; ++v)
    if (vertex_faces_[v].empty())
      throw ValidationError("vertex " + std::to_string(v) +
                            " is isolated (no incident face)");

  // Boundary flags.
  vertex_boundary_.assign(vertex_count_, false);
  closed_ = true;
  for (const Edge& ed : edges_) {
    if (ed.boundary()) {
      closed_ = false;
      vertex_boundary_[ed.u] = vertex_boundary_[ed.v] = true;
    }
  }

  // Connectedness over the edge graph.
  {
    std::vector<char> seen(vertex_count_, 0);
    std::deque<int> queue{edges_[0].u};
    seen[edges_[0].u] = 1;
    std::vector<std::vector<int>> nbr(vertex_count_);
    for (const Edge& ed : edges_) {
      nbr[ed.u].push_back(ed.v);
      nbr[ed.v].push_back(ed.u);
    }
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : nbr[v])
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
    for (int v = 0; v < vertex_count_; ++v)
      if (!seen[v])
        throw ValidationError("surface is disconnected (vertex " +
                              std::to_string(v) + " unreachable from vertex " +
                              std::to_string(edges_[0].u) + ")");
  }

  // Orientability: propagate a consistent orientation across shared edges.
  {
    oriented_faces_ = faces_;
    std::vector<int> state(faces_.size(), 0);  // 0 unvisited, 1 kept, 2 flipped
    orientable_ = true;
    auto directed = [](const Face& fc, int u, int v) {
      for (int k = 0; k < 3; ++k)
        if (fc[k] == u && fc[(k + 1) % 3] == v) return true;
      return false;
    };
    std::deque<int> queue{0};
    state[0] = 1;
    while (!queue.empty() && orientable_) {
      int f = queue.front();
      queue.pop_front();
      const Face& fc = oriented_faces_[f];
      for (int k = 0; k < 3 && orientable_; ++k) {
        int u = fc[k], v = fc[(k + 1) % 3];
        const Edge& ed = edges_[edge_index_.at(edge_key(u, v))];
        int g = ed.face[0] == f ? ed.face[1] : ed.face[0];
        if (g < 0) continue;
        // Consistency: the neighbour must traverse the shared edge as v->u.
        bool needs_flip = directed(oriented_faces_[g], u, v);
        if (state[g] == 0) {
          if (needs_flip) {
            std::swap(oriented_faces_[g][1], oriented_faces_[g][2]);
            state[g] = 2;
          } else {
            state[g] = 1;
          }
          queue.push_back(g);
        } else if (directed(oriented_faces_[g], u, v)) {
          orientable_ = false;  // conflict: same direction on both sides
        }
      }
    }
    // Faces form one connected complex (vertex connectivity was checked; a
    // complex connected only through vertices still yields unvisited faces).
    for (size_t f = 0; f < faces_.size(); ++f)
      if (state[f] == 0)
        throw ValidationError("face " + std::to_string(f) +
                              " is connected to the rest only through a "
                              "vertex (pinched complex)");
    if (!orientable_) oriented_faces_.clear();
  }

  // Boundary components: count cycles formed by boundary edges.
  {
    std::vector<std::vector<int>> bnbr(vertex_count_);
    for (const Edge& ed : edges_)
      if (ed.boundary()) {
        bnbr[ed.u].push_back(ed.v);
        bnbr[ed.v].push_back(ed.u);
      }
    std::vector<char> seen(vertex_count_, 0);
    boundary_components_ = 0;
    for (int v = 0; v < vertex_count_; ++v) {
      if (bnbr[v].empty() || seen[v]) continue;
      ++boundary_components_;
      std::deque<int> queue{v};
      seen[v] = 1;
      while (!queue.empty()) {
        int w = queue.front();
        queue.pop_front();
        for (int x : bnbr[w])
          if (!seen[x]) {
            seen[x] = 1;
            queue.push_back(x);
          }
      }
    }
  }
}

int PLSurface::edge_index(int u, int v) const {
  auto it = edge_index_.find(edge_key(u, v));
  return it == edge_index_.end() ? -1 : it->second;
}

double PLSurface::edge_length(int u, int v) const {
  int e = edge_index(u, v);
  if (e < 0)
    throw ValidationError("no edge " + edge_name(u, v) + " in surface");
  return edges_[e].length;
}

double PLSurface::total_vertex_angle(int v) const {
  if (v < 0 || v >= vertex_count_)
    throw ValidationError("vertex " + std::to_string(v) + " out of range");
  double total = 0.0;
  for (int f : vertex_faces_[v]) {
    const Face& fc = faces_[f];
    for (int k = 0; k < 3; ++k)
      if (fc[k] == v) total += corner_angles_[f][k];
  }
  return total;
}

const std::vector<Face>& PLSurface::oriented_faces() const {
  if (!orientable_)
    throw ValidationError("surface is non-orientable; no consistent orientation");
  return oriented_faces_;
}

MeshTopologyReport PLSurface::topology_report() const {
  MeshTopologyReport r;
  r.vertex_count = vertex_count_;
  r.edge_count = static_cast<int>(edges_.size());
  r.face_count = static_cast<int>(faces_.size());
  r.euler_characteristic = r.vertex_count - r.edge_count + r.face_count;
  r.orientable = orientable_;
  r.boundary_component_count = boundary_components_;
  return r;
}

PLSurface build_pl_surface(int vertex_count, const std::vector<Face>& faces,
                           const EdgeLengthTable& lengths) {
  return PLSurface(vertex_count, faces, lengths);
}

PLSurface build_pl_surface(int vertex_count, const std::vector<Face>& faces,
                           const std::vector<std::array<double, 3>>& face_lengths) {
  if (face_lengths.size() != faces.size())
    throw ValidationError("need one length triple per face");
  EdgeLengthTable table;
  for (size_t f = 0; f < faces.size(); ++f) {
    for (int k = 0; k < 3; ++k) {
      int u = faces[f][k], v = faces[f][(k + 1) % 3];
      double len = face_lengths[f][k];
      auto [it, inserted] = table.emplace(edge_key(u, v), len);
      if (!inserted) {
        double prev = it->second;
        if (std::abs(prev - len) > 1e-12 * std::max(1.0, std::abs(prev)))
          throw ValidationError("edge " + edge_name(u, v) +
                                " given inconsistent lengths " +
                                std::to_string(prev) + " and " +
                                std::to_string(len));
      }
    }
  }
  return PLSurface(vertex_count, faces, table);
}

EmbeddedMesh::EmbeddedMesh(Eigen::MatrixXd coords, std::vector<Face> faces)
    : coords_(std::move(coords)),
      surface_([&] {
        if (coords_.cols() < 2)
          throw ValidationError("embedded mesh needs ambient dimension >= 2");
        EdgeLengthTable table;
        for (const Face& fc : faces) {
          for (int k = 0; k < 3; ++k) {
            int u = fc[k], v = fc[(k + 1) % 3];
            if (u < 0 || u >= coords_.rows() || v < 0 || v >= coords_.rows())
              throw ValidationError("face references missing vertex " +
                                    std::to_string(u < 0 || u >= coords_.rows() ? u : v));
            table.emplace(edge_key(u, v),
                          (coords_.row(u) - coords_.row(v)).norm());
          }
        }
        return PLSurface(static_cast<int>(coords_.rows()), std::move(faces),
                         table);
      }()) {}

double EmbeddedMesh::signed_volume() const {
  if (dimension() != 3)
    throw ValidationError("signed volume requires ambient dimension 3");
  if (!surface_.closed())
    throw ValidationError("signed volume requires a closed surface");
  double vol = 0.0;
  for (const Face& fc : surface_.oriented_faces()) {
    Eigen::Vector3d a = coords_.row(fc[0]), b = coords_.row(fc[1]),
                    c = coords_.row(fc[2]);
    vol += a.dot(b.cross(c)) / 6.0;
  }
  return vol;
}

std::vector<Face> EmbeddedMesh::outward_faces() const {
  std::vector<Face> oriented = surface_.oriented_faces();
  if (dimension() == 3 && surface_.closed()) {
    double vol = 0.0;
    for (const Face& fc : oriented) {
      Eigen::Vector3d a = coords_.row(fc[0]), b = coords_.row(fc[1]),
                      c = coords_.row(fc[2]);
      vol += a.dot(b.cross(c)) / 6.0;
    }
    if (vol < 0.0)
      for (Face& fc : oriented) std::swap(fc[1], fc[2]);
  }
  return oriented;
}

MeshTopologyReport topology_report(const PLSurface& s) {
  return s.topology_report();
}

PLSurface make_flat_torus_grid(int k) {
  if (k < 3)
    throw ValidationError("flat torus grid needs k >= 3 (unique vertex pairs)");
  auto vid = [k](int i, int j) {
    return ((i % k + k) % k) * k + ((j % k + k) % k);
  };
  std::vector<Face> faces;
  std::vector<std::array<double, 3>> lengths;
  const double diag = std::numbers::sqrt2;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1),
          d = vid(i, j + 1);
      faces.push_back({a, b, c});
      lengths.push_back({1.0, 1.0, diag});
      faces.push_back({a, c, d});
      lengths.push_back({diag, 1.0, 1.0});
    }
  }
  return build_pl_surface(k * k, faces, lengths);
}

}  // namespace plembed
