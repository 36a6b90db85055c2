#include "meshgen.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

namespace meshgen {

using Eigen::MatrixXd;
using plembed::EmbeddedMesh;
using plembed::Face;
using plembed::PLSurface;

namespace {
constexpr double kPi = std::numbers::pi;
}

EmbeddedMesh cube() {
  MatrixXd c(8, 3);
  c << 0, 0, 0,  1, 0, 0,  1, 1, 0,  0, 1, 0,
       0, 0, 1,  1, 0, 1,  1, 1, 1,  0, 1, 1;
  std::vector<Face> f = {
      {0, 3, 1}, {3, 2, 1},  // bottom
      {4, 5, 7}, {5, 6, 7},  // top
      {0, 1, 4}, {1, 5, 4},  // front
      {1, 2, 5}, {2, 6, 5},  // right
      {2, 3, 7}, {2, 7, 6},  // back
      {0, 4, 3}, {4, 7, 3},  // left
  };
  return EmbeddedMesh(std::move(c), std::move(f));
}

EmbeddedMesh tetrahedron() {
  MatrixXd c(4, 3);
  c << 1, 1, 1,  1, -1, -1,  -1, 1, -1,  -1, -1, 1;
  std::vector<Face> f = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return EmbeddedMesh(std::move(c), std::move(f));
}

EmbeddedMesh octahedron() {
  MatrixXd c(6, 3);
  c << 1, 0, 0,  -1, 0, 0,  0, 1, 0,  0, -1, 0,  0, 0, 1,  0, 0, -1;
  std::vector<Face> f = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                         {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return EmbeddedMesh(std::move(c), std::move(f));
}

EmbeddedMesh icosahedron() {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  MatrixXd c(12, 3);
  c << -1,  p,  0,   1,  p,  0,  -1, -p,  0,   1, -p,  0,
        0, -1,  p,   0,  1,  p,   0, -1, -p,   0,  1, -p,
        p,  0, -1,   p,  0,  1,  -p,  0, -1,  -p,  0,  1;
  c /= std::sqrt(1.0 + p * p);
  std::vector<Face> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return EmbeddedMesh(std::move(c), std::move(f));
}

EmbeddedMesh icosphere(int level) {
  EmbeddedMesh base = icosahedron();
  std::vector<Eigen::Vector3d> verts;
  verts.reserve(12);
  for (int v = 0; v < base.vertex_count(); ++v) verts.push_back(base.point(v));
  std::vector<Face> faces = base.faces();

  for (int pass = 0; pass < level; ++pass) {
    std::map<std::uint64_t, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = plembed::edge_key(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d m = (verts[a] + verts[b]).normalized();
      verts.push_back(m);
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<Face> next;
    next.reserve(faces.size() * 4);
    for (const Face& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  MatrixXd c(static_cast<int>(verts.size()), 3);
  for (size_t v = 0; v < verts.size(); ++v) c.row(v) = verts[v];
  return EmbeddedMesh(std::move(c), std::move(faces));
}

EmbeddedMesh torus(double R, double r, int nu, int nv) {
  MatrixXd c(nu * nv, 3);
  for (int i = 0; i < nu; ++i) {
    const double a = 2.0 * kPi * i / nu;
    for (int j = 0; j < nv; ++j) {
      const double b = 2.0 * kPi * j / nv;
      c.row(i * nv + j) << (R + r * std::cos(b)) * std::cos(a),
          (R + r * std::cos(b)) * std::sin(a), r * std::sin(b);
    }
  }
  std::vector<Face> f;
  f.reserve(2 * nu * nv);
  for (int i = 0; i < nu; ++i) {
    const int i2 = (i + 1) % nu;
    for (int j = 0; j < nv; ++j) {
      const int j2 = (j + 1) % nv;
      const int a = i * nv + j, b = i2 * nv + j, cc = i2 * nv + j2, d = i * nv + j2;
      f.push_back({a, b, cc});
      f.push_back({a, cc, d});
    }
  }
  return EmbeddedMesh(std::move(c), std::move(f));
}

EmbeddedMesh open_box() {
  EmbeddedMesh full = cube();
  MatrixXd c = full.coords();
  std::vector<Face> f = full.faces();
  // drop the two top faces {4,5,7}, {5,6,7}
  f.erase(f.begin() + 2, f.begin() + 4);
  return EmbeddedMesh(std::move(c), std::move(f));
}

EmbeddedMesh wedge_prism(double angle, double height) {
  MatrixXd c(6, 3);
  c << 0, 0, 0,
       1, 0, 0,
       std::cos(angle), std::sin(angle), 0,
       0, 0, height,
       1, 0, height,
       std::cos(angle), std::sin(angle), height;
  std::vector<Face> f = {
      {0, 2, 1}, {3, 4, 5},
      {0, 1, 4}, {0, 4, 3},
      {1, 2, 5}, {1, 5, 4},
      {2, 0, 3}, {2, 3, 5},
  };
  return EmbeddedMesh(std::move(c), std::move(f));
}

EmbeddedMesh grid_patch(int k) {
  const int side = k + 1;
  MatrixXd c(side * side, 3);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) c.row(i * side + j) << i, j, 0;
  std::vector<Face> f;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const int a = i * side + j, b = (i + 1) * side + j;
      f.push_back({a, b, b + 1});
      f.push_back({a, b + 1, a + 1});
    }
  return EmbeddedMesh(std::move(c), std::move(f));
}

EmbeddedMesh scaled(const EmbeddedMesh& m, double factor) {
  MatrixXd c = m.coords() * factor;
  return EmbeddedMesh(std::move(c), m.faces());
}

PLSurface cone_star(double theta, int rays) {
  const double apex = theta / rays;
  const double base = 2.0 * std::sin(apex / 2.0);
  std::vector<Face> faces;
  std::vector<std::array<double, 3>> lengths;
  for (int i = 1; i <= rays; ++i) {
    const int next = i == rays ? 1 : i + 1;
    faces.push_back({0, i, next});
    lengths.push_back({1.0, base, 1.0});
  }
  return plembed::build_pl_surface(rays + 1, faces, lengths);
}

}  // namespace meshgen
