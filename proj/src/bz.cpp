#include "plembed/bz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "plembed/qc.hpp"
#include "plembed/rng.hpp"

namespace plembed {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

ConeFlatteningMap::ConeFlatteningMap(double theta, double lambda, double scale)
    : theta(theta), lambda(lambda), scale(scale) {
  if (!(theta > 0.0)) throw ValidationError("cone angle must be positive");
  if (!(lambda > 0.0)) throw ValidationError("target angle must be positive");
  if (!(scale > 0.0)) throw ValidationError("scale must be positive");
}

Eigen::Vector2d ConeFlatteningMap::apply_polar(double rho, double phi) const {
  if (rho < 0.0) throw ValidationError("negative radius");
  double p = lambda / theta;
  return {scale * std::pow(rho, p), p * phi};
}

ConeLayout flatten_cone_vertex(const PLSurface& s, int vertex, double lambda,
                               double scale) {
  if (vertex < 0 || vertex >= s.vertex_count())
    throw ValidationError("vertex " + std::to_string(vertex) + " out of range");
  const std::vector<int>& star = s.incident_faces(vertex);

  // One link edge per incident face, between the two corners other than the
  // center. A fan star makes these into a single path (boundary vertex) or a
  // single cycle (interior vertex).
  std::map<int, std::vector<int>> link;  // ring vertex -> incident face list
  for (int f : star) {
    const Face& fc = s.faces()[f];
    for (int k = 0; k < 3; ++k) {
      if (fc[k] == vertex) continue;
      link[fc[k]].push_back(f);
    }
  }
  std::vector<int> endpoints;
  for (auto& [w, fs] : link) {
    if (static_cast<int>(fs.size()) > 2)
      throw ValidationError("star of vertex " + std::to_string(vertex) +
                            " is not a disk");
    if (static_cast<int>(fs.size()) == 1) endpoints.push_back(w);
  }
  bool interior = endpoints.empty();
  if (!interior && static_cast<int>(endpoints.size()) != 2)
    throw ValidationError("star of vertex " + std::to_string(vertex) +
                          " is not a disk");

  double theta = s.total_vertex_angle(vertex);
  if (!(theta > 0.0))
    throw NumericError("zero cone angle at vertex " + std::to_string(vertex));
  ConeFlatteningMap map(theta, lambda, scale);

  ConeLayout out;
  out.center = vertex;
  out.theta = theta;
  out.lambda = lambda;
  out.scale = scale;
  out.interior = interior;

  // Walk the fan, accumulating the corner angle of each face at the center.
  int start = interior ? link.begin()->first : std::min(endpoints[0], endpoints[1]);
  int at = start;
  int prev_face = -1;
  double phi = 0.0;
  int visited = 0;
  auto push = [&](int w, double angle) {
    Eigen::Vector2d polar = map.apply_polar(s.edge_length(vertex, w), angle);
    out.ring.push_back(w);
    out.ray_angles.push_back(polar[1]);
    out.positions.push_back(
        {polar[0] * std::cos(polar[1]), polar[0] * std::sin(polar[1])});
  };
  push(at, phi);
  while (true) {
    const std::vector<int>& fs = link.at(at);
    int f = -1;
    for (int cand : fs)
      if (cand != prev_face) f = cand;
    if (f == -1) break;  // path endpoint reached
    const Face& fc = s.faces()[f];
    int corner = -1, next = -1;
    for (int k = 0; k < 3; ++k) {
      if (fc[k] == vertex) corner = k;
      else if (fc[k] != at) next = k;
    }
    phi += s.corner_angle(f, corner);
    push(fc[next], phi);
    prev_face = f;
    at = fc[next];
    ++visited;
    if (visited > static_cast<int>(star.size())) break;
    // First return to the start closes the cycle. A second fan hanging off
    // the center is unreachable from here and shows up as a short count.
    if (interior && at == start) break;
  }
  if (visited != static_cast<int>(star.size()))
    throw ValidationError("star of vertex " + std::to_string(vertex) +
                          " is not a disk");
  return out;
}

double planar_conformality_check(double theta, double lambda, double scale,
                                 int samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("need at least one sample");
  ConeFlatteningMap map(theta, lambda, scale);
  SplitRng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double rho0 = rng.range(0.5, 1.5);
    double phi0 = rng.range(0.05 * theta, 0.95 * theta);
    if (!(rho0 > 0.0)) throw ValidationError("sample at the apex");
    Eigen::Vector2d image0 = map.apply_polar(rho0, phi0);
    double r0 = image0[0], psi0 = image0[1];
    // Both cones are flat away from the apex; measure the map between local
    // isometric charts centred at the sample and at its image.
    MapSampler chart = [&](const Eigen::VectorXd& xi) {
      double rho = std::hypot(rho0 + xi[0], xi[1]);
      double phi = phi0 + std::atan2(xi[1], rho0 + xi[0]);
      Eigen::Vector2d im = map.apply_polar(rho, phi);
      double dpsi = im[1] - psi0;
      Eigen::VectorXd eta(2);
      eta << im[0] * std::cos(dpsi) - r0, im[0] * std::sin(dpsi);
      return eta;
    };
    Eigen::VectorXd origin = Eigen::VectorXd::Zero(2);
    DilatationReport rep = pointwise_dilatation(chart, origin);
    worst = std::max(worst, rep.maximal);
  }
  return worst;
}

namespace {

// Shared vertex numbering for the n-section of a face list: originals first,
// then n-1 nodes per edge (ordered from the edge's low endpoint), then the
// interior lattice of each face.
struct SplitIndex {
  const PLSurface& s;
  int n;
  int edge_base, face_base, per_face;

  SplitIndex(const PLSurface& s, int n) : s(s), n(n) {
    edge_base = s.vertex_count();
    face_base = edge_base + static_cast<int>(s.edges().size()) * (n - 1);
    per_face = (n - 1) * (n - 2) / 2;
  }

  int total() const {
    return face_base + static_cast<int>(s.faces().size()) * per_face;
  }

  int edge_node(int u, int v, int step) const {
    // step counts from u; flip when the stored edge runs the other way.
    int e = s.edge_index(u, v);
    int t = s.edges()[e].u == u ? step : n - step;
    return edge_base + e * (n - 1) + (t - 1);
  }

  // Lattice point (i, j) of face f = (v0, v1, v2): i steps toward v1, j
  // toward v2, i + j <= n.
  int node(int f, int i, int j) const {
    const Face& fc = s.faces()[f];
    if (i == 0 && j == 0) return fc[0];
    if (i == n) return fc[1];
    if (j == n) return fc[2];
    if (j == 0) return edge_node(fc[0], fc[1], i);
    if (i == 0) return edge_node(fc[0], fc[2], j);
    if (i + j == n) return edge_node(fc[1], fc[2], j);
    int idx = 0;  // row-major over interior rows j = 1 ..
    for (int jj = 1; jj < j; ++jj) idx += n - 1 - jj;
    idx += i - 1;
    return face_base + f * per_face + idx;
  }
};

void split_faces(const PLSurface& s, const SplitIndex& ix, int n,
                 std::vector<Face>* faces,
                 std::vector<std::array<double, 3>>* lengths) {
  for (int f = 0; f < static_cast<int>(s.faces().size()); ++f) {
    const Face& fc = s.faces()[f];
    double l01 = s.edge_length(fc[0], fc[1]) / n;
    double l12 = s.edge_length(fc[1], fc[2]) / n;
    double l20 = s.edge_length(fc[2], fc[0]) / n;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i + j < n; ++i) {
        faces->push_back(
            {ix.node(f, i, j), ix.node(f, i + 1, j), ix.node(f, i, j + 1)});
        lengths->push_back({l01, l12, l20});
        if (i + j < n - 1) {
          faces->push_back({ix.node(f, i + 1, j), ix.node(f, i + 1, j + 1),
                            ix.node(f, i, j + 1)});
          lengths->push_back({l20, l01, l12});
        }
      }
    }
  }
}

}  // namespace

PLSurface subdivide_n2(const PLSurface& s, int n) {
  if (n < 1) throw ValidationError("subdivision order must be at least 1");
  if (n == 1) return s;
  SplitIndex ix(s, n);
  std::vector<Face> faces;
  std::vector<std::array<double, 3>> lengths;
  faces.reserve(s.faces().size() * n * n);
  lengths.reserve(faces.capacity());
  split_faces(s, ix, n, &faces, &lengths);
  return build_pl_surface(ix.total(), faces, lengths);
}

EmbeddedMesh subdivide_n2(const EmbeddedMesh& m, int n) {
  if (n < 1) throw ValidationError("subdivision order must be at least 1");
  if (n == 1) return m;
  const PLSurface& s = m.surface();
  SplitIndex ix(s, n);
  Eigen::MatrixXd coords(ix.total(), m.dimension());
  coords.topRows(m.vertex_count()) = m.coords();
  for (int e = 0; e < static_cast<int>(s.edges().size()); ++e) {
    const Edge& ed = s.edges()[e];
    for (int t = 1; t < n; ++t)
      coords.row(ix.edge_base + e * (n - 1) + (t - 1)) =
          m.coords().row(ed.u) +
          (double(t) / n) * (m.coords().row(ed.v) - m.coords().row(ed.u));
  }
  for (int f = 0; f < static_cast<int>(s.faces().size()); ++f) {
    const Face& fc = s.faces()[f];
    for (int j = 1; j < n - 1; ++j)
      for (int i = 1; i + j < n; ++i)
        coords.row(ix.node(f, i, j)) =
            m.coords().row(fc[0]) +
            (double(i) / n) * (m.coords().row(fc[1]) - m.coords().row(fc[0])) +
            (double(j) / n) * (m.coords().row(fc[2]) - m.coords().row(fc[0]));
  }
  std::vector<Face> faces;
  std::vector<std::array<double, 3>> lengths;
  split_faces(s, ix, n, &faces, &lengths);
  return EmbeddedMesh(std::move(coords), std::move(faces));
}

RippledCone build_rippled_cone(double theta, int teeth, double radius,
                               double half_width) {
  if (!(theta > kTwoPi))
    throw ValidationError(
        "ripple construction needs a cone angle above 2*pi; flatten smaller "
        "cones directly");
  if (teeth < 3) throw ValidationError("need at least 3 teeth");
  if (!(radius > 0.0)) throw ValidationError("radius must be positive");
  if (!(half_width > 0.0))
    throw ValidationError("tooth half-width must be positive");

  int n = teeth;
  double beta = theta / (2.0 * n);
  double c = std::cos(beta) / std::cos(kPi / n);
  if (c < -1.0)
    throw ValidationError(
        "no real tooth elevation for this angle; increase the tooth count");
  double under = 4.0 * half_width * half_width -
                 radius * radius * std::sin(beta) * std::sin(beta);
  if (under < 0.0)
    throw ValidationError(
        "tooth half-width too small: need 2*delta >= radius*sin(theta/(2N))");
  double elevation = std::acos(std::min(c, 1.0));
  double spoke = radius * std::cos(beta) + std::sqrt(under);
  if (!(spoke > 0.0))
    throw ValidationError("tooth tip would collapse into the apex; widen the "
                          "teeth or increase the tooth count");

  // Apex at the origin, base points on the z = 0 circle, tips lifted over the
  // arc midpoints. The apex angle of every triangle is then exactly beta:
  // cos(angle) = cos(pi/n) * cos(elevation) = cos(beta).
  Eigen::MatrixXd coords(2 * n + 1, 3);
  coords.row(0).setZero();
  for (int i = 0; i < n; ++i) {
    double a = kTwoPi * i / n;
    coords.row(1 + i) << radius * std::cos(a), radius * std::sin(a), 0.0;
    double mid = kTwoPi * (i + 0.5) / n;
    coords.row(1 + n + i) << spoke * std::cos(mid) * std::cos(elevation),
        spoke * std::sin(mid) * std::cos(elevation),
        spoke * std::sin(elevation);
  }
  std::vector<Face> faces;
  faces.reserve(2 * n);
  for (int i = 0; i < n; ++i) {
    faces.push_back({0, 1 + i, 1 + n + i});
    faces.push_back({0, 1 + n + i, 1 + (i + 1) % n});
  }

  RippledCone out{theta,     teeth, radius,
                  half_width, beta,  elevation,
                  spoke,     0.0,   0,
                  EmbeddedMesh(std::move(coords), std::move(faces))};
  out.apex_angle_sum = out.mesh.surface().total_vertex_angle(0);
  return out;
}

ContractionAnnulusMap::ContractionAnnulusMap(double theta, double r1,
                                             double r2)
    : theta(theta), r1(r1), r2(r2), factor(kTwoPi / theta) {
  if (!(theta >= kTwoPi))
    throw ValidationError("contraction map needs a cone angle of at least "
                          "2*pi");
  if (!(r1 > 0.0 && r1 < r2))
    throw ValidationError("need 0 < r1 < r2");
}

Eigen::Vector2d ContractionAnnulusMap::apply_polar(double rho,
                                                   double phi) const {
  if (rho < 0.0) throw ValidationError("negative radius");
  if (rho > r2) throw ValidationError("point outside the disk of radius r2");
  if (rho <= r1) return {rho, factor * phi};
  // Power map continued from the inner disk: scale chosen so the two rules
  // agree at rho = r1.
  double a = std::pow(r1, 1.0 - factor);
  return {a * std::pow(rho, factor), factor * phi};
}

ContractionAnnulusMap contraction_annulus_map(double theta, double r1,
                                              double r2) {
  return ContractionAnnulusMap(theta, r1, r2);
}

}  // namespace plembed
