#include "plembed/qc.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "plembed/rng.hpp"

namespace plembed {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

const char* to_string(DilatationKind k) {
  switch (k) {
    case DilatationKind::PointwiseNumeric: return "pointwise-numeric";
    case DilatationKind::ClosedFormMap: return "closed-form-map";
    case DilatationKind::CoefficientOfDomain: return "coefficient-of-domain";
    case DilatationKind::LowerBound: return "lower-bound";
  }
  return "?";
}

Wedge::Wedge(double angle, int dim) : angle(angle), dim(dim) {
  if (!(angle > 0.0 && angle <= 2.0 * kPi))
    throw ValidationError("wedge angle must lie in (0, 2*pi]");
  if (dim < 2) throw ValidationError("wedge dimension must be >= 2");
}

DihedralWedge::DihedralWedge(int dim, std::vector<double> angles_in)
    : dim(dim), angles(std::move(angles_in)) {
  if (dim < 2) throw ValidationError("dihedral wedge dimension must be >= 2");
  int q = static_cast<int>(angles.size());
  if (q < 1 || q > dim - 1)
    throw ValidationError("dihedral wedge in R^" + std::to_string(dim) +
                          " takes between 1 and " + std::to_string(dim - 1) +
                          " angles, got " + std::to_string(q));
  for (int i = 0; i < q; ++i) {
    double limit = i == 0 ? 2.0 * kPi : kPi;
    if (!(angles[i] > 0.0 && angles[i] <= limit))
      throw ValidationError("dihedral wedge angle " + std::to_string(i + 1) +
                            " out of range");
  }
}

FoldingMap::FoldingMap(double alpha, double beta, int dim)
    : alpha(alpha), beta(beta), dim(dim) {
  if (dim < 2) throw ValidationError("folding map dimension must be >= 2");
  if (!(alpha > 0.0 && beta <= 2.0 * kPi && alpha <= beta))
    throw ValidationError(
        "folding map expects 0 < alpha <= beta <= 2*pi (expanding fold)");
}

Eigen::VectorXd FoldingMap::apply(const Eigen::VectorXd& x) const {
  if (x.size() != dim)
    throw ValidationError("folding map input has wrong dimension");
  double r = std::hypot(x[0], x[1]);
  double phi = std::atan2(x[1], x[0]);
  if (phi < 0.0) phi += 2.0 * kPi;  // wedge coordinates in [0, 2*pi)
  double psi = (beta / alpha) * phi;
  Eigen::VectorXd out = x;
  out[0] = r * std::cos(psi);
  out[1] = r * std::sin(psi);
  return out;
}

DilatationReport pointwise_dilatation(const MapSampler& f,
                                      const Eigen::VectorXd& x, double step) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw ValidationError("pointwise dilatation needs dimension >= 2");
  double h = step > 0.0 ? step
                        : 1e-5 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
  Eigen::MatrixXd jac(n, n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    Eigen::VectorXd fp = f(xp), fm = f(xm);
    if (fp.size() != n || fm.size() != n)
      throw ValidationError("map sampler must preserve dimension");
    jac.col(i) = (fp - fm) / (2.0 * h);
  }
  double det = jac.determinant();
  if (!(det > 0.0))
    throw NumericError("non-positive Jacobian determinant (" +
                       std::to_string(det) + ") at sample point");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const Eigen::VectorXd& s = svd.singularValues();
  double vol = s.prod();
  DilatationReport r;
  r.kind = DilatationKind::PointwiseNumeric;
  r.dim = n;
  r.outer = std::pow(s[0], n) / vol;
  r.inner = vol / std::pow(s[n - 1], n);
  r.maximal = std::max(r.outer, r.inner);
  return r;
}

DilatationReport folding_map_dilatation(double alpha, double beta, int dim) {
  FoldingMap fold(alpha, beta, dim);  // validates
  double c = beta / alpha;
  DilatationReport r;
  r.kind = DilatationKind::ClosedFormMap;
  r.dim = dim;
  r.inner = c;
  r.outer = std::pow(c, dim - 1);
  r.maximal = std::max(r.inner, r.outer);
  return r;
}

double folding_numeric_deviation(double alpha, double beta, int dim,
                                 int samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("need at least one sample");
  FoldingMap fold(alpha, beta, dim);
  DilatationReport closed = folding_map_dilatation(alpha, beta, dim);
  MapSampler sampler = [&fold](const Eigen::VectorXd& x) {
    return fold.apply(x);
  };
  SplitRng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double rad = rng.range(0.5, 1.5);
    double phi = rng.range(0.1 * alpha, 0.9 * alpha);
    Eigen::VectorXd x(dim);
    x[0] = rad * std::cos(phi);
    x[1] = rad * std::sin(phi);
    for (int i = 2; i < dim; ++i) x[i] = rng.range(-1.0, 1.0);
    DilatationReport numeric = pointwise_dilatation(sampler, x);
    worst = std::max(worst,
                     std::abs(numeric.inner - closed.inner) / closed.inner);
    worst = std::max(worst,
                     std::abs(numeric.outer - closed.outer) / closed.outer);
  }
  return worst;
}

DilatationReport wedge_coefficients(const Wedge& w) {
  if (w.angle > kPi)
    throw ValidationError(
        "coefficient unknown for a non-convex wedge (angle > pi)");
  DilatationReport r;
  r.kind = DilatationKind::CoefficientOfDomain;
  r.dim = w.dim;
  r.inner = kPi / w.angle;
  r.outer = std::pow(kPi / w.angle, 1.0 / (w.dim - 1));
  r.maximal = kPi / w.angle;
  r.note = "outer value is a lower bound";
  return r;
}

DilatationReport dihedral_wedge_coefficients(const DihedralWedge& w) {
  double product = 1.0;
  for (double a : w.angles) {
    if (a > kPi)
      throw ValidationError(
          "coefficient unknown for a non-convex wedge (angle > pi)");
    product *= kPi / a;
  }
  DilatationReport r;
  r.kind = DilatationKind::CoefficientOfDomain;
  r.dim = w.dim;
  r.inner = product;
  r.outer = std::pow(product, 1.0 / (w.dim - 1));
  r.maximal = product;
  r.note = "outer value is a lower bound";
  return r;
}

DilatationReport convex_polyhedron_bound(int facets, int dim) {
  if (dim < 2) throw ValidationError("dimension must be >= 2");
  if (facets < dim + 1)
    throw ValidationError("no bounded convex polyhedron in R^" +
                          std::to_string(dim) + " has only " +
                          std::to_string(facets) + " facets");
  double bound = double(facets - dim + 2) / double(facets - dim);
  DilatationReport r;
  r.kind = DilatationKind::LowerBound;
  r.dim = dim;
  r.inner = bound;
  r.outer = std::pow(bound, 1.0 / (dim - 1));
  r.maximal = bound;
  r.note = "lower bound for any flattening of the polyhedron";
  return r;
}

PolyhedronDihedralBound polyhedron_dihedral_bound(const EmbeddedMesh& m) {
  if (!m.surface().closed())
    throw ValidationError("dihedral bound needs a closed mesh");
  CurvatureReport cur = dihedral_data(m);
  PolyhedronDihedralBound out;
  out.min_dihedral = std::numeric_limits<double>::infinity();
  for (const EdgeDihedral& d : cur.dihedrals) {
    if (d.dihedral > kPi + 1e-9)
      throw ValidationError("mesh is not convex: reflex dihedral at edge (" +
                            std::to_string(d.u) + "," + std::to_string(d.v) +
                            ")");
    if (d.dihedral < out.min_dihedral) {
      out.min_dihedral = d.dihedral;
      out.witness_edge_u = d.u;
      out.witness_edge_v = d.v;
    }
  }
  double bound = kPi / out.min_dihedral;
  out.report.kind = DilatationKind::LowerBound;
  out.report.dim = 3;
  out.report.inner = bound;
  out.report.outer = std::sqrt(bound);
  out.report.maximal = bound;
  out.report.note = "lower bound from the sharpest edge wedge";
  return out;
}

}  // namespace plembed
