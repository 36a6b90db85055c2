#include "plembed/fold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace plembed {

namespace {

constexpr double kPi = std::numbers::pi;

struct TriangleGeometry {
  std::array<double, 3> angles;
  double circumradius = 0.0;
  std::array<Eigen::Vector2d, 3> corners;  // development, circumcentre at 0
};

// Side p connects corners p and p+1, so the side opposite corner p is p+1.
TriangleGeometry analyze_triangle(const std::array<double, 3>& sides,
                                  double min_angle) {
  for (double s : sides)
    if (!(s > 0.0) || !std::isfinite(s))
      throw ValidationError("triangle sides must be positive");
  for (int p = 0; p < 3; ++p)
    if (!(sides[p] < sides[(p + 1) % 3] + sides[(p + 2) % 3]))
      throw ValidationError("triangle inequality fails for the given sides");
  TriangleGeometry g;
  for (int p = 0; p < 3; ++p) {
    double into = sides[(p + 2) % 3];
    double out = sides[p];
    double opp = sides[(p + 1) % 3];
    double c = (into * into + out * out - opp * opp) / (2.0 * into * out);
    g.angles[p] = std::acos(std::clamp(c, -1.0, 1.0));
  }
  for (int p = 0; p < 3; ++p) {
    if (!(g.angles[p] < kPi / 2.0))
      throw ValidationError("triangle must be acute; corner " +
                            std::to_string(p + 1) + " is not");
    if (!(g.angles[p] > min_angle))
      throw ValidationError("corner " + std::to_string(p + 1) +
                            " is below the angle floor");
  }
  g.circumradius = sides[1] / (2.0 * std::sin(g.angles[0]));
  // Corner p sits at angle eta_p on the circumcircle; the arc over side p is
  // twice the inscribed angle at the opposite corner. Acuteness keeps the
  // circumcentre strictly inside, so the development wraps a full turn.
  double eta = 0.0;
  for (int p = 0; p < 3; ++p) {
    g.corners[p] =
        g.circumradius * Eigen::Vector2d(std::cos(eta), std::sin(eta));
    eta += 2.0 * g.angles[(p + 2) % 3];
  }
  return g;
}

struct FoldProblem {
  int N = 0;                         // piece count
  int per_side = 0;                  // N / 3
  Eigen::Vector3d apex;              // B'
  std::vector<Eigen::Vector3d> F;    // flat feet around the origin, z = 0
  std::vector<int> foot_side;        // -1 at corners
  std::array<Eigen::Vector3d, 3> base;     // corners of t
  std::array<Eigen::Vector3d, 3> tangent;  // unit side directions of t
  std::array<Eigen::Vector3d, 3> normal0;  // outward lateral normals, untilted
  bool tilt = false;
  double tilt_max = 0.0;
  int rows = 0, cols = 0;

  Eigen::Vector3d side_normal(const FoldState& st, int s) const {
    double b = st.face_rotations[s];
    return std::cos(b) * normal0[s] - std::sin(b) * Eigen::Vector3d::UnitZ();
  }
  Eigen::Vector3d side_normal_db(const FoldState& st, int s) const {
    double b = st.face_rotations[s];
    return -std::sin(b) * normal0[s] - std::cos(b) * Eigen::Vector3d::UnitZ();
  }
};

struct FoldEval {
  std::vector<Eigen::Matrix3d> R;     // orientation per piece
  std::vector<Eigen::Vector3d> axis;  // world spoke directions ([0] unused)
  std::vector<Eigen::Vector3d> W;     // feet 0..N, N = closure copy of 0
  Eigen::VectorXd r;
  double max_abs = 0.0;
  double sse = 0.0;
};

// Pieces are placed rigidly: piece j maps flat point p to apex + R[j] * p.
// Bending crease j spins every later piece around the current world
// direction of spoke j, which keeps the shared spoke glued.
FoldEval evaluate(const FoldProblem& pb, const FoldState& st) {
  FoldEval ev;
  int N = pb.N;
  ev.R.resize(N);
  ev.axis.assign(N, Eigen::Vector3d::Zero());
  ev.W.resize(N + 1);
  ev.R[0] = st.root;
  ev.W[0] = pb.apex + st.root * pb.F[0];
  for (int j = 1; j < N; ++j) {
    Eigen::Vector3d spoke = ev.R[j - 1] * pb.F[j];
    ev.axis[j] = spoke.normalized();
    ev.W[j] = pb.apex + spoke;
    double b = st.bends[j];
    ev.R[j] = b != 0.0
                  ? Eigen::AngleAxisd(b, ev.axis[j]).toRotationMatrix() *
                        ev.R[j - 1]
                  : ev.R[j - 1];
  }
  ev.W[N] = pb.apex + ev.R[N - 1] * pb.F[0];

  ev.r.resize(pb.rows);
  int row = 0;
  for (int j = 0; j < N; ++j) {
    int s = pb.foot_side[j];
    if (s < 0) {
      ev.r.segment<3>(row) = ev.W[j] - pb.base[j / pb.per_side];
      row += 3;
    } else {
      ev.r[row++] = pb.side_normal(st, s).dot(ev.W[j] - pb.base[s]);
    }
  }
  ev.r.segment<3>(row) = ev.W[N] - ev.W[0];
  ev.max_abs = ev.r.lpNorm<Eigen::Infinity>();
  ev.sse = ev.r.squaredNorm();
  return ev;
}

// Exact derivatives: a change of bend j turns the whole sub-fan past crease
// j rigidly about the spoke axis, so dW/dbend_j = axis_j x (W - apex) for
// feet after j and zero before. The root orientation is updated by left
// rotation increments, giving dW/dw_k = e_k x (W - apex).
Eigen::MatrixXd jacobian(const FoldProblem& pb, const FoldState& st,
                         const FoldEval& ev) {
  int N = pb.N;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(pb.rows, pb.cols);
  int tilt_base = 3 + (N - 1);
  int row = 0;
  for (int j = 0; j < N; ++j) {
    Eigen::Vector3d arm = ev.W[j] - pb.apex;
    int s = pb.foot_side[j];
    if (s < 0) {
      for (int k = 0; k < 3; ++k)
        J.block<3, 1>(row, k) = Eigen::Vector3d::Unit(k).cross(arm);
      for (int i = 1; i < j; ++i)
        J.block<3, 1>(row, 3 + i - 1) = ev.axis[i].cross(arm);
      row += 3;
    } else {
      Eigen::Vector3d n = pb.side_normal(st, s);
      for (int k = 0; k < 3; ++k)
        J(row, k) = Eigen::Vector3d::Unit(k).cross(arm).dot(n);
      for (int i = 1; i < j; ++i)
        J(row, 3 + i - 1) = ev.axis[i].cross(arm).dot(n);
      if (pb.tilt)
        J(row, tilt_base + s) =
            pb.side_normal_db(st, s).dot(ev.W[j] - pb.base[s]);
      ++row;
    }
  }
  Eigen::Vector3d armN = ev.W[N] - pb.apex;
  Eigen::Vector3d gap = ev.W[N] - ev.W[0];
  for (int k = 0; k < 3; ++k)
    J.block<3, 1>(row, k) = Eigen::Vector3d::Unit(k).cross(gap);
  for (int i = 1; i < N; ++i)
    J.block<3, 1>(row, 3 + i - 1) = ev.axis[i].cross(armN);
  return J;
}

FoldState apply_step(const FoldProblem& pb, const FoldState& st,
                     const Eigen::VectorXd& delta) {
  FoldState out = st;
  Eigen::Vector3d w = delta.head<3>();
  double ang = w.norm();
  if (ang > 0.0)
    out.root = Eigen::AngleAxisd(ang, w / ang).toRotationMatrix() * st.root;
  for (int i = 1; i < pb.N; ++i) out.bends[i] += delta[3 + i - 1];
  if (pb.tilt)
    for (int s = 0; s < 3; ++s)
      out.face_rotations[s] =
          std::clamp(st.face_rotations[s] + delta[3 + (pb.N - 1) + s],
                     -pb.tilt_max, pb.tilt_max);
  return out;
}

FoldProblem setup_problem(const BasicConstructionInput& input,
                          const CreasePattern& pattern) {
  if (!(input.ratio > 0.0 && input.ratio <= 1.0))
    throw ValidationError("base triangle scale must lie in (0, 1]");
  if (input.face_rotation_max < 0.0 || input.face_rotation_max >= kPi / 2.0)
    throw ValidationError("face rotation allowance must lie in [0, pi/2)");
  for (int p = 0; p < 3; ++p) {
    double a = input.big_sides[p], b = pattern.big_sides[p];
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
      throw ValidationError("crease pattern was built for different sides");
  }
  TriangleGeometry g = analyze_triangle(input.big_sides, input.min_angle);

  FoldProblem pb;
  pb.N = pattern.pieces;
  pb.per_side = pb.N / 3;
  double R = g.circumradius;
  double r = input.ratio * R;
  pb.apex = Eigen::Vector3d(0.0, 0.0, std::sqrt(std::max(R * R - r * r, 0.0)));
  pb.F.reserve(pb.N);
  for (const Eigen::Vector2d& f : pattern.feet)
    pb.F.emplace_back(f[0], f[1], 0.0);
  pb.foot_side = pattern.foot_side;
  for (int p = 0; p < 3; ++p)
    pb.base[p] =
        input.ratio * Eigen::Vector3d(g.corners[p][0], g.corners[p][1], 0.0);
  for (int s = 0; s < 3; ++s) {
    pb.tangent[s] = (pb.base[(s + 1) % 3] - pb.base[s]).normalized();
    pb.normal0[s] = pb.tangent[s].cross(Eigen::Vector3d::UnitZ());
  }
  pb.tilt = input.face_rotation_max > 0.0;
  pb.tilt_max = input.face_rotation_max;
  pb.rows = pb.N + 9;
  pb.cols = 3 + (pb.N - 1) + (pb.tilt ? 3 : 0);
  return pb;
}

}  // namespace

CreasePattern make_crease_pattern(const std::array<double, 3>& big_sides,
                                  int level, double min_angle) {
  if (level < 0 || level > 12)
    throw ValidationError("crease level must lie in [0, 12]");
  TriangleGeometry g = analyze_triangle(big_sides, min_angle);
  CreasePattern pat;
  pat.level = level;
  pat.big_sides = big_sides;
  pat.corner_angles = g.angles;
  pat.circumradius = g.circumradius;
  int per_side = 2 << level;  // 2^(level+1) boundary segments per side
  pat.pieces = 3 * per_side;
  pat.feet.reserve(pat.pieces);
  pat.foot_side.reserve(pat.pieces);
  for (int s = 0; s < 3; ++s) {
    const Eigen::Vector2d& from = g.corners[s];
    const Eigen::Vector2d& to = g.corners[(s + 1) % 3];
    for (int i = 0; i < per_side; ++i) {
      pat.feet.push_back(from + (double(i) / per_side) * (to - from));
      pat.foot_side.push_back(i == 0 ? -1 : s);
    }
  }
  return pat;
}

PleatedSurface fold_basic_construction(const BasicConstructionInput& input,
                                       const CreasePattern& pattern,
                                       const FoldOptions& options,
                                       const FoldState* warm_start) {
  if (options.max_iterations < 0)
    throw ValidationError("iteration cap must be non-negative");
  if (!(options.tolerance > 0.0) || !(options.feasible_threshold > 0.0))
    throw ValidationError("solver tolerances must be positive");
  FoldProblem pb = setup_problem(input, pattern);
  const int N = pb.N;

  FoldState state;
  state.bends.assign(N, 0.0);
  if (warm_start) {
    if (static_cast<int>(warm_start->bends.size()) != N)
      throw ValidationError("warm start does not match the crease pattern");
    state = *warm_start;
    for (int s = 0; s < 3; ++s)
      state.face_rotations[s] =
          std::clamp(state.face_rotations[s], -pb.tilt_max, pb.tilt_max);
  } else {
    // Seeded kick off the flat configuration, which is a symmetric saddle of
    // the squared residual for shrinking targets.
    SplitRng rng(options.seed);
    Eigen::Vector3d w;
    for (int k = 0; k < 3; ++k)
      w[k] = options.perturbation * (2.0 * rng.uniform() - 1.0);
    double ang = w.norm();
    if (ang > 0.0)
      state.root = Eigen::AngleAxisd(ang, w / ang).toRotationMatrix();
    for (int j = 1; j < N; ++j)
      state.bends[j] = options.perturbation * (2.0 * rng.uniform() - 1.0);
  }

  FoldEval ev = evaluate(pb, state);
  FoldState best_state = state;
  double best_max = ev.max_abs;
  double lambda = 1e-3;
  int iter = 0;
  while (iter < options.max_iterations && best_max > options.tolerance) {
    ++iter;
    Eigen::MatrixXd J = jacobian(pb, state, ev);
    Eigen::MatrixXd A = J.transpose() * J;
    Eigen::VectorXd g = J.transpose() * ev.r;
    bool accepted = false;
    bool stalled = false;
    for (int tries = 0; tries < 60 && !accepted; ++tries) {
      Eigen::MatrixXd M = A;
      M.diagonal() += lambda * (A.diagonal().array() + 1e-12).matrix();
      Eigen::VectorXd delta = M.ldlt().solve(-g);
      FoldState cand = apply_step(pb, state, delta);
      FoldEval cev = evaluate(pb, cand);
      if (cev.sse < ev.sse) {
        state = std::move(cand);
        ev = std::move(cev);
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        if (ev.max_abs < best_max) {
          best_max = ev.max_abs;
          best_state = state;
        }
        if (delta.lpNorm<Eigen::Infinity>() < 1e-15) stalled = true;
      } else {
        lambda *= 3.0;
        if (lambda > 1e14) stalled = true;
        if (stalled) break;
      }
    }
    if (!accepted || stalled) break;
  }

  FoldEval fin = evaluate(pb, best_state);

  Eigen::MatrixXd coords(N + 2, 3);
  coords.row(0) = pb.apex;
  for (int j = 0; j <= N; ++j) coords.row(1 + j) = fin.W[j];
  std::vector<Face> faces;
  faces.reserve(N);
  for (int j = 0; j < N; ++j) faces.push_back({0, 1 + j, 2 + j});

  double iso = 0.0;
  for (int j = 0; j <= N; ++j)
    iso = std::max(iso, std::abs((fin.W[j] - pb.apex).norm() -
                                 pb.F[j % N].norm()));
  for (int j = 0; j < N; ++j)
    iso = std::max(iso, std::abs((fin.W[j + 1] - fin.W[j]).norm() -
                                 (pb.F[(j + 1) % N] - pb.F[j]).norm()));

  PleatedSurface out = {EmbeddedMesh(std::move(coords), std::move(faces)),
                        0.0, 0.0, false, 0, 0, 0, {}, 0.0, {}};
  out.isometry_residual = iso;
  out.constraint_residual = fin.max_abs;
  out.feasible = fin.max_abs <= options.feasible_threshold;
  out.iterations = iter;
  out.level = pattern.level;
  out.pieces = N;
  out.prism_base = pb.base;
  out.prism_height = pb.apex[2];
  out.state = std::move(best_state);
  return out;
}

std::vector<PleatedSurface> fold_level_sweep(
    const BasicConstructionInput& input, int max_level,
    const FoldOptions& options) {
  if (max_level < 0) throw ValidationError("sweep level must be non-negative");
  std::vector<PleatedSurface> out;
  out.reserve(max_level + 1);
  for (int k = 0; k <= max_level; ++k) {
    CreasePattern pat =
        make_crease_pattern(input.big_sides, k, input.min_angle);
    PleatedSurface cold = fold_basic_construction(input, pat, options);
    if (k == 0) {
      out.push_back(std::move(cold));
      continue;
    }
    // Warm start: inherited creases keep their bends, inserted mid-segment
    // creases start flat, reproducing the previous surface exactly.
    const PleatedSurface& prev = out.back();
    FoldState warm;
    warm.root = prev.state.root;
    warm.face_rotations = prev.state.face_rotations;
    warm.bends.assign(2 * prev.pieces, 0.0);
    for (int j = 1; j < prev.pieces; ++j)
      warm.bends[2 * j] = prev.state.bends[j];
    PleatedSurface warmed =
        fold_basic_construction(input, pat, options, &warm);
    out.push_back(warmed.constraint_residual <= cold.constraint_residual
                      ? std::move(warmed)
                      : std::move(cold));
  }
  return out;
}

}  // namespace plembed
