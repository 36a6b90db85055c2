#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "plembed/mesh.hpp"
#include "plembed/rng.hpp"

namespace plembed {

// An acute triangle T (given by side lengths) to be folded into the right
// prism over a smaller similar copy t. t is `ratio` times T and sits in the
// base plane with the shared circumcentre axis through the origin.
struct BasicConstructionInput {
  std::array<double, 3> big_sides = {0.0, 0.0, 0.0};  // |A1A2|, |A2A3|, |A3A1|
  double ratio = 1.0;              // side scale of t, in (0, 1]
  double min_angle = 0.0;          // every corner angle must exceed this
  double face_rotation_max = 0.0;  // lateral-face tilt allowance (radians)
};

// Radial crease pattern on T: spokes from the circumcentre B to feet on the
// boundary. Level 0 cuts at the corners and the edge midpoints (six pieces);
// each further level halves every boundary segment, doubling the pieces.
// Feet are stored in the development of T with B at the origin, running
// counterclockwise from corner 1; piece j lies between feet j and j+1 (mod
// piece count), so the development tiles a full turn around the origin.
struct CreasePattern {
  int level = 0;
  int pieces = 0;  // 6 * 2^level
  std::array<double, 3> big_sides = {0.0, 0.0, 0.0};
  std::array<double, 3> corner_angles = {0.0, 0.0, 0.0};
  double circumradius = 0.0;
  std::vector<Eigen::Vector2d> feet;
  std::vector<int> foot_side;  // side carrying each foot; -1 at corners
};

CreasePattern make_crease_pattern(const std::array<double, 3>& big_sides,
                                  int level, double min_angle = 0.0);

// Folded configuration: root orientation of the first piece plus one bend
// angle per spoke crease (entry 0 belongs to the cut seam and stays 0; 0 =
// flat) and the optional lateral-face rotations.
struct FoldState {
  Eigen::Matrix3d root = Eigen::Matrix3d::Identity();
  std::vector<double> bends;
  std::array<double, 3> face_rotations = {0.0, 0.0, 0.0};
};

struct FoldOptions {
  int max_iterations = 500;
  double tolerance = 1e-10;          // stop once max |residual| is below
  double feasible_threshold = 1e-6;  // verdict line for the report
  double perturbation = 1e-4;        // seeded kick off the flat saddle
  std::uint64_t seed = kDefaultSeed;
};

struct PleatedSurface {
  EmbeddedMesh mesh;  // pieces fanned around the apex, slit along spoke 0
  // Max |embedded length - intrinsic length| over mesh edges. Pieces are
  // placed rigidly, so this is round-off only, converged or not; all solver
  // error shows up in the constraint residual.
  double isometry_residual = 0.0;
  double constraint_residual = 0.0;  // max placement violation
  bool feasible = false;
  int iterations = 0;
  int level = 0;
  int pieces = 0;
  std::array<Eigen::Vector3d, 3> prism_base;  // corners of t
  double prism_height = 0.0;                  // apex height above the base
  FoldState state;
};

// Fold T along the pattern's spokes so that its corners land on the corners
// of t, the circumcentre lands on the prism axis at the circumradius
// distance from the base corners, and every other boundary foot lands on its
// lateral prism face. Damped least squares over the fold angles; pass
// `warm_start` to begin from a known configuration instead of the seeded
// flat state.
PleatedSurface fold_basic_construction(const BasicConstructionInput& input,
                                       const CreasePattern& pattern,
                                       const FoldOptions& options = {},
                                       const FoldState* warm_start = nullptr);

// Solve levels 0..max_level, warm-starting each level from the previous
// solution (new mid-segment creases start flat, which reproduces the
// previous surface exactly) and keeping the better of warm and cold runs.
std::vector<PleatedSurface> fold_level_sweep(
    const BasicConstructionInput& input, int max_level,
    const FoldOptions& options = {});

}  // namespace plembed
