#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "plembed/metric.hpp"
#include "plembed/rng.hpp"

namespace plembed {

// Coordinates of points in l^infinity: row i holds the distances from
// points[i] to every landmark. Landmarks are always among the points.
struct LandmarkEmbedding {
  std::vector<int> landmarks;
  std::vector<int> points;
  Eigen::MatrixXd coordinates;  // points.size() x landmarks.size()
  int refine = 0;
  std::unordered_map<int, int> point_row;  // vertex -> row index

  Eigen::RowVectorXd coordinate(int vertex) const {
    return coordinates.row(point_row.at(vertex));
  }
};

// Embed the given vertices by their distance vectors to the net's landmarks.
// Pass an empty point list to embed every vertex.
LandmarkEmbedding kuratowski_embed(const PLSurface& s, const Net& net,
                                   std::vector<int> points, int refine);

// Max over landmark pairs of | ||K(x)-K(y)||_inf - d(x,y) |. The sup norm is
// an exact isometry on the landmark set, so this is round-off only.
double verify_isometry_on_landmarks(const LandmarkEmbedding& e);

struct BiLipschitzReport {
  double min_ratio = 0.0;   // min over pairs of ||K(x)-K(y)||_inf / d(x,y)
  double max_ratio = 0.0;   // never exceeds 1 beyond round-off
  double c_achieved = 0.0;  // 1 - min_ratio: measured lower-bound constant
  std::array<int, 2> min_witness = {-1, -1};
  std::array<int, 2> max_witness = {-1, -1};
  int pair_count = 0;
  int skipped_coincident = 0;
};

// Ratio statistics of embedded vs surface distance over the given pairs.
// The engine must come from the same surface and refine level.
BiLipschitzReport verify_bilipschitz(const LandmarkEmbedding& e,
                                     const std::vector<std::pair<int, int>>& pairs,
                                     const DistanceEngine& engine);

// All pairs when at most 200 points, otherwise a seeded uniform sample of
// max_pairs (deduplicated, x != y).
std::vector<std::pair<int, int>> default_pair_sample(
    const std::vector<int>& points, std::uint64_t seed, int max_pairs = 10000);

}  // namespace plembed
