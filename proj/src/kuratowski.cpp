#include "plembed/kuratowski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "plembed/rng.hpp"

namespace plembed {

LandmarkEmbedding kuratowski_embed(const PLSurface& s, const Net& net,
                                   std::vector<int> points, int refine) {
  if (net.landmarks.empty())
    throw ValidationError("landmark set is empty");
  for (int x : net.landmarks)
    if (x < 0 || x >= s.vertex_count())
      throw ValidationError("landmark " + std::to_string(x) + " out of range");
  if (points.empty()) {
    points.resize(s.vertex_count());
    for (int v = 0; v < s.vertex_count(); ++v) points[v] = v;
  }
  for (int p : points)
    if (p < 0 || p >= s.vertex_count())
      throw ValidationError("point " + std::to_string(p) + " out of range");

  LandmarkEmbedding e;
  e.landmarks = net.landmarks;
  e.points = std::move(points);
  e.refine = refine;
  // Landmarks must be embedded themselves for the landmark-pair checks.
  {
    std::set<int> have(e.points.begin(), e.points.end());
    for (int x : e.landmarks)
      if (!have.count(x)) e.points.push_back(x);
  }
  for (size_t i = 0; i < e.points.size(); ++i)
    e.point_row.emplace(e.points[i], static_cast<int>(i));

  DistanceEngine engine(s, refine);
  e.coordinates.resize(e.points.size(), e.landmarks.size());
  for (size_t j = 0; j < e.landmarks.size(); ++j) {
    DistanceField f = engine.field_from(e.landmarks[j]);
    for (size_t i = 0; i < e.points.size(); ++i)
      e.coordinates(i, j) = f.distance[e.points[i]];
  }
  return e;
}

double verify_isometry_on_landmarks(const LandmarkEmbedding& e) {
  double worst = 0.0;
  for (size_t a = 0; a < e.landmarks.size(); ++a) {
    int ra = e.point_row.at(e.landmarks[a]);
    for (size_t b = a + 1; b < e.landmarks.size(); ++b) {
      int rb = e.point_row.at(e.landmarks[b]);
      double sup =
          (e.coordinates.row(ra) - e.coordinates.row(rb)).lpNorm<Eigen::Infinity>();
      double dist = e.coordinates(ra, b);  // distance from landmark a to b
      worst = std::max(worst, std::abs(sup - dist));
    }
  }
  return worst;
}

BiLipschitzReport verify_bilipschitz(const LandmarkEmbedding& e,
                                     const std::vector<std::pair<int, int>>& pairs,
                                     const DistanceEngine& engine) {
  BiLipschitzReport r;
  r.min_ratio = std::numeric_limits<double>::infinity();

  // One distance field per distinct first pair element.
  std::unordered_map<int, DistanceField> fields;
  for (auto [x, y] : pairs)
    if (!fields.count(x)) fields.emplace(x, engine.field_from(x));

  for (auto [x, y] : pairs) {
    if (x == y) {
      ++r.skipped_coincident;
      continue;
    }
    double dist = fields.at(x).distance[y];
    if (dist == 0.0) {
      ++r.skipped_coincident;
      continue;
    }
    double sup = (e.coordinate(x) - e.coordinate(y)).lpNorm<Eigen::Infinity>();
    double ratio = sup / dist;
    ++r.pair_count;
    if (ratio < r.min_ratio) {
      r.min_ratio = ratio;
      r.min_witness = {x, y};
    }
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.max_witness = {x, y};
    }
  }
  if (r.pair_count == 0) throw ValidationError("no usable pairs to verify");
  r.c_achieved = 1.0 - r.min_ratio;
  return r;
}

std::vector<std::pair<int, int>> default_pair_sample(
    const std::vector<int>& points, std::uint64_t seed, int max_pairs) {
  std::vector<std::pair<int, int>> pairs;
  const int n = static_cast<int>(points.size());
  if (n < 2) throw ValidationError("need at least two points to sample pairs");
  if (max_pairs < 1) throw ValidationError("pair budget must be positive");
  const std::int64_t all = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (n <= 200 || all <= max_pairs) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs.emplace_back(points[a], points[b]);
    return pairs;
  }
  SplitRng rng(seed);
  std::set<std::pair<int, int>> seen;
  while (static_cast<int>(pairs.size()) < max_pairs) {
    int a = rng.below(n), b = rng.below(n);
    if (a == b) continue;
    std::pair<int, int> p{points[std::min(a, b)], points[std::max(a, b)]};
    if (seen.insert(p).second) pairs.push_back(p);
  }
  return pairs;
}

}  // namespace plembed
