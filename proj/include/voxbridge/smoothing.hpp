#pragma once

#include <span>
#include <vector>

#include "voxbridge/planner.hpp"
#include "voxbridge/types.hpp"

namespace voxbridge {

struct SmoothingConfig {
  double s_macro = 0.005;  // m, target spacing of resampled waypoints
  double d_max = 0.001;    // m, hard bound on consecutive reference gaps
  int arc_samples = 1000;  // chords used for length estimation
};

// Macro waypoints from the resampled spline plus the subdivided micro list
// whose consecutive gaps never exceed d_max.
struct ReferencePath {
  std::vector<Vec3> macro;
  std::vector<Vec3> micro;
  double total_length = 0.0;  // chord-sum estimate of the spline length, m
};

// Interpolating curve through the waypoints, parameterized by normalized
// waypoint index on [0,1]. Natural cubic for 4+ points; 2 points fall back
// to the line and 3 points to the interpolating quadratic.
class SplineCurve {
 public:
  static SplineCurve fit(std::span<const Vec3> points);
  Vec3 eval(double t) const;
  std::size_t knot_count() const { return knots_.size(); }

 private:
  std::vector<Vec3> knots_;
  std::vector<Vec3> second_derivs_;  // natural-spline moments; empty for n < 4
};

// Merges duplicate consecutive waypoints, then fits. Throws
// std::invalid_argument when fewer than 2 distinct points remain.
SplineCurve fit_spline(const PathPolyline& polyline);

// ceil(L / s_macro) + 1 points at uniform parameter values, both endpoints
// included. Spacing is approximately arc-length uniform.
std::vector<Vec3> resample_macro(const SplineCurve& curve, const SmoothingConfig& cfg);

// Linear interpolation inserting ceil(gap/d_max)-1 points into any gap that
// exceeds d_max.
std::vector<Vec3> subdivide_micro(std::span<const Vec3> macro, double d_max);

// Full chain. A single-point polyline degenerates to a one-point reference.
ReferencePath smooth_path(const PathPolyline& polyline, const SmoothingConfig& cfg);

}  // namespace voxbridge
