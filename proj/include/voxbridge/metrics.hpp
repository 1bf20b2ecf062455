#pragma once

#include <span>

#include "voxbridge/executor.hpp"
#include "voxbridge/planner.hpp"
#include "voxbridge/voxel_world.hpp"

namespace voxbridge {

// Reported instead of the measured values when a plan fails.
struct FailurePenalties {
  double length = 999.0;   // m
  double turns = 9999.0;
  double steps = 9999.0;
};

struct PlannerMetrics {
  bool success = false;
  double length = 0.0;         // m
  double turns = 0.0;          // interior vertices with direction change
  double steps = 0.0;          // segment count
  double min_clearance = 0.0;  // m, +inf when the scene has no obstacles
};

struct ExecutionMetrics {
  bool success = false;
  double dq_95 = 0.0;         // rad, 95th percentile of increment norms
  double max_vel = 0.0;       // rad/s
  double max_acc = 0.0;       // rad/s^2
  double joint_margin = 0.0;  // rad, negative only if a limit was crossed
  double backtracks = 0.0;    // waypoints needing more than one iteration
  double time = 0.0;          // s
};

// An interior vertex counts as a turn when the direction change exceeds this
// angle; large enough to ignore floating-point noise, small enough to count
// every genuine turn.
inline constexpr double kTurnThreshold = 1e-3;  // rad

// Length, steps and turns come from the polyline; clearance is minimized
// over `clearance_samples` (pass the smoothed micro points to capture spline
// excursions) or over the polyline vertices when the span is empty.
PlannerMetrics planner_metrics(const PathPolyline& path, std::span<const Obstacle> obstacles,
                               const FailurePenalties& penalties,
                               std::span<const Vec3> clearance_samples = {});

ExecutionMetrics execution_metrics(const JointTrajectory& traj, const ArmModel& model, double dt);

// Linear interpolation between order statistics; p in [0,1].
double percentile(std::span<const double> values, double p);

}  // namespace voxbridge
