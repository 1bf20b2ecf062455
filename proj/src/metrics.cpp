#include "voxbridge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace voxbridge {

double percentile(std::span<const double> values, double p) {
  if (values.empty()) return 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

PlannerMetrics planner_metrics(const PathPolyline& path, std::span<const Obstacle> obstacles,
                               const FailurePenalties& penalties,
                               std::span<const Vec3> clearance_samples) {
  PlannerMetrics m;
  m.success = path.success;

  if (path.success) {
    double length = 0.0;
    int turns = 0;
    for (std::size_t i = 1; i < path.points.size(); ++i) {
      length += (path.points[i] - path.points[i - 1]).norm();
    }
    for (std::size_t i = 1; i + 1 < path.points.size(); ++i) {
      const Vec3 in = path.points[i] - path.points[i - 1];
      const Vec3 out = path.points[i + 1] - path.points[i];
      const double denom = in.norm() * out.norm();
      if (denom == 0.0) continue;
      const double angle = std::acos(std::clamp(in.dot(out) / denom, -1.0, 1.0));
      if (angle > kTurnThreshold) ++turns;
    }
    m.length = length;
    m.turns = turns;
    m.steps = path.points.empty() ? 0.0 : static_cast<double>(path.points.size() - 1);
  } else {
    m.length = penalties.length;
    m.turns = penalties.turns;
    m.steps = penalties.steps;
  }

  std::span<const Vec3> samples =
      clearance_samples.empty() ? std::span<const Vec3>(path.points) : clearance_samples;
  double clearance = std::numeric_limits<double>::infinity();
  for (const Vec3& p : samples) {
    clearance = std::min(clearance, min_clearance(p, obstacles));
  }
  m.min_clearance = clearance;
  return m;
}

ExecutionMetrics execution_metrics(const JointTrajectory& traj, const ArmModel& model, double dt) {
  if (traj.configs.empty()) throw std::invalid_argument("execution_metrics: empty trajectory");
  if (!(dt > 0.0)) throw std::invalid_argument("execution_metrics: dt must be > 0");

  ExecutionMetrics m;
  m.success = traj.success;
  m.time = traj.compute_seconds;

  const std::size_t n = traj.configs.size();
  std::vector<Vec7> increments;
  increments.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t i = 1; i < n; ++i) {
    increments.push_back(traj.configs[i] - traj.configs[i - 1]);
  }

  std::vector<double> norms;
  norms.reserve(increments.size());
  for (const Vec7& dq : increments) {
    norms.push_back(dq.norm());
    m.max_vel = std::max(m.max_vel, dq.cwiseAbs().maxCoeff() / dt);
  }
  m.dq_95 = percentile(norms, 0.95);

  for (std::size_t i = 1; i < increments.size(); ++i) {
    const Vec7 dd = increments[i] - increments[i - 1];
    m.max_acc = std::max(m.max_acc, dd.cwiseAbs().maxCoeff() / (dt * dt));
  }

  double margin = std::numeric_limits<double>::infinity();
  for (const Vec7& q : traj.configs) {
    for (int j = 0; j < kNumJoints; ++j) {
      margin = std::min(margin, std::min(q[j] - model.joints[j].q_min, model.joints[j].q_max - q[j]));
    }
  }
  m.joint_margin = margin;

  double backtracks = 0.0;
  for (const int iters : traj.iteration_counts) {
    if (iters > 1) backtracks += 1.0;
  }
  m.backtracks = backtracks;
  return m;
}

}  // namespace voxbridge
