#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "voxbridge/arm_model.hpp"
#include "voxbridge/kinematics.hpp"
#include "voxbridge/smoothing.hpp"

namespace voxbridge {

struct ExecutorConfig {
  double lambda = 0.05;       // damping of the primary-task pseudo-inverse
  double k_p = 1.0;           // position gain
  double alpha_c = 0.05;      // null-space joint-centering gain
  double dq_max_norm = 0.05;  // rad, bound on ||dq||_2 per iteration
  Vec7 dq_max_joint = Vec7::Constant(0.03);  // rad, per-joint bound
  double eps_p = 1e-3;        // m, waypoint position tolerance
  int k_max_iters = 200;      // iteration budget per waypoint
  double dt = 0.01;           // s, nominal step used for velocity metrics

  // Baseline solver: near-exact Gauss-Newton, no clipping, no null-space
  // term, small damping for numerical safety only.
  double numik_lambda = 1e-6;
  int numik_max_iters = 100;
};

// Everything computed in one damped task-priority iteration.
struct TpDlsStepRecord {
  Vec3 e_p = Vec3::Zero();    // position error before the update
  Vec7 e_c = Vec7::Zero();    // joint-centering error
  Vec7 dq1 = Vec7::Zero();    // primary-task update
  Vec7 dq2 = Vec7::Zero();    // null-space update
  Vec7 dq = Vec7::Zero();     // applied update after clipping
  bool clipped_norm = false;
  std::array<bool, kNumJoints> clipped_joints{};
};

struct JointTrajectory {
  std::vector<Vec7> configs;          // initial config plus one per waypoint
  std::vector<double> waypoint_errors;  // final position error per waypoint, m
  std::vector<int> iteration_counts;
  bool success = false;
  double compute_seconds = 0.0;
};

using StepSink = std::function<void(const TpDlsStepRecord&)>;

// Scale dq down to ||dq|| = bound when it exceeds the bound; direction is
// preserved. Throws std::invalid_argument if bound <= 0.
Vec7 clip_norm(const Vec7& dq, double bound);

// Componentwise saturation to [-bounds_j, bounds_j].
Vec7 clip_components(const Vec7& dq, const Vec7& bounds);

// One task-priority iteration toward x_target: damped least-squares position
// step plus joint centering projected through the null space, then norm and
// per-joint clipping. Throws std::runtime_error on non-finite intermediates.
std::pair<Vec7, TpDlsStepRecord> tp_dls_step(const ArmModel& model, const Vec7& q,
                                             const Vec3& x_target, const ExecutorConfig& cfg);

// Track every micro waypoint of the reference; a waypoint that misses eps_p
// within the iteration budget fails the whole trajectory.
JointTrajectory execute_tp_dls(const ArmModel& model, const Vec7& q0, const ReferencePath& reference,
                               const ExecutorConfig& cfg, const StepSink& sink = nullptr);

// Pointwise Gauss-Newton baseline on the macro waypoints: previous solution
// as initial guess, no task priority, no centering, no step bounds.
JointTrajectory execute_num_ik(const ArmModel& model, const Vec7& q0,
                               const ReferencePath& reference, const ExecutorConfig& cfg);

// Single-target convergence helper (also used when generating goal
// configurations). Returns the final configuration and error.
std::pair<Vec7, double> solve_position_ik(const ArmModel& model, const Vec7& q0,
                                          const Vec3& x_target, const ExecutorConfig& cfg,
                                          int max_iters);

// Trajectory dump: "waypoint <idx> err <e> iters <n> q <7 values>" per line.
void save_trajectory(const JointTrajectory& traj, std::ostream& out);
JointTrajectory load_trajectory(std::istream& in);

}  // namespace voxbridge
