#pragma once

#include <array>

#include "voxbridge/arm_model.hpp"
#include "voxbridge/types.hpp"

namespace voxbridge {

// Base-frame geometric Jacobian, linear velocity rows first.
struct Jacobian {
  Mat67 full;
  Mat37 translational;  // rows 0..2 of `full`
};

// frames[0] is the base (identity); frames[k] is the frame after joint k-1.
std::array<Eigen::Isometry3d, kNumJoints + 1> link_frames(const ArmModel& model, const Vec7& q);

// End-effector position in the base frame. Throws std::invalid_argument on
// non-finite q.
Vec3 forward_position(const ArmModel& model, const Vec7& q);

Jacobian geometric_jacobian(const ArmModel& model, const Vec7& q);

// Damped pseudo-inverse Jp^T (Jp Jp^T + lambda^2 I3)^-1. The damped 3x3
// system is positive definite, so the result is always finite.
// Throws std::invalid_argument if lambda <= 0.
Mat73 dls_pinv(const Mat37& jp, double lambda);

// N = I7 - jp_dagger * jp. Only an approximate annihilator of jp under
// nonzero damping.
Mat77 null_projector(const Mat37& jp, const Mat73& jp_dagger);

}  // namespace voxbridge
