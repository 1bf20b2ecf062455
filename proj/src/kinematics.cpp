#include "voxbridge/kinematics.hpp"

#include <stdexcept>

namespace voxbridge {

std::array<Eigen::Isometry3d, kNumJoints + 1> link_frames(const ArmModel& model, const Vec7& q) {
  std::array<Eigen::Isometry3d, kNumJoints + 1> frames;
  frames[0] = Eigen::Isometry3d::Identity();
  for (int i = 0; i < kNumJoints; ++i) {
    Eigen::Isometry3d local(Eigen::AngleAxisd(q[i], model.joints[i].axis));
    local.translation() = local.linear() * model.joints[i].offset;
    // offset is expressed in the rotated joint frame, i.e. the link moves
    // with its joint.
    frames[i + 1] = frames[i] * local;
  }
  return frames;
}

Vec3 forward_position(const ArmModel& model, const Vec7& q) {
  if (!q.allFinite()) throw std::invalid_argument("forward_position: non-finite joint vector");
  return link_frames(model, q)[kNumJoints].translation();
}

Jacobian geometric_jacobian(const ArmModel& model, const Vec7& q) {
  if (!q.allFinite()) throw std::invalid_argument("geometric_jacobian: non-finite joint vector");
  const auto frames = link_frames(model, q);
  const Vec3 p_ee = frames[kNumJoints].translation();

  Jacobian jac;
  for (int i = 0; i < kNumJoints; ++i) {
    // Revolute joint i rotates about an axis through the origin of frame i.
    const Vec3 axis_world = frames[i].linear() * model.joints[i].axis;
    const Vec3 origin = frames[i].translation();
    jac.full.block<3, 1>(0, i) = axis_world.cross(p_ee - origin);
    jac.full.block<3, 1>(3, i) = axis_world;
  }
  jac.translational = jac.full.topRows<3>();
  return jac;
}

Mat73 dls_pinv(const Mat37& jp, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dls_pinv: lambda must be > 0");
  Eigen::Matrix3d damped = jp * jp.transpose();
  damped.diagonal().array() += lambda * lambda;
  return jp.transpose() * damped.llt().solve(Eigen::Matrix3d::Identity());
}

Mat77 null_projector(const Mat37& jp, const Mat73& jp_dagger) {
  return Mat77::Identity() - jp_dagger * jp;
}

}  // namespace voxbridge
