#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "voxbridge/types.hpp"

namespace voxbridge {

// One revolute joint: rotation about `axis` (unit vector in the parent frame)
// followed by a fixed translation `offset` to the next joint frame.
struct JointParam {
  Vec3 axis = Vec3::UnitZ();
  Vec3 offset = Vec3::Zero();
  double q_min = -2.9;
  double q_max = 2.9;
};

// Bounding sphere attached to a link frame (frame reached after applying
// that link's joint transform).
struct LinkSphere {
  int link = 0;  // 0..6
  Vec3 center = Vec3::Zero();
  double radius = 0.05;
};

// Kinematic and collision description of the 7-joint serial arm.
//
// The default model is an S-R-S chain (alternating roll/pitch axes) whose
// link offsets sum to 0.85 m, so the fully stretched pose q = 0 attains the
// stated reach exactly. Limits are symmetric: +-2.9 rad on roll joints,
// +-2.0 rad on pitch joints.
struct ArmModel {
  std::array<JointParam, kNumJoints> joints;
  std::vector<LinkSphere> spheres;
  double reach = 0.85;
  // Link-sphere pairs with |link_i - link_j| <= gap are skipped during
  // self-collision checks; neighbouring segments touch by construction.
  int self_collision_gap = 2;

  Vec7 q_min() const;
  Vec7 q_max() const;
  Vec7 q_mid() const;

  static ArmModel default_model();
};

// Text model file, one directive per line:
//   joints 7
//   joint <i> axis <x y z> offset <x y z> qmin <v> qmax <v>
//   sphere <link> <cx> <cy> <cz> <radius>
//   reach <v>
//   self_collision_gap <n>
// '#' starts a comment. Doubles are written with 17 significant digits and
// round-trip exactly.
ArmModel load_arm_model(std::istream& in);
ArmModel load_arm_model(const std::string& path);
void save_arm_model(const ArmModel& model, std::ostream& out);
void save_arm_model(const ArmModel& model, const std::string& path);

// Fingerprint of the canonical serialization, recorded in benchmark metadata.
std::uint64_t model_fingerprint(const ArmModel& model);

}  // namespace voxbridge
