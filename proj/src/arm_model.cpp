#include "voxbridge/arm_model.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace voxbridge {

Vec7 ArmModel::q_min() const {
  Vec7 v;
  for (int i = 0; i < kNumJoints; ++i) v[i] = joints[i].q_min;
  return v;
}

Vec7 ArmModel::q_max() const {
  Vec7 v;
  for (int i = 0; i < kNumJoints; ++i) v[i] = joints[i].q_max;
  return v;
}

Vec7 ArmModel::q_mid() const { return 0.5 * (q_min() + q_max()); }

ArmModel ArmModel::default_model() {
  ArmModel m;
  const Vec3 z = Vec3::UnitZ();
  const Vec3 y = Vec3::UnitY();

  // Roll-pitch alternation; offsets sum to the 0.85 m reach.
  const double d_base = 0.20;   // base column to shoulder
  const double d_upper = 0.25;  // shoulder to elbow
  const double d_fore = 0.25;   // elbow to wrist
  const double d_hand = 0.15;   // wrist to end-effector

  m.joints[0] = {z, Vec3(0, 0, d_base), -2.9, 2.9};
  m.joints[1] = {y, Vec3::Zero(), -2.0, 2.0};
  m.joints[2] = {z, Vec3(0, 0, d_upper), -2.9, 2.9};
  m.joints[3] = {y, Vec3::Zero(), -2.0, 2.0};
  m.joints[4] = {z, Vec3(0, 0, d_fore), -2.9, 2.9};
  m.joints[5] = {y, Vec3::Zero(), -2.0, 2.0};
  m.joints[6] = {z, Vec3(0, 0, d_hand), -2.9, 2.9};

  m.reach = d_base + d_upper + d_fore + d_hand;

  // Two spheres per load-bearing segment, one near mid-span and one at the
  // distal end; smaller sphere at the end-effector.
  m.spheres = {
      {0, Vec3(0, 0, -0.10), 0.055},
      {0, Vec3(0, 0, 0.00), 0.055},
      {2, Vec3(0, 0, -0.125), 0.055},
      {2, Vec3(0, 0, 0.00), 0.055},
      {4, Vec3(0, 0, -0.125), 0.055},
      {4, Vec3(0, 0, 0.00), 0.055},
      {6, Vec3(0, 0, -0.075), 0.045},
      {6, Vec3(0, 0, 0.00), 0.040},
  };
  m.self_collision_gap = 2;
  return m;
}

namespace {

std::ostream& fmt(std::ostream& out) {
  out << std::setprecision(17);
  return out;
}

}  // namespace

void save_arm_model(const ArmModel& model, std::ostream& out) {
  fmt(out);
  out << "# 7-dof serial arm model\n";
  out << "joints " << kNumJoints << "\n";
  for (int i = 0; i < kNumJoints; ++i) {
    const JointParam& j = model.joints[i];
    out << "joint " << i << " axis " << j.axis.x() << " " << j.axis.y() << " " << j.axis.z()
        << " offset " << j.offset.x() << " " << j.offset.y() << " " << j.offset.z() << " qmin "
        << j.q_min << " qmax " << j.q_max << "\n";
  }
  for (const LinkSphere& s : model.spheres) {
    out << "sphere " << s.link << " " << s.center.x() << " " << s.center.y() << " " << s.center.z()
        << " " << s.radius << "\n";
  }
  out << "reach " << model.reach << "\n";
  out << "self_collision_gap " << model.self_collision_gap << "\n";
}

void save_arm_model(const ArmModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open model file for writing: " + path);
  save_arm_model(model, out);
}

ArmModel load_arm_model(std::istream& in) {
  ArmModel m;
  m.spheres.clear();
  std::array<bool, kNumJoints> seen{};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "joints") {
      int n = 0;
      ls >> n;
      if (n != kNumJoints) throw std::runtime_error("model file: expected 7 joints");
    } else if (key == "joint") {
      int idx = -1;
      std::string tag;
      JointParam j;
      ls >> idx >> tag >> j.axis.x() >> j.axis.y() >> j.axis.z() >> tag >> j.offset.x() >>
          j.offset.y() >> j.offset.z() >> tag >> j.q_min >> tag >> j.q_max;
      if (!ls || idx < 0 || idx >= kNumJoints) throw std::runtime_error("model file: bad joint line");
      if (j.q_min >= j.q_max) throw std::runtime_error("model file: q_min must be < q_max");
      m.joints[idx] = j;
      seen[idx] = true;
    } else if (key == "sphere") {
      LinkSphere s;
      ls >> s.link >> s.center.x() >> s.center.y() >> s.center.z() >> s.radius;
      if (!ls || s.link < 0 || s.link >= kNumJoints || s.radius <= 0.0)
        throw std::runtime_error("model file: bad sphere line");
      m.spheres.push_back(s);
    } else if (key == "reach") {
      ls >> m.reach;
    } else if (key == "self_collision_gap") {
      ls >> m.self_collision_gap;
    } else {
      throw std::runtime_error("model file: unknown directive '" + key + "'");
    }
  }
  for (int i = 0; i < kNumJoints; ++i)
    if (!seen[i]) throw std::runtime_error("model file: missing joint " + std::to_string(i));
  return m;
}

ArmModel load_arm_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  return load_arm_model(in);
}

std::uint64_t model_fingerprint(const ArmModel& model) {
  std::ostringstream os;
  save_arm_model(model, os);
  const std::string s = os.str();
  Fnv1a h;
  h.feed(s.data(), s.size());
  return h.state;
}

}  // namespace voxbridge
