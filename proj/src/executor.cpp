#include "voxbridge/executor.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace voxbridge {

Vec7 clip_norm(const Vec7& dq, double bound) {
  if (!(bound > 0.0)) throw std::invalid_argument("clip_norm: bound must be > 0");
  const double n = dq.norm();
  if (n <= bound) return dq;
  return dq * (bound / n);
}

Vec7 clip_components(const Vec7& dq, const Vec7& bounds) {
  Vec7 out;
  for (int j = 0; j < kNumJoints; ++j) {
    out[j] = std::clamp(dq[j], -bounds[j], bounds[j]);
  }
  return out;
}

std::pair<Vec7, TpDlsStepRecord> tp_dls_step(const ArmModel& model, const Vec7& q,
                                             const Vec3& x_target, const ExecutorConfig& cfg) {
  TpDlsStepRecord rec;
  rec.e_p = x_target - forward_position(model, q);

  const Mat37 jp = geometric_jacobian(model, q).translational;
  const Mat73 jp_dagger = dls_pinv(jp, cfg.lambda);
  rec.dq1 = jp_dagger * (cfg.k_p * rec.e_p);

  const Mat77 n1 = null_projector(jp, jp_dagger);
  rec.e_c = model.q_mid() - q;
  rec.dq2 = cfg.alpha_c * (n1.transpose() * rec.e_c);

  Vec7 dq = rec.dq1 + rec.dq2;
  if (!dq.allFinite()) throw std::runtime_error("tp_dls_step: non-finite joint update");

  const Vec7 norm_clipped = clip_norm(dq, cfg.dq_max_norm);
  rec.clipped_norm = (norm_clipped - dq).norm() > 0.0;
  dq = norm_clipped;

  const Vec7 comp_clipped = clip_components(dq, cfg.dq_max_joint);
  for (int j = 0; j < kNumJoints; ++j) rec.clipped_joints[j] = comp_clipped[j] != dq[j];
  rec.dq = comp_clipped;

  return {q + rec.dq, rec};
}

JointTrajectory execute_tp_dls(const ArmModel& model, const Vec7& q0, const ReferencePath& reference,
                               const ExecutorConfig& cfg, const StepSink& sink) {
  const auto t0 = std::chrono::steady_clock::now();
  JointTrajectory traj;
  traj.configs.push_back(q0);

  Vec7 q = q0;
  for (const Vec3& target : reference.micro) {
    int iters = 0;
    double err = (target - forward_position(model, q)).norm();
    while (err > cfg.eps_p && iters < cfg.k_max_iters) {
      auto [q_next, rec] = tp_dls_step(model, q, target, cfg);
      if (sink) sink(rec);
      q = q_next;
      ++iters;
      err = (target - forward_position(model, q)).norm();
    }
    traj.configs.push_back(q);
    traj.waypoint_errors.push_back(err);
    traj.iteration_counts.push_back(iters);
    if (err > cfg.eps_p) {
      traj.success = false;
      traj.compute_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return traj;
    }
  }
  traj.success = true;
  traj.compute_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return traj;
}

std::pair<Vec7, double> solve_position_ik(const ArmModel& model, const Vec7& q0,
                                          const Vec3& x_target, const ExecutorConfig& cfg,
                                          int max_iters) {
  Vec7 q = q0;
  double err = (x_target - forward_position(model, q)).norm();
  for (int k = 0; k < max_iters && err > cfg.eps_p; ++k) {
    auto [q_next, rec] = tp_dls_step(model, q, x_target, cfg);
    q = q_next;
    err = (x_target - forward_position(model, q)).norm();
  }
  return {q, err};
}

JointTrajectory execute_num_ik(const ArmModel& model, const Vec7& q0,
                               const ReferencePath& reference, const ExecutorConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  JointTrajectory traj;
  traj.configs.push_back(q0);

  Vec7 q = q0;
  for (const Vec3& target : reference.macro) {
    int iters = 0;
    Vec3 e = target - forward_position(model, q);
    // Plain Gauss-Newton with a token damping term: no step bounds, no
    // redundancy handling, each waypoint solved from the previous answer.
    while (e.norm() > cfg.eps_p && iters < cfg.numik_max_iters) {
      const Mat37 jp = geometric_jacobian(model, q).translational;
      const Vec7 dq = dls_pinv(jp, cfg.numik_lambda) * e;
      if (!dq.allFinite()) break;
      q += dq;
      ++iters;
      e = target - forward_position(model, q);
    }
    const double err = e.norm();
    traj.configs.push_back(q);
    traj.waypoint_errors.push_back(err);
    traj.iteration_counts.push_back(iters);
    if (err > cfg.eps_p || !q.allFinite()) {
      traj.success = false;
      traj.compute_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return traj;
    }
  }
  traj.success = true;
  traj.compute_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return traj;
}

void save_trajectory(const JointTrajectory& traj, std::ostream& out) {
  out << std::setprecision(17);
  out << "success " << (traj.success ? 1 : 0) << "\n";
  out << "configs " << traj.configs.size() << "\n";
  for (std::size_t i = 0; i < traj.configs.size(); ++i) {
    out << "waypoint " << i;
    if (i == 0) {
      out << " err 0 iters 0";
    } else {
      out << " err " << traj.waypoint_errors[i - 1] << " iters " << traj.iteration_counts[i - 1];
    }
    out << " q";
    for (int j = 0; j < kNumJoints; ++j) out << " " << traj.configs[i][j];
    out << "\n";
  }
}

JointTrajectory load_trajectory(std::istream& in) {
  JointTrajectory traj;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "success") {
      int s = 0;
      ls >> s;
      traj.success = s != 0;
    } else if (key == "configs") {
      std::size_t n = 0;
      ls >> n;
      traj.configs.reserve(n);
    } else if (key == "waypoint") {
      std::size_t idx;
      std::string tag;
      double err;
      int iters;
      Vec7 q;
      ls >> idx >> tag >> err >> tag >> iters >> tag;
      for (int j = 0; j < kNumJoints; ++j) ls >> q[j];
      if (ls.fail()) throw std::runtime_error("trajectory file: malformed line: " + line);
      traj.configs.push_back(q);
      if (idx > 0) {
        traj.waypoint_errors.push_back(err);
        traj.iteration_counts.push_back(iters);
      }
    } else {
      throw std::runtime_error("trajectory file: unknown directive '" + key + "'");
    }
  }
  return traj;
}

}  // namespace voxbridge
