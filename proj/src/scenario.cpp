#include "voxbridge/scenario.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "voxbridge/executor.hpp"
#include "voxbridge/kinematics.hpp"

namespace voxbridge {

const char* to_string(DensityClass d) {
  switch (d) {
    case DensityClass::Sparse: return "sparse";
    case DensityClass::Medium: return "medium";
    case DensityClass::Dense: return "dense";
  }
  return "?";
}

std::optional<DensityClass> density_from_string(const std::string& s) {
  if (s == "sparse") return DensityClass::Sparse;
  if (s == "medium") return DensityClass::Medium;
  if (s == "dense") return DensityClass::Dense;
  return std::nullopt;
}

int density_count_min(DensityClass d) {
  switch (d) {
    case DensityClass::Sparse: return 0;
    case DensityClass::Medium: return 31;
    case DensityClass::Dense: return 100;
  }
  return 0;
}

int density_count_max(DensityClass d) {
  switch (d) {
    case DensityClass::Sparse: return 30;
    case DensityClass::Medium: return 99;
    case DensityClass::Dense: return 150;
  }
  return 0;
}

namespace {

double limit_margin(const ArmModel& model, const Vec7& q) {
  double m = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kNumJoints; ++j) {
    m = std::min(m, std::min(q[j] - model.joints[j].q_min, model.joints[j].q_max - q[j]));
  }
  return m;
}

Vec7 sample_config(std::mt19937_64& gen, const ArmModel& model, double margin) {
  Vec7 q;
  for (int j = 0; j < kNumJoints; ++j) {
    q[j] = uniform_real(gen, model.joints[j].q_min + margin, model.joints[j].q_max - margin);
  }
  return q;
}

Vec3 sample_goal_point(std::mt19937_64& gen, const ArmModel& model, const GenerationConfig& cfg) {
  // Direction by normalized gaussian-ish rejection on the cube, radius uniform.
  for (;;) {
    Vec3 d(uniform_real(gen, -1.0, 1.0), uniform_real(gen, -1.0, 1.0), uniform_real(gen, -1.0, 1.0));
    const double n = d.norm();
    if (n < 1e-6 || n > 1.0) continue;
    d /= n;
    if (d.z() < -0.2) continue;  // mostly above the base plate
    const double r = uniform_real(gen, cfg.min_goal_radius, cfg.goal_reach_fraction * model.reach);
    return r * d;
  }
}

bool point_cell_free(const Vec3& p, const GenerationConfig& cfg,
                     std::span<const Obstacle> obstacles) {
  if (!cfg.grid) return true;
  const VoxelIndex v = cfg.grid->voxel_of(p);
  if (!cfg.grid->in_bounds(v)) return false;
  const Vec3 c = cfg.grid->center(v);
  for (const Obstacle& o : obstacles) {
    const double r = o.radius + cfg.inflation;
    if ((c - o.center).squaredNorm() <= r * r) return false;
  }
  return true;
}

}  // namespace

Scenario generate_scenario(DensityClass density, std::uint64_t seed, const ArmModel& model,
                           const GenerationConfig& cfg) {
  std::mt19937_64 gen(split_seed(seed));

  ExecutorConfig ik_cfg;
  ik_cfg.eps_p = cfg.ik_tolerance;

  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    // Start configuration: inside the shrunk limit box and self-collision free.
    const Vec7 q_start = sample_config(gen, model, cfg.joint_margin);
    if (collision_check(model, q_start, {})) continue;
    const Vec3 x_start = forward_position(model, q_start);

    const Vec3 x_goal = sample_goal_point(gen, model, cfg);
    if ((x_goal - x_start).norm() < cfg.min_task_distance) continue;

    // Obstacle field, keeping a clear ball around both endpoints.
    const int count = uniform_int(gen, density_count_min(density), density_count_max(density));
    std::vector<Obstacle> obstacles;
    obstacles.reserve(count);
    bool field_ok = true;
    for (int i = 0; i < count; ++i) {
      Obstacle o;
      bool placed = false;
      for (int t = 0; t < 50; ++t) {
        o.center = Vec3(uniform_real(gen, -1.0, 1.0), uniform_real(gen, -1.0, 1.0),
                        uniform_real(gen, -1.0, 1.0));
        o.radius = uniform_real(gen, cfg.radius_min, cfg.radius_max);
        if ((o.center - x_start).norm() < cfg.clear_radius) continue;
        if ((o.center - x_goal).norm() < cfg.clear_radius) continue;
        placed = true;
        break;
      }
      if (!placed) {
        field_ok = false;
        break;
      }
      obstacles.push_back(o);
    }
    if (!field_ok) continue;

    if (collision_check(model, q_start, obstacles)) continue;
    if (min_clearance(x_goal, obstacles) <= 0.0) continue;
    if (!point_cell_free(x_start, cfg, obstacles) || !point_cell_free(x_goal, cfg, obstacles))
      continue;

    // Goal configuration via the execution-layer IK, seeded at the start.
    bool goal_found = false;
    Vec7 q_goal = Vec7::Zero();
    for (int t = 0; t < cfg.goal_tries_per_start && !goal_found; ++t) {
      const Vec7 q_seed = (t == 0) ? q_start : sample_config(gen, model, cfg.joint_margin);
      auto [q_sol, err] = solve_position_ik(model, q_seed, x_goal, ik_cfg, cfg.ik_max_iters);
      if (err > cfg.ik_tolerance) continue;
      if (limit_margin(model, q_sol) < cfg.joint_margin) continue;
      if (collision_check(model, q_sol, obstacles)) continue;
      q_goal = q_sol;
      goal_found = true;
    }
    if (!goal_found) continue;

    Scenario s;
    s.seed = seed;
    s.density = density;
    s.obstacles = std::move(obstacles);
    s.q_start = q_start;
    s.x_start = x_start;
    s.x_goal = x_goal;
    s.q_goal = q_goal;
    return s;
  }
  throw GenerationFailed("generate_scenario: no feasible task after " +
                         std::to_string(cfg.max_attempts) + " attempts (density " +
                         to_string(density) + ", seed " + std::to_string(seed) + ")");
}

void save_scenario(const Scenario& s, std::ostream& out) {
  out << std::setprecision(17);
  out << "seed " << s.seed << "\n";
  out << "density " << to_string(s.density) << "\n";
  out << "q_start";
  for (int j = 0; j < kNumJoints; ++j) out << " " << s.q_start[j];
  out << "\n";
  out << "x_start " << s.x_start.x() << " " << s.x_start.y() << " " << s.x_start.z() << "\n";
  out << "x_goal " << s.x_goal.x() << " " << s.x_goal.y() << " " << s.x_goal.z() << "\n";
  out << "q_goal";
  for (int j = 0; j < kNumJoints; ++j) out << " " << s.q_goal[j];
  out << "\n";
  out << "obstacles " << s.obstacles.size() << "\n";
  for (const Obstacle& o : s.obstacles) {
    out << "obstacle " << o.center.x() << " " << o.center.y() << " " << o.center.z() << " "
        << o.radius << "\n";
  }
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open scenario file for writing: " + path);
  save_scenario(s, out);
}

Scenario load_scenario(std::istream& in) {
  Scenario s;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "seed") {
      ls >> s.seed;
    } else if (key == "density") {
      std::string d;
      ls >> d;
      const auto parsed = density_from_string(d);
      if (!parsed) throw std::runtime_error("scenario file: bad density '" + d + "'");
      s.density = *parsed;
    } else if (key == "q_start") {
      for (int j = 0; j < kNumJoints; ++j) ls >> s.q_start[j];
    } else if (key == "x_start") {
      ls >> s.x_start.x() >> s.x_start.y() >> s.x_start.z();
    } else if (key == "x_goal") {
      ls >> s.x_goal.x() >> s.x_goal.y() >> s.x_goal.z();
    } else if (key == "q_goal") {
      for (int j = 0; j < kNumJoints; ++j) ls >> s.q_goal[j];
    } else if (key == "obstacles") {
      std::size_t n;
      ls >> n;
      s.obstacles.reserve(n);
    } else if (key == "obstacle") {
      Obstacle o;
      ls >> o.center.x() >> o.center.y() >> o.center.z() >> o.radius;
      s.obstacles.push_back(o);
    } else {
      throw std::runtime_error("scenario file: unknown directive '" + key + "'");
    }
    if (ls.fail()) throw std::runtime_error("scenario file: malformed line: " + line);
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  return load_scenario(in);
}

}  // namespace voxbridge
