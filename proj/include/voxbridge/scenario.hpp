#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "voxbridge/arm_model.hpp"
#include "voxbridge/voxel_world.hpp"

namespace voxbridge {

enum class DensityClass { Sparse, Medium, Dense };

const char* to_string(DensityClass d);
std::optional<DensityClass> density_from_string(const std::string& s);

// Obstacle counts per class.
int density_count_min(DensityClass d);  // 0 / 31 / 100
int density_count_max(DensityClass d);  // 30 / 99 / 150

// One benchmark task: a seeded obstacle field plus a feasible start
// configuration and goal position (with a reference goal configuration).
struct Scenario {
  std::uint64_t seed = 0;
  DensityClass density = DensityClass::Sparse;
  std::vector<Obstacle> obstacles;
  Vec7 q_start = Vec7::Zero();
  Vec3 x_start = Vec3::Zero();  // forward_position(q_start), stored for convenience
  Vec3 x_goal = Vec3::Zero();
  Vec7 q_goal = Vec7::Zero();
};

struct GenerationConfig {
  double joint_margin = 0.2;       // rad, required distance from limits
  int max_attempts = 200;
  double radius_min = 0.03;        // obstacle radius range, m
  double radius_max = 0.10;
  double clear_radius = 0.1;       // obstacle centers excluded around start/goal
  double min_task_distance = 0.25; // |x_goal - x_start|
  double min_goal_radius = 0.25;   // |x_goal| range, as fraction of reach above
  double goal_reach_fraction = 0.92;
  int goal_tries_per_start = 20;
  int ik_max_iters = 800;
  double ik_tolerance = 1e-3;      // m

  // When set, start and goal voxel centers must be unoccupied in the grid
  // the planner will use.
  std::optional<GridSpec> grid;
  double inflation = 0.0;
};

// Thrown after max_attempts; signals an over-constrained scene. The caller
// is expected to retry with a derived seed.
struct GenerationFailed : std::runtime_error {
  explicit GenerationFailed(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic in (density, seed, model, cfg).
Scenario generate_scenario(DensityClass density, std::uint64_t seed, const ArmModel& model,
                           const GenerationConfig& cfg = {});

// Text serialization; round-trips losslessly (17 significant digits).
void save_scenario(const Scenario& s, std::ostream& out);
void save_scenario(const Scenario& s, const std::string& path);
Scenario load_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

}  // namespace voxbridge
