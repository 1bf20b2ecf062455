#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "voxbridge/scenario.hpp"
#include "voxbridge/types.hpp"
#include "voxbridge/voxel_world.hpp"

namespace voxbridge {

enum class ActionVariant { Original, NoNorm, Improved };

const char* to_string(ActionVariant v);
std::optional<ActionVariant> variant_from_string(const std::string& s);

struct Action {
  VoxelIndex v;      // lattice offset, entries in {-1,0,1}
  Vec3 displacement; // physical step attached to the action
};

// Original: the 6 axis moves at grid resolution. NoNorm: all 26 lattice
// offsets scaled by the resolution (mixed step lengths). Improved: all 26
// directions rescaled to a common physical length delta.
struct ActionSet {
  ActionVariant variant = ActionVariant::Improved;
  std::vector<Action> actions;  // ordered lexicographically in v
  double delta = 0.05;          // m
};

ActionSet build_action_set(ActionVariant variant, double resolution, double delta);

struct TrainConfig {
  double alpha = 0.1;
  double gamma = 0.95;
  double epsilon_start = 0.9;   // linear decay over episodes
  double epsilon_end = 0.05;
  int episodes = 3000;
  int max_steps_per_episode = 400;
  double reward_goal = 100.0;
  double reward_collision = -100.0;  // also applied when leaving the grid
  double reward_step = -1.0;
};

struct TieBreakConfig {
  double epsilon_q = 1e-9;      // absolute tie threshold floor
  double epsilon_q_rel = 1e-6;  // relative part, scaled by |Q_max|
  double w_theta = 1.0;         // rad^-1, turning-angle weight
  double w_d = 5.0;             // m^-1, clearance weight
  int lookahead_steps = 2;
};

// Dense action-value table over (voxel linear index, action index).
class QTable {
 public:
  QTable() = default;
  QTable(std::size_t states, std::size_t actions)
      : values_(states * actions, 0.0), n_actions_(actions) {}

  double& at(std::size_t state, std::size_t action) { return values_[state * n_actions_ + action]; }
  double at(std::size_t state, std::size_t action) const {
    return values_[state * n_actions_ + action];
  }
  std::span<const double> row(std::size_t state) const {
    return {values_.data() + state * n_actions_, n_actions_};
  }
  std::size_t action_count() const { return n_actions_; }
  std::span<const double> raw() const { return values_; }
  bool operator==(const QTable& other) const = default;

 private:
  std::vector<double> values_;
  std::size_t n_actions_ = 0;
};

// (1 - alpha) * q_sa + alpha * (r + gamma * max_next).
double q_update(double q_sa, double r, double max_next, double alpha, double gamma);

// Episodic epsilon-greedy training from the scenario's start voxel toward
// the goal voxel. Lattice transitions are deterministic; off-grid or
// occupied successors terminate the episode with the collision reward.
// Deterministic per seed. Throws std::invalid_argument if the start or goal
// voxel is occupied.
QTable train(const Scenario& scenario, const VoxelGrid& grid, const ActionSet& actions,
             const TrainConfig& cfg, std::uint64_t seed);

// Among epsilon-near-optimal actions, prefer small turning angle and large
// look-ahead clearance; a unique winner is returned untouched.
std::size_t tie_break_select(std::span<const double> q_row, std::optional<std::size_t> prev_action,
                             const Vec3& position, std::span<const Obstacle> obstacles,
                             const ActionSet& actions, const TieBreakConfig& cfg);

struct PathPolyline {
  std::vector<Vec3> points;
  bool success = false;
};

// Greedy walk over the trained table. The Improved variant applies the
// geometric tie-break and accumulates its normalized displacements; the
// baselines emit voxel centers. Terminates on goal, collision, or k_max.
PathPolyline rollout(const QTable& table, const Scenario& scenario, const VoxelGrid& grid,
                     const ActionSet& actions, const TieBreakConfig& cfg, int k_max);

// Rollout cap used by the benchmark: 4 x grid diagonal, in voxels.
int default_rollout_cap(const GridSpec& spec);

}  // namespace voxbridge
