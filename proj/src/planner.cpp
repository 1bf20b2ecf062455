#include "voxbridge/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voxbridge/kinematics.hpp"

namespace voxbridge {

const char* to_string(ActionVariant v) {
  switch (v) {
    case ActionVariant::Original: return "original";
    case ActionVariant::NoNorm: return "nonorm";
    case ActionVariant::Improved: return "improved";
  }
  return "?";
}

std::optional<ActionVariant> variant_from_string(const std::string& s) {
  if (s == "original") return ActionVariant::Original;
  if (s == "nonorm") return ActionVariant::NoNorm;
  if (s == "improved") return ActionVariant::Improved;
  return std::nullopt;
}

ActionSet build_action_set(ActionVariant variant, double resolution, double delta) {
  if (!(resolution > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("build_action_set: resolution and delta must be > 0");

  ActionSet set;
  set.variant = variant;
  set.delta = delta;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dz = -1; dz <= 1; ++dz) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        const VoxelIndex v(dx, dy, dz);
        if (variant == ActionVariant::Original && v.cwiseAbs().sum() != 1) continue;
        Action a;
        a.v = v;
        const Vec3 dir = v.cast<double>();
        if (variant == ActionVariant::Improved) {
          a.displacement = delta * dir / dir.norm();
        } else {
          a.displacement = resolution * dir;
        }
        set.actions.push_back(a);
      }
    }
  }
  return set;
}

double q_update(double q_sa, double r, double max_next, double alpha, double gamma) {
  return (1.0 - alpha) * q_sa + alpha * (r + gamma * max_next);
}

namespace {

std::size_t argmax_row(std::span<const double> row) {
  return static_cast<std::size_t>(
      std::distance(row.begin(), std::max_element(row.begin(), row.end())));
}

}  // namespace

QTable train(const Scenario& scenario, const VoxelGrid& grid, const ActionSet& actions,
             const TrainConfig& cfg, std::uint64_t seed) {
  const VoxelIndex start = grid.voxel_of(scenario.x_start);
  const VoxelIndex goal = grid.voxel_of(scenario.x_goal);
  if (!grid.is_free(start)) throw std::invalid_argument("train: start voxel occupied");
  if (!grid.is_free(goal)) throw std::invalid_argument("train: goal voxel occupied");

  const std::size_t n_actions = actions.actions.size();
  QTable table(grid.size(), n_actions);
  const std::size_t goal_idx = grid.linear_index(goal);

  std::mt19937_64 gen(split_seed(seed));
  for (int ep = 0; ep < cfg.episodes; ++ep) {
    const double frac = cfg.episodes > 1 ? static_cast<double>(ep) / (cfg.episodes - 1) : 1.0;
    const double epsilon = cfg.epsilon_start + (cfg.epsilon_end - cfg.epsilon_start) * frac;

    VoxelIndex s = start;
    std::size_t s_idx = grid.linear_index(s);
    for (int step = 0; step < cfg.max_steps_per_episode; ++step) {
      std::size_t a_idx;
      if (uniform_real(gen, 0.0, 1.0) < epsilon) {
        a_idx = static_cast<std::size_t>(uniform_int(gen, 0, static_cast<int>(n_actions) - 1));
      } else {
        a_idx = argmax_row(table.row(s_idx));
      }

      const VoxelIndex next = s + actions.actions[a_idx].v;
      double& q = table.at(s_idx, a_idx);
      if (!grid.is_free(next)) {
        q = q_update(q, cfg.reward_collision, 0.0, cfg.alpha, cfg.gamma);
        break;
      }
      const std::size_t next_idx = grid.linear_index(next);
      if (next_idx == goal_idx) {
        q = q_update(q, cfg.reward_goal, 0.0, cfg.alpha, cfg.gamma);
        break;
      }
      const auto next_row = table.row(next_idx);
      const double max_next = *std::max_element(next_row.begin(), next_row.end());
      q = q_update(q, cfg.reward_step, max_next, cfg.alpha, cfg.gamma);
      s = next;
      s_idx = next_idx;
    }
  }
  return table;
}

std::size_t tie_break_select(std::span<const double> q_row, std::optional<std::size_t> prev_action,
                             const Vec3& position, std::span<const Obstacle> obstacles,
                             const ActionSet& actions, const TieBreakConfig& cfg) {
  const std::size_t best = argmax_row(q_row);
  const double q_max = q_row[best];
  const double eps = cfg.epsilon_q + cfg.epsilon_q_rel * std::abs(q_max);

  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < q_row.size(); ++i) {
    if (std::abs(q_row[i] - q_max) < eps) tied.push_back(i);
  }
  if (tied.size() <= 1) return best;

  // Clearance differences beyond a few steps carry no information for
  // choosing among tied actions, so the look-ahead distance is capped.
  const double d_cap = 4.0 * actions.delta;

  double best_score = -std::numeric_limits<double>::infinity();
  std::size_t best_idx = tied.front();
  for (const std::size_t i : tied) {
    const Vec3& a = actions.actions[i].displacement;
    double theta = 0.0;
    if (prev_action) {
      const Vec3& a_prev = actions.actions[*prev_action].displacement;
      const double c = a.dot(a_prev) / (a.norm() * a_prev.norm());
      theta = std::acos(std::clamp(c, -1.0, 1.0));
    }
    double d_obs = d_cap;
    for (int k = 1; k <= cfg.lookahead_steps; ++k) {
      d_obs = std::min(d_obs, min_clearance(position + k * a, obstacles));
    }
    const double score = -cfg.w_theta * theta + cfg.w_d * d_obs;
    if (score > best_score) {
      best_score = score;
      best_idx = i;
    }
  }
  return best_idx;
}

PathPolyline rollout(const QTable& table, const Scenario& scenario, const VoxelGrid& grid,
                     const ActionSet& actions, const TieBreakConfig& cfg, int k_max) {
  const bool improved = actions.variant == ActionVariant::Improved;
  const VoxelIndex start = grid.voxel_of(scenario.x_start);
  const VoxelIndex goal = grid.voxel_of(scenario.x_goal);

  PathPolyline path;
  path.points.push_back(grid.center(start));
  if (start == goal) {
    path.success = true;
    return path;
  }

  VoxelIndex s = start;
  Vec3 x = path.points.front();
  std::optional<std::size_t> prev;
  for (int k = 0; k < k_max; ++k) {
    const auto row = table.row(grid.linear_index(s));
    const std::size_t a_idx = improved
                                  ? tie_break_select(row, prev, x, scenario.obstacles, actions, cfg)
                                  : argmax_row(row);

    const VoxelIndex next = s + actions.actions[a_idx].v;
    if (!grid.is_free(next)) return path;  // walked into a wall or off the grid

    const Vec3 x_next = improved ? Vec3(x + actions.actions[a_idx].displacement)
                                 : grid.center(next);
    if (!grid.is_free(grid.voxel_of(x_next))) return path;

    path.points.push_back(x_next);
    s = next;
    x = x_next;
    prev = a_idx;
    if (s == goal) {
      path.success = true;
      return path;
    }
  }
  return path;  // budget exhausted
}

int default_rollout_cap(const GridSpec& spec) {
  const double diag = spec.dims.cast<double>().norm();
  return static_cast<int>(std::ceil(4.0 * diag));
}

}  // namespace voxbridge
