#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>
#include <map>
#include <random>

#include "voxbridge/planner.hpp"

using namespace voxbridge;

namespace {

// Free grid centered at the origin.
GridSpec small_spec(int n, double res) {
  GridSpec spec;
  spec.resolution = res;
  spec.dims = VoxelIndex(n, n, n);
  spec.origin = -0.5 * res * Vec3(n, n, n);
  return spec;
}

Scenario grid_task(const VoxelGrid& grid, const VoxelIndex& start, const VoxelIndex& goal) {
  Scenario s;
  s.x_start = grid.center(start);
  s.x_goal = grid.center(goal);
  return s;
}

// Breadth-first shortest path in steps over a given action set.
int bfs_steps(const VoxelGrid& grid, const ActionSet& actions, const VoxelIndex& start,
              const VoxelIndex& goal) {
  std::map<std::size_t, int> dist;
  std::deque<VoxelIndex> queue;
  dist[grid.linear_index(start)] = 0;
  queue.push_back(start);
  while (!queue.empty()) {
    const VoxelIndex v = queue.front();
    queue.pop_front();
    const int d = dist[grid.linear_index(v)];
    if (v == goal) return d;
    for (const Action& a : actions.actions) {
      const VoxelIndex n = v + a.v;
      if (!grid.is_free(n)) continue;
      if (dist.count(grid.linear_index(n))) continue;
      dist[grid.linear_index(n)] = d + 1;
      queue.push_back(n);
    }
  }
  return -1;
}

// Value iteration over the same MDP the trainer sees; exact for small grids.
std::vector<double> value_iteration(const VoxelGrid& grid, const ActionSet& actions,
                                    const VoxelIndex& goal, const TrainConfig& cfg) {
  std::vector<double> value(grid.size(), 0.0);
  const std::size_t goal_idx = grid.linear_index(goal);
  for (int sweep = 0; sweep < 2000; ++sweep) {
    double delta = 0.0;
    for (int z = 0; z < grid.spec().dims.z(); ++z)
      for (int y = 0; y < grid.spec().dims.y(); ++y)
        for (int x = 0; x < grid.spec().dims.x(); ++x) {
          const VoxelIndex v(x, y, z);
          const std::size_t idx = grid.linear_index(v);
          if (!grid.is_free(v) || idx == goal_idx) continue;
          double best = -std::numeric_limits<double>::infinity();
          for (const Action& a : actions.actions) {
            const VoxelIndex n = v + a.v;
            double q;
            if (!grid.is_free(n)) {
              q = cfg.reward_collision;
            } else if (grid.linear_index(n) == goal_idx) {
              q = cfg.reward_goal;
            } else {
              q = cfg.reward_step + cfg.gamma * value[grid.linear_index(n)];
            }
            best = std::max(best, q);
          }
          delta = std::max(delta, std::abs(best - value[idx]));
          value[idx] = best;
        }
    if (delta < 1e-12) break;
  }
  return value;
}

}  // namespace

TEST_CASE("action set shapes and norms") {
  const double res = 0.05;
  const double delta = 0.05;

  const ActionSet improved = build_action_set(ActionVariant::Improved, res, delta);
  REQUIRE(improved.actions.size() == 26);
  for (const Action& a : improved.actions) {
    CHECK(std::abs(a.displacement.norm() - delta) < 1e-15);
  }

  const ActionSet nonorm = build_action_set(ActionVariant::NoNorm, res, delta);
  REQUIRE(nonorm.actions.size() == 26);
  int n_axis = 0, n_face = 0, n_corner = 0;
  for (const Action& a : nonorm.actions) {
    const double n = a.displacement.norm();
    if (std::abs(n - res) < 1e-12) ++n_axis;
    if (std::abs(n - res * std::sqrt(2.0)) < 1e-12) ++n_face;
    if (std::abs(n - res * std::sqrt(3.0)) < 1e-12) ++n_corner;
  }
  CHECK(n_axis == 6);
  CHECK(n_face == 12);
  CHECK(n_corner == 8);

  const ActionSet original = build_action_set(ActionVariant::Original, res, delta);
  REQUIRE(original.actions.size() == 6);
  for (const Action& a : original.actions) {
    CHECK(a.v.cwiseAbs().sum() == 1);
    CHECK(std::abs(a.displacement.norm() - res) < 1e-15);
  }
}

TEST_CASE("action ordering is lexicographic and deterministic") {
  const ActionSet a = build_action_set(ActionVariant::Improved, 0.05, 0.05);
  const ActionSet b = build_action_set(ActionVariant::Improved, 0.05, 0.05);
  for (std::size_t i = 0; i < a.actions.size(); ++i) CHECK(a.actions[i].v == b.actions[i].v);
  CHECK(a.actions.front().v == VoxelIndex(-1, -1, -1));
  CHECK(a.actions.back().v == VoxelIndex(1, 1, 1));
}

TEST_CASE("q_update closed forms") {
  CHECK(q_update(0.0, 1.0, 0.0, 0.5, 0.9) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q_update(3.0, -1.0, 2.0, 1.0, 0.9) == doctest::Approx(-1.0 + 0.9 * 2.0).epsilon(1e-15));
  CHECK(q_update(3.0, -1.0, 2.0, 0.0, 0.9) == 3.0);
}

TEST_CASE("repeated updates reach the bellman fixed point of a 2-state chain") {
  // s0 -> s1 (step reward), s1 -> goal (goal reward); gamma discounts.
  const double gamma = 0.9, r_step = -1.0, r_goal = 100.0, alpha = 0.2;
  const double q1_star = r_goal;
  const double q0_star = r_step + gamma * q1_star;

  double q0 = 0.0, q1 = 0.0;
  for (int i = 0; i < 500; ++i) {
    q0 = q_update(q0, r_step, q1, alpha, gamma);
    q1 = q_update(q1, r_goal, 0.0, alpha, gamma);
  }
  CHECK(std::abs(q1 - q1_star) < 1e-9);
  CHECK(std::abs(q0 - q0_star) < 1e-9);
}

TEST_CASE("training solves an adjacent-goal grid, matching value iteration") {
  const GridSpec spec = small_spec(5, 0.1);
  const VoxelGrid grid = voxelize({}, spec, 0.0);
  const VoxelIndex start(2, 2, 2), goal(3, 2, 2);
  const Scenario scenario = grid_task(grid, start, goal);
  const ActionSet actions = build_action_set(ActionVariant::Original, spec.resolution, spec.resolution);

  TrainConfig cfg;
  cfg.episodes = 800;
  cfg.max_steps_per_episode = 60;
  const QTable table = train(scenario, grid, actions, cfg, 7);

  const auto values = value_iteration(grid, actions, goal, cfg);
  // Greedy action from the start must be optimal per the oracle.
  const auto row = table.row(grid.linear_index(start));
  const std::size_t greedy =
      std::distance(row.begin(), std::max_element(row.begin(), row.end()));
  double best_value = -1e300;
  std::size_t oracle = 0;
  for (std::size_t i = 0; i < actions.actions.size(); ++i) {
    const VoxelIndex n = start + actions.actions[i].v;
    if (!grid.is_free(n)) continue;
    const double v = grid.linear_index(n) == grid.linear_index(goal)
                         ? cfg.reward_goal
                         : cfg.reward_step + cfg.gamma * values[grid.linear_index(n)];
    if (v > best_value) {
      best_value = v;
      oracle = i;
    }
  }
  CHECK(greedy == oracle);

  const PathPolyline path = rollout(table, scenario, grid, actions, {}, 100);
  CHECK(path.success);
  CHECK(path.points.size() == 2);  // one step
}

TEST_CASE("greedy rollout length equals BFS distance on free grids") {
  std::mt19937_64 gen(2024);
  const GridSpec spec = small_spec(7, 0.1);
  const VoxelGrid grid = voxelize({}, spec, 0.0);
  const ActionSet actions = build_action_set(ActionVariant::Original, spec.resolution, spec.resolution);

  TrainConfig cfg;
  cfg.episodes = 3000;
  cfg.max_steps_per_episode = 150;

  for (int trial = 0; trial < 20; ++trial) {
    const VoxelIndex start(uniform_int(gen, 0, 6), uniform_int(gen, 0, 6), uniform_int(gen, 0, 6));
    VoxelIndex goal = start;
    while (goal == start) {
      goal = VoxelIndex(uniform_int(gen, 0, 6), uniform_int(gen, 0, 6), uniform_int(gen, 0, 6));
    }
    const Scenario scenario = grid_task(grid, start, goal);
    const QTable table = train(scenario, grid, actions, cfg, 1000 + trial);
    const PathPolyline path = rollout(table, scenario, grid, actions, {}, 500);

    const int expected = bfs_steps(grid, actions, start, goal);
    REQUIRE(path.success);
    CHECK(static_cast<int>(path.points.size()) - 1 == expected);
    // Manhattan distance in voxels, scaled by the resolution.
    double length = 0.0;
    for (std::size_t i = 1; i < path.points.size(); ++i)
      length += (path.points[i] - path.points[i - 1]).norm();
    CHECK(length == doctest::Approx((goal - start).cwiseAbs().sum() * spec.resolution).epsilon(1e-9));
  }
}

TEST_CASE("training is deterministic per seed") {
  const GridSpec spec = small_spec(6, 0.1);
  const VoxelGrid grid = voxelize({}, spec, 0.0);
  const Scenario scenario = grid_task(grid, VoxelIndex(0, 0, 0), VoxelIndex(5, 5, 5));
  const ActionSet actions = build_action_set(ActionVariant::Improved, spec.resolution, spec.resolution);
  TrainConfig cfg;
  cfg.episodes = 200;

  const QTable a = train(scenario, grid, actions, cfg, 99);
  const QTable b = train(scenario, grid, actions, cfg, 99);
  CHECK(a == b);
  const QTable c = train(scenario, grid, actions, cfg, 100);
  CHECK(a.raw().size() == c.raw().size());
}

TEST_CASE("occupied endpoints are rejected") {
  GridSpec spec = small_spec(4, 0.1);
  std::vector<Obstacle> obstacles{{spec.center(VoxelIndex(0, 0, 0)), 0.02}};
  const VoxelGrid grid = voxelize(obstacles, spec, 0.0);
  Scenario scenario = grid_task(grid, VoxelIndex(0, 0, 0), VoxelIndex(3, 3, 3));
  const ActionSet actions = build_action_set(ActionVariant::Original, spec.resolution, spec.resolution);
  CHECK_THROWS_AS(train(scenario, grid, actions, {}, 1), std::invalid_argument);
}

TEST_CASE("tie break returns the plain argmax for a unique winner") {
  const ActionSet actions = build_action_set(ActionVariant::Improved, 0.05, 0.05);
  TieBreakConfig cfg;
  std::vector<double> row(26, 0.0);
  row[7] = 10.0;  // clear winner
  const std::size_t picked =
      tie_break_select(row, std::nullopt, Vec3::Zero(), {}, actions, cfg);
  CHECK(picked == 7);
}

TEST_CASE("collinearity wins among tied actions with equal clearance") {
  const ActionSet actions = build_action_set(ActionVariant::Improved, 0.05, 0.05);
  TieBreakConfig cfg;

  // Previous move along +x; candidates: +x (collinear) and +y (right angle).
  std::size_t idx_px = 0, idx_py = 0;
  for (std::size_t i = 0; i < actions.actions.size(); ++i) {
    if (actions.actions[i].v == VoxelIndex(1, 0, 0)) idx_px = i;
    if (actions.actions[i].v == VoxelIndex(0, 1, 0)) idx_py = i;
  }
  std::vector<double> row(26, -100.0);
  row[idx_px] = 5.0;
  row[idx_py] = 5.0;
  const std::size_t picked = tie_break_select(row, idx_px, Vec3::Zero(), {}, actions, cfg);
  CHECK(picked == idx_px);
}

TEST_CASE("larger look-ahead clearance wins at equal angle") {
  const ActionSet actions = build_action_set(ActionVariant::Improved, 0.05, 0.05);
  TieBreakConfig cfg;

  std::size_t idx_px = 0, idx_mx = 0;
  for (std::size_t i = 0; i < actions.actions.size(); ++i) {
    if (actions.actions[i].v == VoxelIndex(1, 0, 0)) idx_px = i;
    if (actions.actions[i].v == VoxelIndex(-1, 0, 0)) idx_mx = i;
  }
  std::vector<double> row(26, -100.0);
  row[idx_px] = 5.0;
  row[idx_mx] = 5.0;
  // No previous action (theta term vanishes); obstacle sits on the +x side.
  std::vector<Obstacle> obstacles{{Vec3(0.1, 0, 0), 0.03}};
  const std::size_t picked = tie_break_select(row, std::nullopt, Vec3::Zero(), obstacles, actions, cfg);
  CHECK(picked == idx_mx);
}

TEST_CASE("singleton tie set reproduces the argmax bitwise") {
  const ActionSet actions = build_action_set(ActionVariant::Improved, 0.05, 0.05);
  TieBreakConfig cfg;
  std::mt19937_64 gen(4242);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> row(26);
    for (double& v : row) v = uniform_real(gen, -50.0, 50.0);
    const std::size_t argmax =
        std::distance(row.begin(), std::max_element(row.begin(), row.end()));
    const Vec3 pos(uniform_real(gen, -1, 1), uniform_real(gen, -1, 1), uniform_real(gen, -1, 1));
    const std::size_t picked = tie_break_select(row, std::nullopt, pos, {}, actions, cfg);
    // Random continuous rows have a unique winner: must match plain argmax.
    CHECK(picked == argmax);
  }
}

TEST_CASE("tie-break choice is invariant to a common positive scaling") {
  const ActionSet actions = build_action_set(ActionVariant::Improved, 0.05, 0.05);
  std::mt19937_64 gen(515);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> row(26);
    for (double& v : row) v = uniform_real(gen, -1.0, 1.0);
    // Force a genuine tie between two entries.
    row[3] = row[19] = 2.0;
    std::vector<Obstacle> obstacles{{Vec3(uniform_real(gen, -0.2, 0.2), 0.1, 0.0), 0.05}};

    TieBreakConfig cfg;
    const std::size_t base = tie_break_select(row, 5, Vec3::Zero(), obstacles, actions, cfg);

    const double c = uniform_real(gen, 0.5, 100.0);
    std::vector<double> scaled = row;
    for (double& v : scaled) v *= c;
    TieBreakConfig cfg_scaled = cfg;
    cfg_scaled.epsilon_q *= c;  // relative part scales with |Q| automatically
    const std::size_t same = tie_break_select(scaled, 5, Vec3::Zero(), obstacles, actions, cfg_scaled);
    CHECK(base == same);
  }
}

TEST_CASE("rollout with coincident start and goal is a single point") {
  const GridSpec spec = small_spec(5, 0.1);
  const VoxelGrid grid = voxelize({}, spec, 0.0);
  const Scenario scenario = grid_task(grid, VoxelIndex(2, 2, 2), VoxelIndex(2, 2, 2));
  const ActionSet actions = build_action_set(ActionVariant::Improved, spec.resolution, spec.resolution);
  const QTable table(grid.size(), actions.actions.size());
  const PathPolyline path = rollout(table, scenario, grid, actions, {}, 100);
  CHECK(path.success);
  CHECK(path.points.size() == 1);
}

TEST_CASE("an obstacle wall makes the rollout fail within the cap") {
  GridSpec spec = small_spec(7, 0.1);
  // Wall on the x = 3 plane separates the two halves.
  std::vector<Obstacle> wall;
  for (int y = 0; y < 7; ++y)
    for (int z = 0; z < 7; ++z) wall.push_back({spec.center(VoxelIndex(3, y, z)), 0.04});
  const VoxelGrid grid = voxelize(wall, spec, 0.0);
  const Scenario scenario = [&] {
    Scenario s = grid_task(grid, VoxelIndex(1, 3, 3), VoxelIndex(5, 3, 3));
    s.obstacles = wall;
    return s;
  }();
  const ActionSet actions = build_action_set(ActionVariant::Improved, spec.resolution, spec.resolution);
  TrainConfig cfg;
  cfg.episodes = 300;
  const QTable table = train(scenario, grid, actions, cfg, 5);
  const PathPolyline path = rollout(table, scenario, grid, actions, {}, 200);
  CHECK_FALSE(path.success);
}

TEST_CASE("improved rollouts take steps of exactly delta") {
  const GridSpec spec = small_spec(9, 0.05);
  const VoxelGrid grid = voxelize({}, spec, 0.0);
  const ActionSet actions = build_action_set(ActionVariant::Improved, spec.resolution, 0.05);
  TrainConfig cfg;
  cfg.episodes = 2500;
  cfg.max_steps_per_episode = 200;

  std::mt19937_64 gen(808);
  int successes = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const VoxelIndex start(uniform_int(gen, 0, 8), uniform_int(gen, 0, 8), uniform_int(gen, 0, 8));
    VoxelIndex goal = start;
    while ((goal - start).cwiseAbs().maxCoeff() < 2) {
      goal = VoxelIndex(uniform_int(gen, 0, 8), uniform_int(gen, 0, 8), uniform_int(gen, 0, 8));
    }
    const Scenario scenario = grid_task(grid, start, goal);
    const QTable table = train(scenario, grid, actions, cfg, 31 + trial);
    const PathPolyline path = rollout(table, scenario, grid, actions, {}, 500);
    if (!path.success) continue;
    ++successes;
    for (std::size_t i = 1; i < path.points.size(); ++i) {
      const double step = (path.points[i] - path.points[i - 1]).norm();
      CHECK(std::abs(step - actions.delta) < 1e-12 * actions.delta);
    }
    // Emitted positions stay in free voxels.
    for (const Vec3& p : path.points) CHECK(grid.is_free(grid.voxel_of(p)));
  }
  CHECK(successes > 0);
}
