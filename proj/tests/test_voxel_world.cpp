#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "voxbridge/kinematics.hpp"
#include "voxbridge/scenario.hpp"
#include "voxbridge/voxel_world.hpp"

using namespace voxbridge;

namespace {

std::vector<Obstacle> random_field(std::mt19937_64& gen, int count) {
  std::vector<Obstacle> obstacles(count);
  for (Obstacle& o : obstacles) {
    o.center = Vec3(uniform_real(gen, -1, 1), uniform_real(gen, -1, 1), uniform_real(gen, -1, 1));
    o.radius = uniform_real(gen, 0.03, 0.15);
  }
  return obstacles;
}

// Exhaustive point-in-sphere oracle, written independently of voxelize.
std::vector<std::uint8_t> brute_force_occupancy(const std::vector<Obstacle>& obstacles,
                                                const GridSpec& spec, double inflation) {
  std::vector<std::uint8_t> free(spec.voxel_count(), 1);
  for (int z = 0; z < spec.dims.z(); ++z) {
    for (int y = 0; y < spec.dims.y(); ++y) {
      for (int x = 0; x < spec.dims.x(); ++x) {
        const VoxelIndex v(x, y, z);
        const Vec3 c = spec.center(v);
        for (const Obstacle& o : obstacles) {
          if ((c - o.center).norm() <= o.radius + inflation) {
            free[spec.linear_index(v)] = 0;
            break;
          }
        }
      }
    }
  }
  return free;
}

}  // namespace

TEST_CASE("empty field leaves every voxel free") {
  GridSpec spec;
  spec.dims = VoxelIndex(10, 10, 10);
  spec.resolution = 0.2;
  const VoxelGrid grid = voxelize({}, spec, spec.default_inflation());
  for (const auto cell : grid.raw()) CHECK(cell == 1);
}

TEST_CASE("a sub-voxel obstacle on a voxel center occupies exactly that voxel") {
  GridSpec spec;
  spec.origin = Vec3(0, 0, 0);
  spec.resolution = 0.1;
  spec.dims = VoxelIndex(5, 5, 5);
  const VoxelIndex target(2, 3, 1);
  const Obstacle o{spec.center(target), 0.04};
  const VoxelGrid grid = voxelize(std::vector<Obstacle>{o}, spec, 0.0);

  for (int z = 0; z < 5; ++z)
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 5; ++x) {
        const VoxelIndex v(x, y, z);
        CHECK(grid.is_free(v) == (v != target));
      }
}

TEST_CASE("voxelize matches the exhaustive oracle on random fields") {
  std::mt19937_64 gen(101);
  for (int trial = 0; trial < 10; ++trial) {
    GridSpec spec;
    spec.dims = VoxelIndex(uniform_int(gen, 8, 24), uniform_int(gen, 8, 24),
                           uniform_int(gen, 8, 24));
    spec.resolution = uniform_real(gen, 0.05, 0.2);
    const auto obstacles = random_field(gen, uniform_int(gen, 0, 60));
    const double inflation = uniform_real(gen, 0.0, 0.05);

    const VoxelGrid grid = voxelize(obstacles, spec, inflation);
    const auto expected = brute_force_occupancy(obstacles, spec, inflation);
    REQUIRE(grid.raw().size() == expected.size());
    bool equal = true;
    for (std::size_t i = 0; i < expected.size(); ++i) equal &= grid.raw()[i] == expected[i];
    CHECK(equal);

    // Serial reference is bit-identical to the parallel kernel.
    const VoxelGrid serial = voxelize_serial(obstacles, spec, inflation);
    bool same = true;
    for (std::size_t i = 0; i < expected.size(); ++i) same &= grid.raw()[i] == serial.raw()[i];
    CHECK(same);
  }
}

TEST_CASE("voxel index and center mapping is a bijection in bounds") {
  GridSpec spec;
  spec.dims = VoxelIndex(7, 9, 11);
  spec.resolution = 0.13;
  for (int z = 0; z < spec.dims.z(); ++z)
    for (int y = 0; y < spec.dims.y(); ++y)
      for (int x = 0; x < spec.dims.x(); ++x) {
        const VoxelIndex v(x, y, z);
        CHECK(spec.voxel_of(spec.center(v)) == v);
      }
}

TEST_CASE("collision free for a lone stretched arm") {
  const ArmModel model = ArmModel::default_model();
  CHECK_FALSE(collision_check(model, Vec7::Zero(), {}));
}

TEST_CASE("obstacle at the end-effector collides") {
  const ArmModel model = ArmModel::default_model();
  const Vec7 q = Vec7::Zero();
  const Obstacle o{forward_position(model, q), 0.02};
  CHECK(collision_check(model, q, std::vector<Obstacle>{o}));
}

TEST_CASE("collision check matches an independent recomputation") {
  const ArmModel model = ArmModel::default_model();
  std::mt19937_64 gen(333);
  int hits = 0;
  for (int i = 0; i < 1000; ++i) {
    Vec7 q;
    for (int j = 0; j < kNumJoints; ++j)
      q[j] = uniform_real(gen, model.joints[j].q_min, model.joints[j].q_max);
    const Obstacle o{Vec3(uniform_real(gen, -0.9, 0.9), uniform_real(gen, -0.9, 0.9),
                          uniform_real(gen, -0.3, 0.9)),
                     uniform_real(gen, 0.03, 0.25)};

    // Duplicate implementation: direct pairwise distances.
    const auto frames = link_frames(model, q);
    bool expected = false;
    std::vector<std::pair<Vec3, double>> world;
    for (const LinkSphere& s : model.spheres)
      world.emplace_back(frames[s.link + 1] * s.center, s.radius);
    for (const auto& [c, r] : world) {
      if ((c - o.center).norm() <= r + o.radius) expected = true;
    }
    for (std::size_t a = 0; a < world.size(); ++a)
      for (std::size_t b = a + 1; b < world.size(); ++b) {
        if (std::abs(model.spheres[a].link - model.spheres[b].link) <= model.self_collision_gap)
          continue;
        if ((world[a].first - world[b].first).norm() <= world[a].second + world[b].second)
          expected = true;
      }

    const bool got = collision_check(model, q, std::vector<Obstacle>{o});
    CHECK(got == expected);
    hits += got ? 1 : 0;
  }
  CHECK(hits > 0);  // the sample must exercise both outcomes
  CHECK(hits < 1000);
}

TEST_CASE("growing a radius never clears a collision") {
  const ArmModel model = ArmModel::default_model();
  std::mt19937_64 gen(97);
  for (int i = 0; i < 200; ++i) {
    Vec7 q;
    for (int j = 0; j < kNumJoints; ++j)
      q[j] = uniform_real(gen, model.joints[j].q_min, model.joints[j].q_max);
    Obstacle o{Vec3(uniform_real(gen, -0.8, 0.8), uniform_real(gen, -0.8, 0.8),
                    uniform_real(gen, -0.2, 0.8)),
               uniform_real(gen, 0.03, 0.12)};
    const bool before = collision_check(model, q, std::vector<Obstacle>{o});
    o.radius *= uniform_real(gen, 1.0, 3.0);
    const bool after = collision_check(model, q, std::vector<Obstacle>{o});
    if (before) CHECK(after);
  }
}

TEST_CASE("clearance arithmetic") {
  const Obstacle o{Vec3(0.5, 0, 0), 0.2};
  CHECK(min_clearance(Vec3::Zero(), std::vector<Obstacle>{o}) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(min_clearance(Vec3::Zero(), {}) == std::numeric_limits<double>::infinity());
}

TEST_CASE("clearance equals the brute-force minimum") {
  std::mt19937_64 gen(55);
  const auto obstacles = random_field(gen, 40);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p(uniform_real(gen, -1, 1), uniform_real(gen, -1, 1), uniform_real(gen, -1, 1));
    double expected = std::numeric_limits<double>::infinity();
    for (const Obstacle& o : obstacles)
      expected = std::min(expected, (p - o.center).norm() - o.radius);
    CHECK(min_clearance(p, obstacles) == expected);
  }
}

TEST_CASE("scenario generation is deterministic and honors class ranges") {
  const ArmModel model = ArmModel::default_model();
  GenerationConfig cfg;
  cfg.grid = GridSpec{};
  cfg.inflation = GridSpec{}.default_inflation();

  const Scenario a = generate_scenario(DensityClass::Sparse, 42, model, cfg);
  const Scenario b = generate_scenario(DensityClass::Sparse, 42, model, cfg);
  std::stringstream sa, sb;
  save_scenario(a, sa);
  save_scenario(b, sb);
  CHECK(sa.str() == sb.str());  // byte-identical

  const Scenario dense = generate_scenario(DensityClass::Dense, 7, model, cfg);
  CHECK(dense.obstacles.size() >= 100);
  CHECK(dense.obstacles.size() <= 150);

  const Scenario medium = generate_scenario(DensityClass::Medium, 3, model, cfg);
  CHECK(medium.obstacles.size() >= 31);
  CHECK(medium.obstacles.size() <= 99);
}

TEST_CASE("generated start and goal satisfy the postconditions") {
  const ArmModel model = ArmModel::default_model();
  GenerationConfig cfg;
  cfg.grid = GridSpec{};
  cfg.inflation = GridSpec{}.default_inflation();

  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Scenario s = generate_scenario(DensityClass::Medium, seed, model, cfg);
    CHECK_FALSE(collision_check(model, s.q_start, s.obstacles));
    for (int j = 0; j < kNumJoints; ++j) {
      CHECK(s.q_start[j] - model.joints[j].q_min >= cfg.joint_margin - 1e-12);
      CHECK(model.joints[j].q_max - s.q_start[j] >= cfg.joint_margin - 1e-12);
    }
    CHECK((forward_position(model, s.q_start) - s.x_start).norm() < 1e-12);
    CHECK((forward_position(model, s.q_goal) - s.x_goal).norm() <= cfg.ik_tolerance);
    CHECK_FALSE(collision_check(model, s.q_goal, s.obstacles));
  }
}

TEST_CASE("scenario serialization round-trips losslessly") {
  const ArmModel model = ArmModel::default_model();
  const Scenario s = generate_scenario(DensityClass::Medium, 99, model, {});
  std::stringstream buf;
  save_scenario(s, buf);
  const Scenario r = load_scenario(buf);
  CHECK(r.seed == s.seed);
  CHECK(r.density == s.density);
  CHECK(r.q_start == s.q_start);
  CHECK(r.x_start == s.x_start);
  CHECK(r.x_goal == s.x_goal);
  CHECK(r.q_goal == s.q_goal);
  REQUIRE(r.obstacles.size() == s.obstacles.size());
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    CHECK(r.obstacles[i].center == s.obstacles[i].center);
    CHECK(r.obstacles[i].radius == s.obstacles[i].radius);
  }
}
