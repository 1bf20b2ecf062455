#include "voxbridge/voxel_world.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "voxbridge/kinematics.hpp"

namespace voxbridge {

namespace {

inline bool center_occupied(const Vec3& c, std::span<const Obstacle> obstacles, double inflation) {
  for (const Obstacle& o : obstacles) {
    const double r = o.radius + inflation;
    if ((c - o.center).squaredNorm() <= r * r) return true;
  }
  return false;
}

VoxelGrid voxelize_impl(std::span<const Obstacle> obstacles, const GridSpec& spec, double inflation,
                        bool parallel) {
  if (!(spec.resolution > 0.0)) throw std::invalid_argument("voxelize: resolution must be > 0");
  const int nx = spec.dims.x(), ny = spec.dims.y(), nz = spec.dims.z();
  std::vector<std::uint8_t> free(static_cast<std::size_t>(nx) * ny * nz, 1);

#pragma omp parallel for schedule(static) if (parallel)
  for (int z = 0; z < nz; ++z) {
    std::size_t idx = static_cast<std::size_t>(z) * ny * nx;
    for (int y = 0; y < ny; ++y) {
      for (int x = 0; x < nx; ++x, ++idx) {
        const Vec3 c = spec.origin + spec.resolution * Vec3(x + 0.5, y + 0.5, z + 0.5);
        if (center_occupied(c, obstacles, inflation)) free[idx] = 0;
      }
    }
  }
  return VoxelGrid(spec, std::move(free));
}

}  // namespace

VoxelGrid voxelize(std::span<const Obstacle> obstacles, const GridSpec& spec, double inflation) {
  return voxelize_impl(obstacles, spec, inflation, true);
}

VoxelGrid voxelize_serial(std::span<const Obstacle> obstacles, const GridSpec& spec,
                          double inflation) {
  return voxelize_impl(obstacles, spec, inflation, false);
}

double min_clearance(const Vec3& point, std::span<const Obstacle> obstacles) {
  double best = std::numeric_limits<double>::infinity();
  for (const Obstacle& o : obstacles) {
    best = std::min(best, (point - o.center).norm() - o.radius);
  }
  return best;
}

bool collision_check(const ArmModel& model, const Vec7& q, std::span<const Obstacle> obstacles) {
  if (!q.allFinite()) throw std::invalid_argument("collision_check: non-finite joint vector");
  const auto frames = link_frames(model, q);

  const std::size_t n = model.spheres.size();
  std::vector<Vec3> centers(n);
  for (std::size_t i = 0; i < n; ++i) {
    const LinkSphere& s = model.spheres[i];
    centers[i] = frames[s.link + 1] * s.center;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double ri = model.spheres[i].radius;
    for (const Obstacle& o : obstacles) {
      const double r = ri + o.radius;
      if ((centers[i] - o.center).squaredNorm() <= r * r) return true;
    }
    // Self collision: skip sphere pairs on the same or neighbouring links.
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(model.spheres[i].link - model.spheres[j].link) <= model.self_collision_gap)
        continue;
      const double r = ri + model.spheres[j].radius;
      if ((centers[i] - centers[j]).squaredNorm() <= r * r) return true;
    }
  }
  return false;
}

}  // namespace voxbridge
