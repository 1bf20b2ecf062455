#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "voxbridge/arm_model.hpp"
#include "voxbridge/types.hpp"

namespace voxbridge {

struct Obstacle {
  Vec3 center = Vec3::Zero();
  double radius = 0.05;
};

struct GridSpec {
  Vec3 origin = Vec3(-1.0, -1.0, -1.0);  // corner of the workspace cube
  double resolution = 0.05;              // m per voxel
  VoxelIndex dims = VoxelIndex(40, 40, 40);

  bool in_bounds(const VoxelIndex& v) const {
    return v.x() >= 0 && v.y() >= 0 && v.z() >= 0 && v.x() < dims.x() && v.y() < dims.y() &&
           v.z() < dims.z();
  }
  std::size_t linear_index(const VoxelIndex& v) const {
    return static_cast<std::size_t>((v.z() * dims.y() + v.y()) * dims.x() + v.x());
  }
  std::size_t voxel_count() const {
    return static_cast<std::size_t>(dims.x()) * dims.y() * dims.z();
  }
  Vec3 center(const VoxelIndex& v) const {
    return origin + resolution * (v.cast<double>() + Vec3::Constant(0.5));
  }
  VoxelIndex voxel_of(const Vec3& p) const {
    const Vec3 rel = (p - origin) / resolution;
    return VoxelIndex(static_cast<int>(std::floor(rel.x())), static_cast<int>(std::floor(rel.y())),
                      static_cast<int>(std::floor(rel.z())));
  }

  // Default occupancy inflation: half the diagonal of one voxel.
  double default_inflation() const { return 0.5 * resolution * std::sqrt(3.0); }
};

// Dense boolean occupancy over the workspace cube. A voxel is free when its
// center is farther than (radius + inflation) from every obstacle center.
class VoxelGrid {
 public:
  VoxelGrid() = default;
  VoxelGrid(const GridSpec& spec, std::vector<std::uint8_t> free)
      : spec_(spec), free_(std::move(free)) {}

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return free_.size(); }

  bool in_bounds(const VoxelIndex& v) const { return spec_.in_bounds(v); }
  std::size_t linear_index(const VoxelIndex& v) const { return spec_.linear_index(v); }
  bool is_free(const VoxelIndex& v) const {
    return in_bounds(v) && free_[linear_index(v)] != 0;
  }
  Vec3 center(const VoxelIndex& v) const { return spec_.center(v); }
  VoxelIndex voxel_of(const Vec3& p) const { return spec_.voxel_of(p); }

  std::span<const std::uint8_t> raw() const { return free_; }

 private:
  GridSpec spec_;
  std::vector<std::uint8_t> free_;
};

// OpenMP over z-slabs; bit-identical to voxelize_serial.
VoxelGrid voxelize(std::span<const Obstacle> obstacles, const GridSpec& spec, double inflation);
// Single-threaded reference kept for testing and for the kernel benchmark.
VoxelGrid voxelize_serial(std::span<const Obstacle> obstacles, const GridSpec& spec,
                          double inflation);

// Signed distance from a point to the nearest obstacle surface; +infinity
// when the obstacle list is empty.
double min_clearance(const Vec3& point, std::span<const Obstacle> obstacles);

// True if any link sphere overlaps any obstacle sphere, or any pair of
// non-adjacent link spheres overlap (distance <= sum of radii).
bool collision_check(const ArmModel& model, const Vec7& q, std::span<const Obstacle> obstacles);

}  // namespace voxbridge
