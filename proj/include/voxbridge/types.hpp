#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace voxbridge {

using Vec3 = Eigen::Vector3d;
using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat37 = Eigen::Matrix<double, 3, 7>;
using Mat67 = Eigen::Matrix<double, 6, 7>;
using Mat73 = Eigen::Matrix<double, 7, 3>;
using Mat77 = Eigen::Matrix<double, 7, 7>;
using VoxelIndex = Eigen::Vector3i;

inline constexpr int kNumJoints = 7;

// splitmix64: used to derive independent sub-seeds from one base seed.
inline std::uint64_t split_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return split_seed(a ^ (0x9e3779b97f4a7c15ull + b));
}

// Uniform draws mapped from raw engine output instead of std distributions,
// so streams are identical across standard library implementations.
inline double uniform_real(std::mt19937_64& gen, double lo, double hi) {
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

// Inclusive on both ends.
inline int uniform_int(std::mt19937_64& gen, int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen() % span);
}

// FNV-1a, used for config fingerprints and reference-path hashes.
struct Fnv1a {
  std::uint64_t state = 0xcbf29ce484222325ull;
  void feed(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      state ^= p[i];
      state *= 0x100000001b3ull;
    }
  }
  void feed(double v) { feed(&v, sizeof v); }
  void feed(std::uint64_t v) { feed(&v, sizeof v); }
  void feed(int v) { feed(&v, sizeof v); }
};

}  // namespace voxbridge
