#pragma once

// Batch kernels for the data-parallel inner loops: iterating the solenoid
// embedding over many points, and computing box-occupancy keys. Every
// variant evaluates the same IEEE operation sequence as the scalar
// reference, so results are bit-identical across instruction sets.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace solenoid_lab::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

/// Coefficients of e(theta, z) = (w*theta mod 1, lambda*z + eps*u(theta)).
struct MapCoefficients {
  double w;
  double lambda;
  double eps;
};

/// Structure-of-arrays point block; all three spans share one length.
struct PointBlock {
  std::span<double> theta;
  std::span<double> x;
  std::span<double> y;

  std::size_t size() const noexcept { return theta.size(); }
};

struct ConstPointBlock {
  std::span<const double> theta;
  std::span<const double> x;
  std::span<const double> y;

  std::size_t size() const noexcept { return theta.size(); }
};

/// Grid for box counting: theta in [0,1) split into theta_bins periodic bins;
/// x and y in [-1,1] split into cells of side `side` (fiber_bins per axis).
struct BoxGrid {
  std::uint64_t theta_bins;
  std::uint64_t fiber_bins;
  double side;
};

using IterateFn = void (*)(const MapCoefficients&, PointBlock, std::size_t depth);
using BoxKeysFn = void (*)(const BoxGrid&, ConstPointBlock, std::span<std::uint64_t> keys);

struct KernelTable {
  Isa isa;
  IterateFn iterate;
  BoxKeysFn box_keys;
};

namespace scalar {
void iterate(const MapCoefficients& map, PointBlock pts, std::size_t depth);
void box_keys(const BoxGrid& grid, ConstPointBlock pts, std::span<std::uint64_t> keys);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void iterate(const MapCoefficients& map, PointBlock pts, std::size_t depth);
void box_keys(const BoxGrid& grid, ConstPointBlock pts, std::span<std::uint64_t> keys);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void iterate(const MapCoefficients& map, PointBlock pts, std::size_t depth);
void box_keys(const BoxGrid& grid, ConstPointBlock pts, std::span<std::uint64_t> keys);
}  // namespace neon
#endif

/// Kernel sets compiled in and supported by the running CPU, scalar first.
std::vector<Isa> available_isas();

const KernelTable& table_for(Isa isa);

/// The kernel set used by the library. Chosen once: SOLENOID_LAB_KERNEL
/// (scalar | avx2 | neon) overrides, otherwise the widest supported set.
const KernelTable& active();

/// Box index along one fiber axis for coordinate c in [-1, 1].
inline std::uint64_t clamp_cell(double cell, std::uint64_t bins) noexcept {
  if (cell < 0.0) return 0;
  auto i = static_cast<std::uint64_t>(cell);
  return i >= bins ? bins - 1 : i;
}

}  // namespace solenoid_lab::kernels
