#include <cmath>

#include "solenoid_lab/detail/map_step.hpp"
#include "solenoid_lab/kernels.hpp"

namespace solenoid_lab::kernels::scalar {

void iterate(const MapCoefficients& map, PointBlock pts, std::size_t depth) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    double theta = pts.theta[i];
    double x = pts.x[i];
    double y = pts.y[i];
    for (std::size_t d = 0; d < depth; ++d) detail::step_point(map, theta, x, y);
    pts.theta[i] = theta;
    pts.x[i] = x;
    pts.y[i] = y;
  }
}

void box_keys(const BoxGrid& grid, ConstPointBlock pts, std::span<std::uint64_t> keys) {
  const double theta_bins = static_cast<double>(grid.theta_bins);
  const double inv_side = 1.0 / grid.side;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    double ft = std::floor(pts.theta[i] * theta_bins);
    double fx = std::floor((pts.x[i] + 1.0) * inv_side);
    double fy = std::floor((pts.y[i] + 1.0) * inv_side);
    std::uint64_t it = ft >= theta_bins ? 0 : clamp_cell(ft, grid.theta_bins);
    std::uint64_t ix = clamp_cell(fx, grid.fiber_bins);
    std::uint64_t iy = clamp_cell(fy, grid.fiber_bins);
    keys[i] = (it * grid.fiber_bins + ix) * grid.fiber_bins + iy;
  }
}

}  // namespace solenoid_lab::kernels::scalar
