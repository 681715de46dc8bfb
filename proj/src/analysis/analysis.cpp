#include "solenoid_lab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "solenoid_lab/error.hpp"
#include "solenoid_lab/parallel.hpp"

namespace solenoid_lab {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 column(const Mat3& m, int c) { return {m[0][c], m[1][c], m[2][c]}; }

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Replaces the columns of `frame` by their Gram-Schmidt orthonormalization
// and adds log of each diagonal R entry to `sums`.
void reorthonormalize(Mat3& frame, Vec3& sums) {
  std::array<Vec3, 3> q{};
  for (int a = 0; a < 3; ++a) {
    Vec3 v = column(frame, a);
    for (int b = 0; b < a; ++b) {
      const double proj = dot(q[b], v);
      for (int i = 0; i < 3; ++i) v[i] -= proj * q[b][i];
    }
    const double norm = std::sqrt(dot(v, v));
    sums[a] += std::log(norm);
    for (int i = 0; i < 3; ++i) q[a][i] = v[i] / norm;
  }
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) frame[i][a] = q[a][i];
}

// spectral norm of a 2x2 block
double norm2x2(double a, double b, double c, double d) {
  const double s = 0.5 * (a * a + b * b + c * c + d * d);
  const double det = a * d - b * c;
  return std::sqrt(s + std::sqrt(std::max(s * s - det * det, 0.0)));
}

}  // namespace

std::array<double, 3> lyapunov_exponents(const SolenoidMap& map, const TorusPoint& x0, int steps,
                                         const LyapunovOptions& options) {
  if (steps < 100) throw LabError(ErrorCode::InvalidArgument, "lyapunov needs steps >= 100");
  if (options.reorth_period < 1)
    throw LabError(ErrorCode::InvalidArgument, "reorthonormalization period must be >= 1");
  // columns: x, y, theta (coordinates ordered theta, x, y)
  Mat3 frame{{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}};
  Vec3 sums{0.0, 0.0, 0.0};
  TorusPoint x = x0;
  for (int i = 1; i <= steps; ++i) {
    frame = multiply(jacobian(map, x), frame);
    x = apply(map, x);
    if (i % options.reorth_period == 0 || i == steps) reorthonormalize(frame, sums);
  }
  std::array<double, 3> out{sums[0] / steps, sums[1] / steps, sums[2] / steps};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double entropy_estimate(const SolenoidMap& map, int n_max) {
  if (n_max < 1 || n_max > 14)
    throw LabError(ErrorCode::InvalidArgument, "n_max = " + std::to_string(n_max) +
                                                   " outside [1, 14]");
  PeriodicConfig config;
  config.max_period = 14;
  const auto points = periodic_points(map, n_max, config);
  return std::log(static_cast<double>(points.size())) / n_max;
}

std::uint64_t count_boxes(const PointCloud& cloud, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw LabError(ErrorCode::InvalidArgument, "box scale must be positive");
  const auto theta_bins = static_cast<std::uint64_t>(std::max(1.0, std::round(1.0 / scale)));
  const auto fiber_bins = static_cast<std::uint64_t>(std::ceil(2.0 / scale));
  if (theta_bins > (1u << 20) || fiber_bins > (1u << 20))
    throw LabError(ErrorCode::InvalidArgument, "box scale too small");
  const kernels::BoxGrid grid{theta_bins, fiber_bins, scale};

  std::vector<std::uint64_t> keys(cloud.size());
  const auto pts = cloud.block();
  const auto& kernel = kernels::active();
  parallel_for(cloud.size(), [&](std::size_t begin, std::size_t end) {
    const std::size_t len = end - begin;
    kernel.box_keys(grid,
                    {pts.theta.subspan(begin, len), pts.x.subspan(begin, len),
                     pts.y.subspan(begin, len)},
                    std::span<std::uint64_t>(keys).subspan(begin, len));
  });
  std::sort(keys.begin(), keys.end());
  return static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

DimensionReport box_dimension(const PointCloud& cloud, std::vector<double> scales) {
  if (cloud.empty()) throw LabError(ErrorCode::InvalidArgument, "empty point cloud");
  if (scales.size() < 2) throw LabError(ErrorCode::InvalidArgument, "need at least two scales");
  std::sort(scales.begin(), scales.end(), std::greater<>());
  if (std::adjacent_find(scales.begin(), scales.end()) != scales.end())
    throw LabError(ErrorCode::InvalidArgument, "duplicate box scale");

  DimensionReport rep;
  rep.scales = scales;
  for (double s : scales) rep.counts.push_back(count_boxes(cloud, s));

  const std::size_t n = scales.size();
  rep.fit_first = n >= 6 ? 1 : 0;
  rep.fit_last = n >= 6 ? n - 2 : n - 1;
  const auto m = static_cast<double>(rep.fit_last - rep.fit_first + 1);

  double sx = 0, sy = 0;
  for (std::size_t i = rep.fit_first; i <= rep.fit_last; ++i) {
    sx += std::log(1.0 / scales[i]);
    sy += std::log(static_cast<double>(rep.counts[i]));
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = rep.fit_first; i <= rep.fit_last; ++i) {
    const double dx = std::log(1.0 / scales[i]) - mx;
    const double dy = std::log(static_cast<double>(rep.counts[i])) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (syy == 0.0) throw LabError(ErrorCode::DegenerateFit, "all box counts are equal");
  rep.slope = sxy / sxx;
  rep.intercept = my - rep.slope * mx;
  const double ss_res = syy - rep.slope * sxy;
  rep.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return rep;
}

double cone_threshold(const SolenoidMap& map) {
  return 2.0 * std::numbers::pi * map.eps() / (map.w() - map.lambda());
}

HyperbolicityReport cone_check(const SolenoidMap& map, double kappa, int samples,
                               std::uint64_t seed) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw LabError(ErrorCode::InvalidArgument, "cone aperture must be positive");
  if (samples < 1) throw LabError(ErrorCode::InvalidArgument, "samples must be >= 1");
  HyperbolicityReport rep{kappa, 0.0, std::numeric_limits<double>::infinity(), 0.0, false, false};
  for (int i = 0; i < samples; ++i) {
    const Mat3 j = jacobian(map, random_torus_point(seed, static_cast<std::uint64_t>(i)));
    const double base = std::abs(j[0][0]);
    const double coupling = std::hypot(j[1][0], j[2][0]);
    const double fiber = norm2x2(j[1][1], j[1][2], j[2][1], j[2][2]);
    // image of (1, v) with |v| <= kappa is (base, c + F v): slope <= (|c| + |F| kappa)/base
    rep.kappa_image_max = std::max(rep.kappa_image_max, (coupling + fiber * kappa) / base);
    rep.expansion_min = std::min(rep.expansion_min, base);
    rep.contraction_max = std::max(rep.contraction_max, fiber);
  }
  rep.cone_invariant = rep.kappa_image_max <= kappa;
  rep.verified = rep.cone_invariant && rep.expansion_min >= map.w() &&
                 rep.contraction_max <= map.lambda() * (1.0 + 1e-12) &&
                 rep.expansion_min > 1.0 && rep.contraction_max < 1.0;
  return rep;
}

}  // namespace solenoid_lab
