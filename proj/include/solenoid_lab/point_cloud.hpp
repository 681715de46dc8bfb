#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "solenoid_lab/kernels.hpp"
#include "solenoid_lab/solenoid_map.hpp"

namespace solenoid_lab {

struct SamplingMeta {
  int w;
  double eps;
  int depth;
  std::uint64_t samples;
  std::uint64_t seed;

  bool operator==(const SamplingMeta&) const = default;
};

/// Sampled finite approximation of the attractor, stored column-wise.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::size_t n) : theta_(n), x_(n), y_(n) {}

  std::size_t size() const noexcept { return theta_.size(); }
  bool empty() const noexcept { return theta_.empty(); }

  TorusPoint point(std::size_t i) const noexcept { return {theta_[i], x_[i], y_[i]}; }
  void push_back(const TorusPoint& p);

  kernels::PointBlock block() noexcept { return {theta_, x_, y_}; }
  kernels::ConstPointBlock block() const noexcept { return {theta_, x_, y_}; }

  const std::optional<SamplingMeta>& meta() const noexcept { return meta_; }
  void set_meta(const SamplingMeta& meta) { meta_ = meta; }

  bool operator==(const PointCloud& other) const = default;

 private:
  std::vector<double> theta_;
  std::vector<double> x_;
  std::vector<double> y_;
  std::optional<SamplingMeta> meta_;
};

/// Uniform point of N: theta uniform in [0,1), fiber uniform in the unit disc.
/// Pure function of (seed, index).
TorusPoint random_torus_point(std::uint64_t seed, std::uint64_t index);

/// `samples` points e^depth(x_i) with x_i = random_torus_point(seed, i).
/// Uses the active batch kernel; output does not depend on the thread count.
PointCloud sample_attractor(const SolenoidMap& map, int depth, std::uint64_t samples,
                            std::uint64_t seed);

/// Text format: header `theta,x,y`, then one `%.17g,%.17g,%.17g` row per point.
void write_cloud(std::ostream& out, const PointCloud& cloud);
PointCloud read_cloud(std::istream& in);

void save_cloud(const std::string& path, const PointCloud& cloud);
PointCloud load_cloud(const std::string& path);

}  // namespace solenoid_lab
