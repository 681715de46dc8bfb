#include "solenoid_lab/point_cloud.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "solenoid_lab/error.hpp"
#include "solenoid_lab/parallel.hpp"
#include "solenoid_lab/rng.hpp"
#include "solenoid_lab/turn_trig.hpp"

namespace solenoid_lab {

void PointCloud::push_back(const TorusPoint& p) {
  theta_.push_back(p.theta);
  x_.push_back(p.x);
  y_.push_back(p.y);
}

TorusPoint random_torus_point(std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, index);
  const double theta = rng.next_unit();
  const double r = std::sqrt(rng.next_unit());
  const SinCos u = sincos_turns(rng.next_unit());
  return {theta, r * u.c, r * u.s};
}

PointCloud sample_attractor(const SolenoidMap& map, int depth, std::uint64_t samples,
                            std::uint64_t seed) {
  if (depth < 1) throw LabError(ErrorCode::InvalidArgument, "depth must be >= 1");
  if (samples < 1) throw LabError(ErrorCode::InvalidArgument, "samples must be >= 1");
  PointCloud cloud(samples);
  const auto coeffs = map.coefficients();
  const auto& kernel = kernels::active();
  auto all = cloud.block();
  parallel_for(samples, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const TorusPoint p = random_torus_point(seed, i);
      all.theta[i] = p.theta;
      all.x[i] = p.x;
      all.y[i] = p.y;
    }
    const std::size_t len = end - begin;
    kernel.iterate(coeffs,
                   {all.theta.subspan(begin, len), all.x.subspan(begin, len),
                    all.y.subspan(begin, len)},
                   static_cast<std::size_t>(depth));
  });
  cloud.set_meta({map.w(), map.eps(), depth, samples, seed});
  return cloud;
}

void write_cloud(std::ostream& out, const PointCloud& cloud) {
  out << "theta,x,y\n";
  char line[96];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const TorusPoint p = cloud.point(i);
    const int len = std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", p.theta, p.x, p.y);
    out.write(line, len);
  }
}

namespace {

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw LabError(ErrorCode::Io, "point cloud line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

PointCloud read_cloud(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) malformed(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "theta,x,y") malformed(1, "expected header 'theta,x,y'");
  PointCloud cloud;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v[3];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int c = 0; c < 3; ++c) {
      auto [next, ec] = std::from_chars(p, end, v[c]);
      if (ec != std::errc{}) malformed(line_no, "bad number");
      p = next;
      if (c < 2) {
        if (p == end || *p != ',') malformed(line_no, "expected three comma-separated values");
        ++p;
      }
    }
    if (p != end) malformed(line_no, "trailing characters");
    if (!(v[0] >= 0.0 && v[0] < 1.0) || v[1] * v[1] + v[2] * v[2] > 1.0 + 1e-12)
      malformed(line_no, "point outside the solid torus");
    cloud.push_back({v[0], v[1], v[2]});
  }
  return cloud;
}

void save_cloud(const std::string& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LabError(ErrorCode::Io, "cannot open '" + path + "' for writing");
  write_cloud(out, cloud);
  out.flush();
  if (!out) throw LabError(ErrorCode::Io, "write to '" + path + "' failed");
}

PointCloud load_cloud(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LabError(ErrorCode::Io, "cannot open '" + path + "'");
  return read_cloud(in);
}

}  // namespace solenoid_lab
