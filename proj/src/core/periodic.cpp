#include "solenoid_lab/periodic.hpp"

#include <cmath>
#include <string>

#include "solenoid_lab/error.hpp"
#include "solenoid_lab/parallel.hpp"
#include "solenoid_lab/turn_trig.hpp"

namespace solenoid_lab {

namespace {

using u128 = unsigned __int128;

// w^n, or 0 if it exceeds `limit`.
std::uint64_t bounded_power(std::uint64_t w, int n, std::uint64_t limit) {
  std::uint64_t acc = 1;
  for (int i = 0; i < n; ++i) {
    if (acc > limit / w) return 0;
    acc *= w;
  }
  return acc;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

}  // namespace

int minimal_base_period(int w, int n, std::uint64_t k) {
  const std::uint64_t full = bounded_power(static_cast<std::uint64_t>(w), n, UINT64_MAX / 2);
  if (full == 0) throw LabError(ErrorCode::Overflow, "w^n does not fit in 64 bits");
  const std::uint64_t modulus = full - 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const std::uint64_t wd = bounded_power(static_cast<std::uint64_t>(w), d, UINT64_MAX / 2);
    // theta = k/(w^n-1) has period d iff k*(w^d - 1) = 0 mod (w^n - 1)
    if (mulmod(k % modulus, (wd - 1) % modulus, modulus) == 0) return d;
  }
  return n;
}

std::vector<PeriodicPoint> periodic_points(const SolenoidMap& map, int n,
                                           const PeriodicConfig& config) {
  if (n < 1 || n > config.max_period)
    throw LabError(ErrorCode::InvalidArgument, "period n = " + std::to_string(n) +
                                                   " outside [1, " +
                                                   std::to_string(config.max_period) + "]");
  const auto w = static_cast<std::uint64_t>(map.w());
  const std::uint64_t limit = config.budget < UINT64_MAX ? config.budget + 1 : UINT64_MAX;
  const std::uint64_t full = bounded_power(w, n, limit);
  if (full == 0)
    throw LabError(ErrorCode::Overflow, std::to_string(map.w()) + "^" + std::to_string(n) +
                                            " - 1 exceeds the enumeration budget of " +
                                            std::to_string(config.budget));
  const std::uint64_t count = full - 1;
  const double denom = static_cast<double>(count);
  const double lam = map.lambda();
  const double eps = map.eps();

  std::vector<PeriodicPoint> out(count);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    std::vector<SinCos> orbit(static_cast<std::size_t>(n));
    for (std::size_t k = begin; k < end; ++k) {
      // exact base orbit k * w^j mod (w^n - 1)
      std::uint64_t num = k;
      for (int j = 0; j < n; ++j) {
        orbit[static_cast<std::size_t>(j)] = sincos_turns(static_cast<double>(num) / denom);
        num = mulmod(num, w, count);
      }
      double x = 0.0;
      double y = 0.0;
      for (int iter = 0; iter < 10000; ++iter) {
        double nx = x;
        double ny = y;
        for (const SinCos& u : orbit) {
          nx = lam * nx + eps * u.c;
          ny = lam * ny + eps * u.s;
        }
        const double delta = std::hypot(nx - x, ny - y);
        x = nx;
        y = ny;
        if (delta < config.tolerance) break;
      }
      out[k] = {TorusPoint(static_cast<double>(k) / denom, x, y),
                minimal_base_period(map.w(), n, k), k};
    }
  }, 256);
  return out;
}

}  // namespace solenoid_lab
