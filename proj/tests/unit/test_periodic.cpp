#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "solenoid_lab/error.hpp"
#include "solenoid_lab/periodic.hpp"
#include "solenoid_lab/solenoid_map.hpp"

using namespace solenoid_lab;

namespace {

TorusPoint iterate(const SolenoidMap& m, TorusPoint p, int n) {
  for (int i = 0; i < n; ++i) p = apply(m, p);
  return p;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// smallest d with w^d * k == k mod (w^n - 1), by repeated multiplication
int brute_period(int w, int n, std::uint64_t k) {
  const std::uint64_t mod = ipow(w, n) - 1;
  std::uint64_t x = k;
  for (int d = 1; d <= n; ++d) {
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * w) % mod);
    if (x == k % mod) return d;
  }
  return -1;
}

}  // namespace

TEST_CASE("w=2, n=1: the fixed point eps*u(0)/(1 - lambda)") {
  const SolenoidMap m = make_solenoid_map(2, 0.5);
  const auto pts = periodic_points(m, 1);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].point.theta == 0.0);
  CHECK(pts[0].point.x == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(std::abs(pts[0].point.y) < 1e-15);
  CHECK(pts[0].minimal_period == 1);
}

TEST_CASE("w=2, n=2: three points at 0, 1/3, 2/3") {
  const SolenoidMap m = make_solenoid_map(2, 0.5);
  const auto pts = periodic_points(m, 2);
  REQUIRE(pts.size() == 3);
  std::map<int, int> by_period;
  std::set<std::uint64_t> nums;
  for (const auto& p : pts) {
    ++by_period[p.minimal_period];
    nums.insert(p.numerator);
    CHECK(p.point.theta == doctest::Approx(p.numerator / 3.0).epsilon(1e-15));
  }
  CHECK(nums == std::set<std::uint64_t>{0, 1, 2});
  CHECK(by_period[1] == 1);
  CHECK(by_period[2] == 2);
}

TEST_CASE("w=3, n=4: 80 points") {
  const SolenoidMap m = make_solenoid_map(3, 0.5);
  CHECK(periodic_points(m, 4).size() == 80);
}

TEST_CASE("counts, residuals and minimal periods against brute force") {
  for (int w : {2, 3, 6}) {
    const SolenoidMap m = make_solenoid_map(w, 0.5);
    for (int n = 1; n <= 5; ++n) {
      const auto pts = periodic_points(m, n);
      CAPTURE(w);
      CAPTURE(n);
      REQUIRE(pts.size() == ipow(w, n) - 1);
      std::map<int, std::uint64_t> per_period;
      double worst = 0.0;
      for (const auto& p : pts) {
        const TorusPoint q = iterate(m, p.point, n);
        worst = std::max({worst, std::abs(turn_delta(q.theta, p.point.theta)),
                          std::abs(q.x - p.point.x), std::abs(q.y - p.point.y)});
        const int bp = brute_period(w, n, p.numerator);
        CHECK(p.minimal_period == bp);
        CHECK(n % p.minimal_period == 0);
        ++per_period[p.minimal_period];
      }
      CHECK(worst < 1e-10);
      // Moebius check: sum_{d|n} (points of minimal period d) == w^n - 1
      std::uint64_t total = 0;
      for (auto [d, c] : per_period) {
        CHECK(c % d == 0);  // whole orbits
        total += c;
      }
      CHECK(total == ipow(w, n) - 1);
    }
  }
}

TEST_CASE("minimal_base_period uses exact arithmetic at large n") {
  // 2^12 - 1 = 4095 = 3^2*5*7*13; 4095/3 = 1365 has period 2
  CHECK(minimal_base_period(2, 12, 1365) == 2);
  CHECK(minimal_base_period(2, 12, 0) == 1);
  CHECK(minimal_base_period(2, 12, 1) == 12);
  CHECK(minimal_base_period(2, 12, 273) == 4);  // 4095/15
  CHECK(minimal_base_period(3, 10, 1) == 10);
}

TEST_CASE("budget and range checks") {
  const SolenoidMap m = make_solenoid_map(6, 0.5);
  PeriodicConfig cfg;
  cfg.budget = 1000;
  try {
    periodic_points(m, 4, cfg);
    FAIL("expected Overflow");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
  CHECK_THROWS_AS(periodic_points(m, 0), LabError);
  CHECK_THROWS_AS(periodic_points(m, 13), LabError);
}
