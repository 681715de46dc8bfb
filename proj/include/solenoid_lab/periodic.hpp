#pragma once

#include <cstdint>
#include <vector>

#include "solenoid_lab/solenoid_map.hpp"

namespace solenoid_lab {

struct PeriodicConfig {
  int max_period = 12;
  std::uint64_t budget = std::uint64_t{1} << 22;  // largest w^n - 1 enumerated
  double tolerance = 1e-13;                       // fiber contraction stopping step
};

struct PeriodicPoint {
  TorusPoint point;
  int minimal_period;
  std::uint64_t numerator;    // base angle = numerator / (w^n - 1)
};

/// Fixed points of e^n. The base solutions are k/(w^n - 1), k = 0..w^n - 2;
/// over each one the fiber point is the fixed point of the n-step fiber
/// contraction. Throws Overflow if w^n - 1 exceeds the budget and
/// InvalidArgument if n is outside [1, max_period].
std::vector<PeriodicPoint> periodic_points(const SolenoidMap& map, int n,
                                           const PeriodicConfig& config = {});

/// Minimal period of base angle k/(w^n - 1) under theta -> w*theta, exact.
int minimal_base_period(int w, int n, std::uint64_t k);

}  // namespace solenoid_lab
