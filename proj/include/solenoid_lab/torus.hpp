#pragma once

#include <cmath>

namespace solenoid_lab {

/// Reduce an angle measured in turns into [0, 1).
inline double wrap_turn(double t) noexcept {
  double r = t - std::floor(t);
  // t slightly below an integer can round up to exactly 1.0
  return r >= 1.0 ? 0.0 : r;
}

/// Signed shortest difference a - b between two angles in turns, in [-0.5, 0.5).
inline double turn_delta(double a, double b) noexcept {
  double d = wrap_turn(a - b);
  return d >= 0.5 ? d - 1.0 : d;
}

/// A point of the solid torus S^1 x D^2. The base angle is a fraction of a
/// full turn; the fiber coordinates live in the closed unit disc.
struct TorusPoint {
  double theta = 0.0;
  double x = 0.0;
  double y = 0.0;

  TorusPoint() = default;
  TorusPoint(double theta_turns, double fx, double fy) noexcept
      : theta(wrap_turn(theta_turns)), x(fx), y(fy) {}

  double fiber_radius() const noexcept { return std::hypot(x, y); }
  bool valid(double slack = 0.0) const noexcept {
    return theta >= 0.0 && theta < 1.0 && x * x + y * y <= 1.0 + slack;
  }
};

/// Solid-torus metric: base arc measured along the unit-radius core
/// (2*pi per turn) combined with Euclidean fiber distance.
inline double torus_distance(const TorusPoint& a, const TorusPoint& b) noexcept {
  constexpr double two_pi = 6.283185307179586476925286766559;
  double arc = two_pi * turn_delta(a.theta, b.theta);
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  return std::sqrt(arc * arc + dx * dx + dy * dy);
}

/// Euclidean distance between fiber coordinates only.
inline double fiber_distance(const TorusPoint& a, const TorusPoint& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace solenoid_lab
