#pragma once

#include <cmath>

#include "solenoid_lab/kernels.hpp"
#include "solenoid_lab/turn_trig.hpp"

namespace solenoid_lab::detail {

/// One application of e in the exact operation order the batch kernels use.
inline void step_point(const kernels::MapCoefficients& m, double& theta, double& x,
                       double& y) noexcept {
  SinCos u = sincos_turns(theta);
  x = m.lambda * x + m.eps * u.c;
  y = m.lambda * y + m.eps * u.s;
  double t = m.w * theta;
  theta = t - std::floor(t);
}

}  // namespace solenoid_lab::detail
