#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "solenoid_lab/periodic.hpp"
#include "solenoid_lab/point_cloud.hpp"
#include "solenoid_lab/solenoid_map.hpp"

namespace solenoid_lab {

struct LyapunovOptions {
  int reorth_period = 1;  // Jacobian products between QR steps
};

/// Lyapunov spectrum along the orbit of x0, sorted descending. Iterates
/// Jacobian products and re-orthonormalizes the tangent frame by modified
/// Gram-Schmidt every reorth_period steps. The frame starts as the
/// coordinate basis ordered (x, y, theta): the fiber plane is invariant
/// under the derivative, so the first two frame vectors stay in it.
std::array<double, 3> lyapunov_exponents(const SolenoidMap& map, const TorusPoint& x0, int steps,
                                         const LyapunovOptions& options = {});

/// (1/n_max) * log(number of fixed points of e^n_max).
double entropy_estimate(const SolenoidMap& map, int n_max);

struct DimensionReport {
  std::vector<double> scales;        // strictly decreasing
  std::vector<std::uint64_t> counts;  // occupied boxes per scale
  double slope;
  double intercept;
  double r2;
  std::size_t fit_first;  // scales[fit_first, fit_last] entered the fit
  std::size_t fit_last;
};

/// Box-counting dimension in (theta, x, y). theta is binned periodically
/// into round(1/s) bins; x and y into cells of side s over [-1, 1].
/// With 6 or more scales the largest and smallest are left out of the
/// least-squares fit. Throws DegenerateFit if all fitted counts are equal.
DimensionReport box_dimension(const PointCloud& cloud, std::vector<double> scales);

/// Occupied boxes at one scale.
std::uint64_t count_boxes(const PointCloud& cloud, double scale);

struct HyperbolicityReport {
  double kappa;
  double kappa_image_max;  // worst image-cone aperture over the samples
  double expansion_min;
  double contraction_max;
  bool cone_invariant;
  bool verified;
};

/// Cone-field check on random points: the cone |v_fiber| <= kappa*|v_base|
/// must map into itself, base growth must reach w and fiber growth stay
/// within lambda. All bounds come from the numeric Jacobian.
HyperbolicityReport cone_check(const SolenoidMap& map, double kappa, int samples,
                               std::uint64_t seed = 0);

/// Analytic invariance threshold 2*pi*eps/(w - lambda).
double cone_threshold(const SolenoidMap& map);

}  // namespace solenoid_lab
