#pragma once

#include <array>
#include <vector>

#include "solenoid_lab/kernels.hpp"
#include "solenoid_lab/torus.hpp"

namespace solenoid_lab {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// The model solenoid embedding of N = S^1 x D^2,
///
///   e(theta, z) = (w*theta mod 1, z/w^2 + eps*u(theta)),  u(t) = (cos 2pi t, sin 2pi t).
///
/// Each fiber disc is carried onto a disc of radius 1/w^2; the core circle
/// becomes a closed w-string braid. Construction enforces that the w sheet
/// discs over every base angle are pairwise disjoint (eps*sin(pi/w) > 1/w^2)
/// and that the image stays inside the open solid torus (1/w^2 + eps < 1).
class SolenoidMap {
 public:
  int w() const noexcept { return w_; }
  double lambda() const noexcept { return lambda_; }
  double eps() const noexcept { return eps_; }

  kernels::MapCoefficients coefficients() const noexcept {
    return {static_cast<double>(w_), lambda_, eps_};
  }

  /// Skips the embedding checks. Only for diagnostics on degenerate
  /// families (e.g. the decoupled product map eps = 0); the result is not
  /// an embedding in general.
  static SolenoidMap unvalidated(int w, double eps);

 private:
  SolenoidMap(int w, double eps) noexcept;
  friend SolenoidMap make_solenoid_map(int w, double eps);

  int w_;
  double lambda_;
  double eps_;
};

inline constexpr double default_eps = 0.5;

/// Throws WindingTooSmall, SheetOverlap, ImageEscapes, or InvalidArgument.
SolenoidMap make_solenoid_map(int w, double eps = default_eps);

TorusPoint apply(const SolenoidMap& map, const TorusPoint& pt);

/// Unique preimage of a point of e(N). Throws NotInImage when pt lies in no
/// sheet disc.
TorusPoint apply_inverse(const SolenoidMap& map, const TorusPoint& pt);

/// Index j of the sheet disc of e(N) containing pt, or -1. The containing
/// disc, if any, is the one whose center angle is closest to arg z.
int containing_sheet(const SolenoidMap& map, const TorusPoint& pt) noexcept;

struct SheetCenter {
  double theta;  // preimage base angle (theta_out + j)/w
  double x;
  double y;
};

/// The w sheet-disc centers over base angle theta_out, j = 0..w-1.
std::vector<SheetCenter> sheet_centers(const SolenoidMap& map, double theta_out);

/// Smallest pairwise distance between distinct sheet centers over theta_out.
double min_sheet_separation(const SolenoidMap& map, double theta_out);

/// Derivative in coordinates (theta, x, y), theta in turns.
Mat3 jacobian(const SolenoidMap& map, const TorusPoint& pt);

/// Fiber distance from pt to the slice of the nested image e^depth(N) over
/// pt.theta (depth 0 is N itself). Branch-and-bound over preimage
/// sheets. Branches that could improve the result by less than a relative
/// 1e-9 are pruned; absolute accuracy is limited by double rounding (~1e-16).
double nested_tube_distance(const SolenoidMap& map, const TorusPoint& pt, int depth);

}  // namespace solenoid_lab
