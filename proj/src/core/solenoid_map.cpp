#include "solenoid_lab/solenoid_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "solenoid_lab/detail/map_step.hpp"
#include "solenoid_lab/error.hpp"
#include "solenoid_lab/turn_trig.hpp"

namespace solenoid_lab {

namespace {

// Slack for points produced by floating-point maps that should sit on the
// unit circle or a sheet boundary.
constexpr double boundary_slack = 1e-12;

void require_valid(const TorusPoint& pt, const char* what) {
  if (!std::isfinite(pt.theta) || !std::isfinite(pt.x) || !std::isfinite(pt.y) ||
      !pt.valid(boundary_slack))
    throw LabError(ErrorCode::InvalidArgument,
                   std::string(what) + ": point outside the solid torus");
}

}  // namespace

SolenoidMap::SolenoidMap(int w, double eps) noexcept
    : w_(w), lambda_(1.0 / (static_cast<double>(w) * static_cast<double>(w))), eps_(eps) {}

SolenoidMap SolenoidMap::unvalidated(int w, double eps) {
  if (w < 1) throw LabError(ErrorCode::WindingTooSmall, "w must be positive");
  return SolenoidMap(w, eps);
}

SolenoidMap make_solenoid_map(int w, double eps) {
  if (w < 2)
    throw LabError(ErrorCode::WindingTooSmall, "w = " + std::to_string(w) + " must be >= 2");
  if (!std::isfinite(eps)) throw LabError(ErrorCode::InvalidArgument, "eps must be finite");
  SolenoidMap map(w, eps);
  const double half_chord = eps * std::sin(std::numbers::pi / w);
  if (!(half_chord > map.lambda()))
    throw LabError(ErrorCode::SheetOverlap, "eps*sin(pi/w) = " + std::to_string(half_chord) +
                                                " <= 1/w^2 = " + std::to_string(map.lambda()));
  if (!(map.lambda() + eps < 1.0))
    throw LabError(ErrorCode::ImageEscapes,
                   "1/w^2 + eps = " + std::to_string(map.lambda() + eps) + " >= 1");
  return map;
}

TorusPoint apply(const SolenoidMap& map, const TorusPoint& pt) {
  require_valid(pt, "apply");
  TorusPoint out = pt;
  detail::step_point(map.coefficients(), out.theta, out.x, out.y);
  return out;
}

int containing_sheet(const SolenoidMap& map, const TorusPoint& pt) noexcept {
  const int w = map.w();
  const double arg = std::atan2(pt.y, pt.x) / (2.0 * std::numbers::pi);
  // center angles are (theta + j)/w; nearest j to w*arg - theta
  const double jf = std::nearbyint(wrap_turn(arg) * w - pt.theta);
  int j = static_cast<int>(jf) % w;
  if (j < 0) j += w;
  const double center_turn = (pt.theta + j) / w;
  const SinCos u = sincos_turns(center_turn);
  const double d = std::hypot(pt.x - map.eps() * u.c, pt.y - map.eps() * u.s);
  return d <= map.lambda() * (1.0 + boundary_slack) ? j : -1;
}

TorusPoint apply_inverse(const SolenoidMap& map, const TorusPoint& pt) {
  require_valid(pt, "apply_inverse");
  const int j = containing_sheet(map, pt);
  if (j < 0) throw LabError(ErrorCode::NotInImage, "point lies in no sheet disc of e(N)");
  TorusPoint pre;
  pre.theta = wrap_turn((pt.theta + j) / map.w());
  const SinCos u = sincos_turns(pre.theta);
  pre.x = (pt.x - map.eps() * u.c) / map.lambda();
  pre.y = (pt.y - map.eps() * u.s) / map.lambda();
  const double r = std::hypot(pre.x, pre.y);
  if (r > 1.0) {
    pre.x /= r;
    pre.y /= r;
  }
  return pre;
}

std::vector<SheetCenter> sheet_centers(const SolenoidMap& map, double theta_out) {
  std::vector<SheetCenter> out;
  out.reserve(static_cast<std::size_t>(map.w()));
  for (int j = 0; j < map.w(); ++j) {
    const double t = (theta_out + j) / map.w();
    const SinCos u = sincos_turns(t);
    out.push_back({t, map.eps() * u.c, map.eps() * u.s});
  }
  return out;
}

double min_sheet_separation(const SolenoidMap& map, double theta_out) {
  const auto centers = sheet_centers(map, theta_out);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = a + 1; b < centers.size(); ++b)
      best = std::min(best, std::hypot(centers[a].x - centers[b].x, centers[a].y - centers[b].y));
  return best;
}

Mat3 jacobian(const SolenoidMap& map, const TorusPoint& pt) {
  const SinCos u = sincos_turns(pt.theta);
  const double k = 2.0 * std::numbers::pi * map.eps();
  const double lam = map.lambda();
  return Mat3{{{static_cast<double>(map.w()), 0.0, 0.0},
               {-k * u.s, lam, 0.0},
               {k * u.c, 0.0, lam}}};
}

namespace {

struct NestedSearch {
  static constexpr double relative_slack = 1e-9;
  const SolenoidMap& map;

  // scale * (fiber distance from z to the depth-`depth` slice over theta),
  // or `best` when every branch is provably no closer.
  double run(double theta, double x, double y, int depth, double scale, double best) const {
    if (depth == 0) return std::min(best, scale * std::max(std::hypot(x, y) - 1.0, 0.0));
    const int w = map.w();
    struct Branch {
      double bound;
      double theta;
      double x;
      double y;
    };
    std::vector<Branch> branches;
    branches.reserve(static_cast<std::size_t>(w));
    for (int j = 0; j < w; ++j) {
      const double t = (theta + j) / w;
      const SinCos u = sincos_turns(t);
      const double dx = x - map.eps() * u.c;
      const double dy = y - map.eps() * u.s;
      const double bound = scale * std::max(std::hypot(dx, dy) - map.lambda(), 0.0);
      branches.push_back({bound, t, dx / map.lambda(), dy / map.lambda()});
    }
    std::sort(branches.begin(), branches.end(),
              [](const Branch& a, const Branch& b) { return a.bound < b.bound; });
    for (const Branch& b : branches) {
      // far from the nest all sibling bounds tie with best up to rounding;
      // without the relative slack the search would visit every branch
      if (b.bound >= best * (1.0 - relative_slack)) break;
      best = run(b.theta, b.x, b.y, depth - 1, scale * map.lambda(), best);
    }
    return best;
  }
};

}  // namespace

double nested_tube_distance(const SolenoidMap& map, const TorusPoint& pt, int depth) {
  if (depth < 0) throw LabError(ErrorCode::InvalidArgument, "depth must be >= 0");
  return NestedSearch{map}.run(pt.theta, pt.x, pt.y, depth, 1.0,
                               std::numeric_limits<double>::infinity());
}

}  // namespace solenoid_lab
