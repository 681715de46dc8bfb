#include "solenoid_lab/global_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "solenoid_lab/error.hpp"
#include "solenoid_lab/rng.hpp"
#include "solenoid_lab/turn_trig.hpp"

namespace solenoid_lab {

namespace {

// Below this, fiber distances computed from double coordinates are
// rounding noise and can no longer resolve the 10*lambda^k convergence law.
constexpr double distance_resolution = 1e-12;
constexpr double repeat_tolerance = 1e-12;
constexpr int min_reference_depth = 20;

Chart other(Chart c) { return c == Chart::One ? Chart::Two : Chart::One; }

double fiber_turn(const TorusPoint& pt) {
  return wrap_turn(std::atan2(pt.y, pt.x) / (2.0 * std::numbers::pi));
}

void check_reference(const GlobalModel& model, const PointCloud& ref) {
  const auto& meta = ref.meta();
  if (!meta) throw LabError(ErrorCode::InvalidArgument, "attractor reference carries no sampling meta");
  if (meta->w != model.w || meta->eps != model.e2.eps())
    throw LabError(ErrorCode::InvalidArgument, "attractor reference sampled from a different map");
  if (meta->depth < min_reference_depth)
    throw LabError(ErrorCode::InvalidArgument,
                   "attractor reference depth " + std::to_string(meta->depth) + " < 20");
}

}  // namespace

GlobalModel build_model(std::int64_t p, std::int64_t q, int m, double eps, int twist) {
  const GluingMatrix g = complete_gluing(p, q);
  if (m < 1) throw LabError(ErrorCode::InvalidArgument, "m must be >= 1");
  std::int64_t w64 = 0;
  if (__builtin_mul_overflow(static_cast<std::int64_t>(m), p, &w64) || w64 + 1 > (1 << 20))
    throw LabError(ErrorCode::Overflow, "m*p + 1 is too large");
  const int w = static_cast<int>(w64 + 1);
  SolenoidMap e = make_solenoid_map(w, eps);
  const BraidGeometry braid{w, 1.0 / (2.0 * w * static_cast<double>(w)), twist};
  return GlobalModel{g, m, w, e, e, braid};
}

TorusPoint braid_center(const GlobalModel& model, Chart c, double t) {
  t = wrap_turn(t);
  const double base = wrap_turn(model.w * t);
  const double ring = wrap_turn(t + model.braid.twist * (model.w * t));
  const SinCos u = sincos_turns(ring);
  const double eps = model.map(c).eps();
  return {base, eps * u.c, eps * u.s};
}

std::int64_t braid_winding(const GlobalModel& model, Chart c, int samples) {
  if (samples <= 2 * model.w)
    throw LabError(ErrorCode::InvalidArgument, "winding needs more than 2w samples");
  double lift = 0.0;
  double prev = braid_center(model, c, 0.0).theta;
  for (int i = 1; i <= samples; ++i) {
    const double cur = braid_center(model, c, static_cast<double>(i) / samples).theta;
    lift += turn_delta(cur, prev);
    prev = cur;
  }
  return std::llround(lift);
}

BraidClearance braid_clearance(const GlobalModel& model, Chart c, int samples) {
  BraidClearance out{std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()};
  std::vector<TorusPoint> ring(static_cast<std::size_t>(model.w));
  for (int i = 0; i < samples; ++i) {
    const double base = static_cast<double>(i) / samples;
    for (int j = 0; j < model.w; ++j)
      ring[static_cast<std::size_t>(j)] = braid_center(model, c, (base + j) / model.w);
    for (std::size_t a = 0; a < ring.size(); ++a) {
      out.core_clearance = std::min(out.core_clearance, ring[a].fiber_radius());
      for (std::size_t b = a + 1; b < ring.size(); ++b)
        out.strand_separation = std::min(out.strand_separation, fiber_distance(ring[a], ring[b]));
    }
  }
  return out;
}

ManifoldPoint canonicalize(const GlobalModel& model, const ManifoldPoint& x) {
  if (x.chart != Chart::Two || x.pt.fiber_radius() < 1.0) return x;
  const BoundaryAngles b = transfer_boundary(model.gluing, {x.pt.theta, fiber_turn(x.pt), Chart::Two});
  const SinCos u = sincos_turns(b.beta);
  return {Chart::One, TorusPoint(b.alpha, u.c, u.s)};
}

ManifoldPoint transit(const GlobalModel& model, Chart from, const TorusPoint& pt) {
  const BoundaryAngles b = transfer_boundary(model.gluing, {pt.theta, fiber_turn(pt), from});
  const SolenoidMap& target = model.map(b.chart);
  const SinCos dir = sincos_turns(b.beta);
  double radius = transit_radius;
  TorusPoint out(b.alpha, radius * dir.c, radius * dir.s);
  for (int guard = 0; guard <= target.w(); ++guard) {
    const int j = containing_sheet(target, out);
    if (j < 0) break;
    // leave the sheet disc along the ray, halfway to the boundary torus
    const auto centers = sheet_centers(target, out.theta);
    const auto& c = centers[static_cast<std::size_t>(j)];
    const double along = dir.c * c.x + dir.s * c.y;
    const double far = along + std::sqrt(std::max(0.0, along * along - (c.x * c.x + c.y * c.y) +
                                                           target.lambda() * target.lambda()));
    radius = 0.5 * (far + 1.0);
    out = TorusPoint(b.alpha, radius * dir.c, radius * dir.s);
  }
  return {b.chart, out};
}

ManifoldPoint step(const GlobalModel& model, const ManifoldPoint& x) {
  const ManifoldPoint cur = canonicalize(model, x);
  if (cur.chart == Chart::Two) return {Chart::Two, apply(model.e2, cur.pt)};
  if (containing_sheet(model.e1, cur.pt) >= 0)
    return canonicalize(model, {Chart::One, apply_inverse(model.e1, cur.pt)});
  return transit(model, Chart::One, cur.pt);
}

ManifoldPoint step_back(const GlobalModel& model, const ManifoldPoint& x) {
  const ManifoldPoint cur = canonicalize(model, x);
  if (cur.chart == Chart::One) return {Chart::One, apply(model.e1, cur.pt)};
  if (containing_sheet(model.e2, cur.pt) >= 0)
    return canonicalize(model, {Chart::Two, apply_inverse(model.e2, cur.pt)});
  return canonicalize(model, transit(model, Chart::Two, cur.pt));
}

double attractor_distance(const GlobalModel& model, const ManifoldPoint& x, const PointCloud& ref,
                          TimeDirection dir) {
  check_reference(model, ref);
  const Chart target = dir == TimeDirection::Forward ? Chart::Two : Chart::One;
  if (x.chart != target) return std::numeric_limits<double>::infinity();
  return nested_tube_distance(model.map(target), x.pt, ref.meta()->depth);
}

OrbitFate classify_orbit(const GlobalModel& model, const ManifoldPoint& x, int max_steps,
                         const PointCloud& ref, TimeDirection dir) {
  check_reference(model, ref);
  if (max_steps < 0) throw LabError(ErrorCode::InvalidArgument, "max_steps must be >= 0");
  const bool forward = dir == TimeDirection::Forward;
  const Chart target = forward ? Chart::Two : Chart::One;
  const Chart source = other(target);
  const SolenoidMap& source_map = model.map(source);
  const double lam = model.map(target).lambda();
  const int depth = ref.meta()->depth;

  // last post-transit step at which 10*lambda^k is still resolvable
  int k_final = 0;
  while (k_final < depth && 10.0 * std::pow(lam, k_final + 1) >= distance_resolution) ++k_final;

  const ManifoldPoint start = canonicalize(model, x);
  ManifoldPoint cur = start;
  std::optional<int> transit_step;
  if (cur.chart == target) transit_step = 0;
  bool in_tube = cur.chart == source && containing_sheet(source_map, cur.pt) >= 0;
  int k = 0;

  for (int i = 1; i <= max_steps; ++i) {
    if (transit_step && k >= k_final) break;
    cur = forward ? step(model, cur) : step_back(model, cur);
    if (transit_step) {
      ++k;
      continue;
    }
    if (cur.chart == target) {
      transit_step = i;
      continue;
    }
    if (in_tube && cur.chart == source) {
      const double back = torus_distance(cur.pt, start.pt);
      if (back < repeat_tolerance) return {FateKind::OnRepeller, std::nullopt, back};
    }
    in_tube = in_tube && cur.chart == source && containing_sheet(source_map, cur.pt) >= 0;
  }

  if (!transit_step)
    return {FateKind::Undecided, std::nullopt, std::numeric_limits<double>::infinity()};
  const double d = nested_tube_distance(model.map(target), cur.pt, depth);
  if (d < 10.0 * std::pow(lam, k)) return {FateKind::ConvergedToAttractor, transit_step, d};
  return {FateKind::Undecided, std::nullopt, d};
}

ManifoldPoint random_manifold_point(std::uint64_t seed, std::uint64_t index) {
  CounterRng coin(seed ^ 0x5851f42d4c957f2dULL, index);
  const Chart c = (coin.next_u64() >> 63) != 0 ? Chart::Two : Chart::One;
  return {c, random_torus_point(seed, index)};
}

}  // namespace solenoid_lab
