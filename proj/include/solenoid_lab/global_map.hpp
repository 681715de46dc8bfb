#pragma once

#include <cstdint>
#include <optional>

#include "solenoid_lab/lens_atlas.hpp"
#include "solenoid_lab/point_cloud.hpp"
#include "solenoid_lab/solenoid_map.hpp"

namespace solenoid_lab {

/// A point of L(p,q) in one of the two solid-torus charts. Points on the
/// common boundary torus (|z| = 1) are canonically stored in chart 1.
struct ManifoldPoint {
  Chart chart;
  TorusPoint pt;
};

struct BraidGeometry {
  int strands;         // m*p + 1
  double tube_radius;  // < 1/strands^2
  int twist;           // extra full turns of the strand ring per base traversal
};

/// Piecewise model of the diffeomorphism f on L(p,q): e2 contracts chart 2
/// into its braid tube (attractor side), e1^-1 expands the chart-1 braid
/// tube (repeller side), and a one-shot transit carries the rest of chart 1
/// across the boundary into chart 2.
struct GlobalModel {
  GluingMatrix gluing;
  int m;
  int w;
  SolenoidMap e1;
  SolenoidMap e2;
  BraidGeometry braid;

  const SolenoidMap& map(Chart c) const noexcept { return c == Chart::One ? e1 : e2; }
};

/// Radius at which transit points are re-inserted into the target chart.
inline constexpr double transit_radius = 0.9;

GlobalModel build_model(std::int64_t p, std::int64_t q, int m, double eps = default_eps,
                        int twist = 0);

/// Point of the closed braid in chart c at parameter t in [0, 1).
TorusPoint braid_center(const GlobalModel& model, Chart c, double t);

/// Integer longitude winding of the braid, by accumulating wrapped base
/// angle increments over `samples` parameter steps.
std::int64_t braid_winding(const GlobalModel& model, Chart c, int samples = 4096);

/// Minimum over `samples` base angles of the fiber distance between
/// distinct strands, and of the distance from the strands to the core.
struct BraidClearance {
  double strand_separation;
  double core_clearance;
};
BraidClearance braid_clearance(const GlobalModel& model, Chart c, int samples = 10000);

/// Boundary points in chart 2 are rewritten in chart 1; everything else is
/// returned unchanged.
ManifoldPoint canonicalize(const GlobalModel& model, const ManifoldPoint& x);

ManifoldPoint step(const GlobalModel& model, const ManifoldPoint& x);
ManifoldPoint step_back(const GlobalModel& model, const ManifoldPoint& x);

/// Transit surrogate from `from` to the other chart: radial projection to
/// boundary angles, gluing transfer, re-insertion at transit_radius, then a
/// radial push out of the target braid tube if needed.
ManifoldPoint transit(const GlobalModel& model, Chart from, const TorusPoint& pt);

enum class TimeDirection { Forward, Backward };

enum class FateKind { ConvergedToAttractor, OnRepeller, Undecided };

struct OrbitFate {
  FateKind kind;
  std::optional<int> transit_step;
  double final_distance;
};

/// Fiber distance from x to the reference approximant of the attractor the
/// orbit is heading to (chart 2 forward, chart 1 backward); the reference is
/// the nested tube set e^depth(N) that `ref` samples. Infinite if x is in
/// the other chart.
double attractor_distance(const GlobalModel& model, const ManifoldPoint& x,
                          const PointCloud& ref, TimeDirection dir = TimeDirection::Forward);

/// Iterates step (or step_back). Backward, the roles of the charts swap and
/// "attractor" means the attractor of f^-1, i.e. the repeller of f.
///   ConvergedToAttractor: after k steps in the target chart the reference
///     distance is below 10 * lambda^k;
///   OnRepeller: the orbit returns to its start within 1e-12 while staying in
///     the source chart's braid tube;
///   Undecided: otherwise.
/// Throws InvalidArgument if `ref` was not sampled from the target chart's
/// map at depth >= 20.
OrbitFate classify_orbit(const GlobalModel& model, const ManifoldPoint& x, int max_steps,
                         const PointCloud& ref, TimeDirection dir = TimeDirection::Forward);

/// Uniform random point of L(p,q): chart chosen by a fair coin, then a
/// uniform point of the solid torus. Pure function of (seed, index).
ManifoldPoint random_manifold_point(std::uint64_t seed, std::uint64_t index);

}  // namespace solenoid_lab
