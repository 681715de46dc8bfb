#include "solenoid_lab/lens_atlas.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "solenoid_lab/error.hpp"
#include "solenoid_lab/smith.hpp"
#include "solenoid_lab/torus.hpp"

namespace solenoid_lab {

namespace {

// x with a*x = 1 (mod m), m >= 1, gcd(a, m) = 1
std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = ((a % m) + m) % m, r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  return ((old_s % m) + m) % m;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

GluingMatrix complete_gluing(std::int64_t p, std::int64_t q) {
  if (p < 1) throw LabError(ErrorCode::NonPositiveP, "p = " + std::to_string(p) + " must be >= 1");
  if (std::gcd(p, q) != 1)
    throw LabError(ErrorCode::NotCoprime, "gcd(" + std::to_string(p) + ", " + std::to_string(q) +
                                              ") != 1");
  // ps - qr = 1  =>  q*r = -1 (mod p)
  std::int64_t r = p == 1 ? 0 : floor_mod(-mod_inverse(q, p), p);
  if (2 * r > p) r -= p;  // representative in (-p/2, p/2]
  const std::int64_t s = (1 + q * r) / p;
  return {p, q, r, s};
}

BoundaryAngles transfer_boundary(const GluingMatrix& g, const BoundaryAngles& a) {
  const auto r = static_cast<double>(g.r), p = static_cast<double>(g.p);
  const auto s = static_cast<double>(g.s), q = static_cast<double>(g.q);
  if (a.chart == Chart::Two)
    return {wrap_turn(r * a.alpha + p * a.beta), wrap_turn(s * a.alpha + q * a.beta), Chart::One};
  return {wrap_turn(-q * a.alpha + p * a.beta), wrap_turn(s * a.alpha - r * a.beta), Chart::Two};
}

LatticeAngles transfer_cycle(const GluingMatrix& g, const LatticeAngles& a) {
  if (a.chart == Chart::Two) return {g.r * a.k + g.p * a.l, g.s * a.k + g.q * a.l, Chart::One};
  return {-g.q * a.k + g.p * a.l, g.s * a.k - g.r * a.l, Chart::Two};
}

LatticeAngles transfer_lattice(const GluingMatrix& g, const LatticeAngles& a, std::int64_t n) {
  if (n < 1) throw LabError(ErrorCode::InvalidArgument, "lattice size must be >= 1");
  const LatticeAngles raw = transfer_cycle(g, {floor_mod(a.k, n), floor_mod(a.l, n), a.chart});
  return {floor_mod(raw.k, n), floor_mod(raw.l, n), raw.chart};
}

std::int64_t h1_order(const GluingMatrix& g) {
  // generators (lambda1, mu1); relations mu1 = 0 and phi(mu2) = 0
  const IntMatrix relations{{0, 1}, {g.p, g.q}};
  return presented_group_order(relations);
}

std::int64_t loop_class(const GluingMatrix& g, std::int64_t n1, std::int64_t n2) {
  return floor_mod(n1 + g.r * n2, g.p);
}

bool core_is_knotted(const GluingMatrix& g) { return loop_class(g, 1, 0) != 0; }

}  // namespace solenoid_lab
