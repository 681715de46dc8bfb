#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <vector>

#include "solenoid_lab/error.hpp"
#include "solenoid_lab/lens_atlas.hpp"
#include "solenoid_lab/smith.hpp"
#include "solenoid_lab/torus.hpp"

using namespace solenoid_lab;

namespace {

// every (r, s) with ps - qr = 1 and r in (-p/2, p/2], by exhaustive search
std::vector<std::pair<std::int64_t, std::int64_t>> brute_completions(std::int64_t p,
                                                                     std::int64_t q) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t r = -p; r <= p; ++r) {
    if (!(2 * r > -p && 2 * r <= p)) continue;
    for (std::int64_t s = -2 * p - 2; s <= 2 * p + 2; ++s)
      if (p * s - q * r == 1) out.emplace_back(r, s);
  }
  return out;
}

std::int64_t det3(const IntMatrix& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

// determinantal divisors of a 3x3 matrix: d1 = gcd of entries, d1 d2 = gcd of
// 2x2 minors, d1 d2 d3 = |det|
std::vector<std::int64_t> minors_invariants(const IntMatrix& a) {
  std::int64_t g1 = 0, g2 = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g1 = std::gcd(g1, a[i][j]);
  for (int r0 = 0; r0 < 3; ++r0)
    for (int r1 = r0 + 1; r1 < 3; ++r1)
      for (int c0 = 0; c0 < 3; ++c0)
        for (int c1 = c0 + 1; c1 < 3; ++c1)
          g2 = std::gcd(g2, a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]);
  const std::int64_t g3 = std::llabs(det3(a));
  std::vector<std::int64_t> d;
  d.push_back(g1);
  d.push_back(g1 == 0 ? 0 : g2 / g1);
  d.push_back(g2 == 0 ? 0 : g3 / g2);
  return d;
}

}  // namespace

TEST_CASE("complete_gluing examples") {
  CHECK(complete_gluing(5, -2) == GluingMatrix{5, -2, -2, 1});
  CHECK(complete_gluing(1, 0) == GluingMatrix{1, 0, 0, 1});
  const GluingMatrix g = complete_gluing(7, 3);
  CHECK(g.determinant() == 1);
  CHECK(2 * g.r > -7);
  CHECK(2 * g.r <= 7);
  const auto brute = brute_completions(7, 3);
  REQUIRE(brute.size() == 1);
  CHECK(g.r == brute[0].first);
  CHECK(g.s == brute[0].second);
  CHECK(g.r == 2);
  CHECK(g.s == 1);
}

TEST_CASE("complete_gluing errors") {
  try {
    complete_gluing(4, 2);
    FAIL("expected NotCoprime");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::NotCoprime);
  }
  try {
    complete_gluing(0, 1);
    FAIL("expected NonPositiveP");
  } catch (const LabError& e) {
    CHECK(e.code() == ErrorCode::NonPositiveP);
  }
  CHECK_THROWS_AS(complete_gluing(-3, 1), LabError);
}

TEST_CASE("sweep p <= 50: completion matches brute force, det 1, H1 = Z/p") {
  for (std::int64_t p = 1; p <= 50; ++p) {
    for (std::int64_t q = -p + 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const GluingMatrix g = complete_gluing(p, q);
      CAPTURE(p);
      CAPTURE(q);
      CHECK(g.determinant() == 1);
      CHECK(g.angle_determinant() == -1);
      const auto brute = brute_completions(p, q);
      REQUIRE(brute.size() == 1);
      CHECK(g.r == brute[0].first);
      CHECK(g.s == brute[0].second);
      CHECK(h1_order(g) == p);
    }
  }
}

TEST_CASE("transfer_boundary examples") {
  const GluingMatrix g = complete_gluing(5, -2);
  const LatticeAngles mer = transfer_cycle(g, {0, 1, Chart::Two});
  CHECK(mer.chart == Chart::One);
  CHECK(mer.k == 5);
  CHECK(mer.l == -2);
  const LatticeAngles lon = transfer_cycle(g, {1, 0, Chart::Two});
  CHECK(lon.k == g.r);
  CHECK(lon.l == g.s);

  const BoundaryAngles o = transfer_boundary(g, {0.0, 0.0, Chart::Two});
  CHECK(o.chart == Chart::One);
  CHECK(o.alpha == 0.0);
  CHECK(o.beta == 0.0);

  const BoundaryAngles a1 = transfer_boundary(g, {0.3, 0.7, Chart::Two});
  const BoundaryAngles a2 = transfer_boundary(g, a1);
  CHECK(a2.chart == Chart::Two);
  CHECK(std::abs(turn_delta(a2.alpha, 0.3)) < 1e-12);
  CHECK(std::abs(turn_delta(a2.beta, 0.7)) < 1e-12);

  // independent inverse: solve [[r, p], [s, q]] (a, b) = (a1, b1) by Cramer's rule
  const double det = static_cast<double>(g.angle_determinant());
  const double a = (g.q * a1.alpha - g.p * a1.beta) / det;
  const double b = (g.r * a1.beta - g.s * a1.alpha) / det;
  CHECK(std::abs(turn_delta(a, 0.3)) < 1e-12);
  CHECK(std::abs(turn_delta(b, 0.7)) < 1e-12);
}

TEST_CASE("transfer_lattice is a bijection of the 1000 x 1000 lattice") {
  const std::int64_t n = 1000;
  for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{5, -2}, {7, 3}, {1, 0}, {49, 20}}) {
    const GluingMatrix g = complete_gluing(p, q);
    std::vector<char> hit(static_cast<std::size_t>(n * n), 0);
    bool inverse_ok = true;
    for (std::int64_t k = 0; k < n; ++k) {
      for (std::int64_t l = 0; l < n; ++l) {
        const LatticeAngles img = transfer_lattice(g, {k, l, Chart::Two}, n);
        hit[static_cast<std::size_t>(img.k * n + img.l)] = 1;
        const LatticeAngles back = transfer_lattice(g, img, n);
        inverse_ok = inverse_ok && back.k == k && back.l == l && back.chart == Chart::Two;
      }
    }
    CHECK(inverse_ok);
    CHECK(std::count(hit.begin(), hit.end(), 1) == n * n);
  }
}

TEST_CASE("h1_order examples") {
  CHECK(h1_order(complete_gluing(5, -2)) == 5);
  CHECK(h1_order(complete_gluing(1, 0)) == 1);
  CHECK(h1_order(complete_gluing(7, 3)) == 7);
}

TEST_CASE("smith_invariants agree with determinantal divisors") {
  CHECK(smith_invariants({{0, 1}, {5, -2}}) == std::vector<std::int64_t>{1, 5});
  CHECK(smith_invariants({{2, 0}, {0, 3}}) == std::vector<std::int64_t>{1, 6});
  CHECK(smith_invariants({{2, 4}, {6, 8}}) == std::vector<std::int64_t>{2, 4});
  CHECK(presented_group_order({{0, 1}, {0, 0}}) == 0);
  CHECK(presented_group_order({{1, 0}}) == 0);  // one relation, two generators

  std::mt19937_64 gen(99);
  std::uniform_int_distribution<std::int64_t> entry(-9, 9);
  for (int trial = 0; trial < 2000; ++trial) {
    IntMatrix a(3, std::vector<std::int64_t>(3));
    for (auto& row : a)
      for (auto& v : row) v = entry(gen);
    if (trial % 5 == 0) a[2] = a[0];  // rank-deficient cases
    CAPTURE(trial);
    CHECK(smith_invariants(a) == minors_invariants(a));
    CHECK(presented_group_order(a) == std::llabs(det3(a)));
  }
}

TEST_CASE("loop_class examples and additivity") {
  for (std::int64_t p : {1, 2, 5, 7, 12}) {
    for (std::int64_t q = -p + 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const GluingMatrix g = complete_gluing(p, q);
      CHECK(loop_class(g, 1, 0) == 1 % p);
      CHECK(core_is_knotted(g) == (p > 1));
      CHECK(loop_class(g, p, 0) == 0);
      for (std::int64_t a = -6; a <= 6; ++a)
        for (std::int64_t b = -6; b <= 6; ++b)
          for (std::int64_t c = -3; c <= 3; ++c)
            CHECK(loop_class(g, a + c, b - c) ==
                  (loop_class(g, a, b) + loop_class(g, c, -c)) % p);
    }
  }
  const GluingMatrix g = complete_gluing(5, -2);
  CHECK(loop_class(g, 0, 1) == 3);
}

TEST_CASE("loop_class of the chart-2 core matches a presentation reduction") {
  // H1 = <lambda1, mu1 | mu1, p lambda1 + q mu1>; the chart-2 longitude is
  // r lambda1 + s mu1, which reduces to r lambda1 = r (mod p)
  for (std::int64_t p = 2; p <= 30; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const GluingMatrix g = complete_gluing(p, q);
      const LatticeAngles lon2 = transfer_cycle(g, {1, 0, Chart::Two});
      CHECK(loop_class(g, 0, 1) == ((lon2.k % p) + p) % p);
    }
}

TEST_CASE("inverse gluing on cycles: mu1 -> p lambda2 - r mu2, lambda1 -> -q lambda2 + s mu2") {
  for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{5, -2}, {7, 3}, {1, 0}, {12, 5}}) {
    const GluingMatrix g = complete_gluing(p, q);
    const LatticeAngles mu1 = transfer_cycle(g, {0, 1, Chart::One});
    CHECK(mu1.chart == Chart::Two);
    CHECK(mu1.k == p);
    CHECK(mu1.l == -g.r);
    const LatticeAngles lambda1 = transfer_cycle(g, {1, 0, Chart::One});
    CHECK(lambda1.k == -q);
    CHECK(lambda1.l == g.s);
  }
}
