#pragma once

#include <cstdint>

namespace solenoid_lab {

/// Gluing data of L(p,q) = N1 u_phi N2 with phi: dN2 -> dN1 given on
/// homology by phi(mu2) = p*lambda1 + q*mu1, phi(lambda2) = r*lambda1 + s*mu1
/// and ps - qr = 1.
struct GluingMatrix {
  std::int64_t p;
  std::int64_t q;
  std::int64_t r;
  std::int64_t s;

  std::int64_t determinant() const noexcept { return p * s - q * r; }

  /// Determinant of the boundary angle transform [[r, p], [s, q]]; -1 since
  /// the gluing reverses orientation.
  std::int64_t angle_determinant() const noexcept { return r * q - p * s; }

  bool operator==(const GluingMatrix&) const = default;
};

enum class Chart { One = 1, Two = 2 };

/// Point of a boundary torus: alpha along the longitude, beta along the
/// meridian, both in turns.
struct BoundaryAngles {
  double alpha;
  double beta;
  Chart chart;
};

/// Completes (p, q) to a gluing matrix with r in (-p/2, p/2].
/// Throws NonPositiveP or NotCoprime.
GluingMatrix complete_gluing(std::int64_t p, std::int64_t q);

/// Chart 2 -> chart 1 applies [[r, p], [s, q]] to (alpha, beta); chart 1 ->
/// chart 2 applies its integer inverse [[-q, p], [s, -r]]. Angles mod 1.
BoundaryAngles transfer_boundary(const GluingMatrix& g, const BoundaryAngles& a);

/// Exact version on the lattice (k/n, l/n) of the torus: returns the image
/// numerators reduced into [0, n).
struct LatticeAngles {
  std::int64_t k;
  std::int64_t l;
  Chart chart;
};
LatticeAngles transfer_lattice(const GluingMatrix& g, const LatticeAngles& a, std::int64_t n);

/// Integer transfer of a boundary homology class (longitude count, meridian
/// count), e.g. the chart-2 meridian (0, 1) maps to (p, q).
LatticeAngles transfer_cycle(const GluingMatrix& g, const LatticeAngles& a);

/// |H1(L(p,q))| from the relation matrix <mu1 = 0, p*lambda1 + q*mu1 = 0>
/// by Smith normal form.
std::int64_t h1_order(const GluingMatrix& g);

/// Class in H1(L(p,q)) = Z/p of a loop winding n1 times along the chart-1
/// longitude and n2 times along the chart-2 longitude (lambda2 = r*lambda1).
/// Returned in [0, p).
std::int64_t loop_class(const GluingMatrix& g, std::int64_t n1, std::int64_t n2);

/// The core of the defining solid torus N1 is non-trivial in H1, hence
/// knotted, exactly when p > 1.
bool core_is_knotted(const GluingMatrix& g);

}  // namespace solenoid_lab
