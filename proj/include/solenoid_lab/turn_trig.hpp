#pragma once

#include <cmath>

namespace solenoid_lab {

// sin/cos of an angle given in turns. The reduction is exact (t*4 and
// t*4 - round(t*4) are exact in binary floating point), so accuracy is
// that of the core polynomials on [-pi/4, pi/4], a few ulp. The vector
// kernels evaluate the same operation sequence and reproduce these bits.
namespace trig_detail {

inline constexpr double half_pi = 1.57079632679489661923132169163975144;

inline constexpr double sin_c0 = 1.58962301576546568060e-10;
inline constexpr double sin_c1 = -2.50507477628578072866e-8;
inline constexpr double sin_c2 = 2.75573136213857245213e-6;
inline constexpr double sin_c3 = -1.98412698295895385996e-4;
inline constexpr double sin_c4 = 8.33333333332211858878e-3;
inline constexpr double sin_c5 = -1.66666666666666307295e-1;

inline constexpr double cos_c0 = -1.13585365213876817300e-11;
inline constexpr double cos_c1 = 2.08757008419747316778e-9;
inline constexpr double cos_c2 = -2.75573141792967388112e-7;
inline constexpr double cos_c3 = 2.48015872888517045348e-5;
inline constexpr double cos_c4 = -1.38888888888730564116e-3;
inline constexpr double cos_c5 = 4.16666666666665929218e-2;

inline double sin_poly(double r, double r2) noexcept {
  double p = sin_c0;
  p = p * r2 + sin_c1;
  p = p * r2 + sin_c2;
  p = p * r2 + sin_c3;
  p = p * r2 + sin_c4;
  p = p * r2 + sin_c5;
  return r + r * (r2 * p);
}

inline double cos_poly(double r2) noexcept {
  double p = cos_c0;
  p = p * r2 + cos_c1;
  p = p * r2 + cos_c2;
  p = p * r2 + cos_c3;
  p = p * r2 + cos_c4;
  p = p * r2 + cos_c5;
  return (1.0 - 0.5 * r2) + (r2 * r2) * p;
}

}  // namespace trig_detail

struct SinCos {
  double s;
  double c;
};

/// (sin 2*pi*t, cos 2*pi*t) for t in turns.
inline SinCos sincos_turns(double t) noexcept {
  using namespace trig_detail;
  double q4 = t * 4.0;
  double k = std::nearbyint(q4);
  double r = (q4 - k) * half_pi;
  double r2 = r * r;
  double sr = sin_poly(r, r2);
  double cr = cos_poly(r2);
  // quadrant = k mod 4, computed in floating point like the vector kernels
  double quad = k - 4.0 * std::floor(k * 0.25);
  if (quad == 0.0) return {sr, cr};
  if (quad == 1.0) return {cr, -sr};
  if (quad == 2.0) return {-sr, -cr};
  return {-cr, sr};
}

}  // namespace solenoid_lab
