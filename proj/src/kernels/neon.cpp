// Two-lane float64 variant for AArch64, where NEON is part of the baseline.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "solenoid_lab/kernels.hpp"
#include "solenoid_lab/turn_trig.hpp"

namespace solenoid_lab::kernels::neon {

namespace {

struct SinCos2 {
  float64x2_t s;
  float64x2_t c;
};

inline float64x2_t poly6(float64x2_t r2, double c0, double c1, double c2, double c3, double c4,
                         double c5) {
  float64x2_t p = vdupq_n_f64(c0);
  p = vaddq_f64(vmulq_f64(p, r2), vdupq_n_f64(c1));
  p = vaddq_f64(vmulq_f64(p, r2), vdupq_n_f64(c2));
  p = vaddq_f64(vmulq_f64(p, r2), vdupq_n_f64(c3));
  p = vaddq_f64(vmulq_f64(p, r2), vdupq_n_f64(c4));
  p = vaddq_f64(vmulq_f64(p, r2), vdupq_n_f64(c5));
  return p;
}

inline SinCos2 sincos_turns(float64x2_t t) {
  using namespace trig_detail;
  const float64x2_t q4 = vmulq_f64(t, vdupq_n_f64(4.0));
  const float64x2_t k = vrndnq_f64(q4);
  const float64x2_t r = vmulq_f64(vsubq_f64(q4, k), vdupq_n_f64(half_pi));
  const float64x2_t r2 = vmulq_f64(r, r);

  const float64x2_t ps = poly6(r2, sin_c0, sin_c1, sin_c2, sin_c3, sin_c4, sin_c5);
  const float64x2_t sr = vaddq_f64(r, vmulq_f64(r, vmulq_f64(r2, ps)));
  const float64x2_t pc = poly6(r2, cos_c0, cos_c1, cos_c2, cos_c3, cos_c4, cos_c5);
  const float64x2_t cr = vaddq_f64(vsubq_f64(vdupq_n_f64(1.0), vmulq_f64(vdupq_n_f64(0.5), r2)),
                                   vmulq_f64(vmulq_f64(r2, r2), pc));

  const float64x2_t quad =
      vsubq_f64(k, vmulq_f64(vdupq_n_f64(4.0), vrndmq_f64(vmulq_f64(k, vdupq_n_f64(0.25)))));
  const float64x2_t neg_sr = vnegq_f64(sr);
  const float64x2_t neg_cr = vnegq_f64(cr);
  const uint64x2_t is1 = vceqq_f64(quad, vdupq_n_f64(1.0));
  const uint64x2_t is2 = vceqq_f64(quad, vdupq_n_f64(2.0));
  const uint64x2_t is3 = vceqq_f64(quad, vdupq_n_f64(3.0));

  float64x2_t s = sr;
  s = vbslq_f64(is1, cr, s);
  s = vbslq_f64(is2, neg_sr, s);
  s = vbslq_f64(is3, neg_cr, s);
  float64x2_t c = cr;
  c = vbslq_f64(is1, neg_sr, c);
  c = vbslq_f64(is2, neg_cr, c);
  c = vbslq_f64(is3, sr, c);
  return {s, c};
}

inline void step2(float64x2_t w, float64x2_t lambda, float64x2_t eps, float64x2_t& theta,
                  float64x2_t& x, float64x2_t& y) {
  SinCos2 u = sincos_turns(theta);
  x = vaddq_f64(vmulq_f64(lambda, x), vmulq_f64(eps, u.c));
  y = vaddq_f64(vmulq_f64(lambda, y), vmulq_f64(eps, u.s));
  float64x2_t t = vmulq_f64(w, theta);
  theta = vsubq_f64(t, vrndmq_f64(t));
}

}  // namespace

void iterate(const MapCoefficients& map, PointBlock pts, std::size_t depth) {
  const std::size_t n = pts.size();
  const float64x2_t w = vdupq_n_f64(map.w);
  const float64x2_t lambda = vdupq_n_f64(map.lambda);
  const float64x2_t eps = vdupq_n_f64(map.eps);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t theta = vld1q_f64(&pts.theta[i]);
    float64x2_t x = vld1q_f64(&pts.x[i]);
    float64x2_t y = vld1q_f64(&pts.y[i]);
    for (std::size_t d = 0; d < depth; ++d) step2(w, lambda, eps, theta, x, y);
    vst1q_f64(&pts.theta[i], theta);
    vst1q_f64(&pts.x[i], x);
    vst1q_f64(&pts.y[i], y);
  }
  if (i < n) {
    double bt[2] = {pts.theta[i], 0.0};
    double bx[2] = {pts.x[i], 0.0};
    double by[2] = {pts.y[i], 0.0};
    float64x2_t theta = vld1q_f64(bt);
    float64x2_t x = vld1q_f64(bx);
    float64x2_t y = vld1q_f64(by);
    for (std::size_t d = 0; d < depth; ++d) step2(w, lambda, eps, theta, x, y);
    pts.theta[i] = vgetq_lane_f64(theta, 0);
    pts.x[i] = vgetq_lane_f64(x, 0);
    pts.y[i] = vgetq_lane_f64(y, 0);
  }
}

void box_keys(const BoxGrid& grid, ConstPointBlock pts, std::span<std::uint64_t> keys) {
  const double theta_bins = static_cast<double>(grid.theta_bins);
  const float64x2_t tb = vdupq_n_f64(theta_bins);
  const float64x2_t inv_side = vdupq_n_f64(1.0 / grid.side);
  const float64x2_t one = vdupq_n_f64(1.0);
  const std::size_t n = pts.size();
  double ft[2];
  double fx[2];
  double fy[2];
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(ft, vrndmq_f64(vmulq_f64(vld1q_f64(&pts.theta[i]), tb)));
    vst1q_f64(fx, vrndmq_f64(vmulq_f64(vaddq_f64(vld1q_f64(&pts.x[i]), one), inv_side)));
    vst1q_f64(fy, vrndmq_f64(vmulq_f64(vaddq_f64(vld1q_f64(&pts.y[i]), one), inv_side)));
    for (int l = 0; l < 2; ++l) {
      std::uint64_t it = ft[l] >= theta_bins ? 0 : clamp_cell(ft[l], grid.theta_bins);
      std::uint64_t ix = clamp_cell(fx[l], grid.fiber_bins);
      std::uint64_t iy = clamp_cell(fy[l], grid.fiber_bins);
      keys[i + l] = (it * grid.fiber_bins + ix) * grid.fiber_bins + iy;
    }
  }
  if (i < n) {
    scalar::box_keys(grid, {pts.theta.subspan(i), pts.x.subspan(i), pts.y.subspan(i)},
                     keys.subspan(i));
  }
}

}  // namespace solenoid_lab::kernels::neon

#endif  // __aarch64__
