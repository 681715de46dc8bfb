// AVX2 is enabled per function, not per translation unit, so inline code
// pulled in from shared headers is never emitted with AVX encodings. Only
// reached after a runtime CPU check.

#include <immintrin.h>

#include "solenoid_lab/kernels.hpp"
#include "solenoid_lab/turn_trig.hpp"

namespace solenoid_lab::kernels::avx2 {

namespace {

#define SOLENOID_AVX2 __attribute__((target("avx2")))

struct SinCos4 {
  __m256d s;
  __m256d c;
};

SOLENOID_AVX2 inline __m256d poly6(__m256d r2, double c0, double c1, double c2, double c3, double c4,
                     double c5) {
  __m256d p = _mm256_set1_pd(c0);
  p = _mm256_add_pd(_mm256_mul_pd(p, r2), _mm256_set1_pd(c1));
  p = _mm256_add_pd(_mm256_mul_pd(p, r2), _mm256_set1_pd(c2));
  p = _mm256_add_pd(_mm256_mul_pd(p, r2), _mm256_set1_pd(c3));
  p = _mm256_add_pd(_mm256_mul_pd(p, r2), _mm256_set1_pd(c4));
  p = _mm256_add_pd(_mm256_mul_pd(p, r2), _mm256_set1_pd(c5));
  return p;
}

SOLENOID_AVX2 inline SinCos4 sincos_turns(__m256d t) {
  using namespace trig_detail;
  const __m256d q4 = _mm256_mul_pd(t, _mm256_set1_pd(4.0));
  const __m256d k = _mm256_round_pd(q4, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d r = _mm256_mul_pd(_mm256_sub_pd(q4, k), _mm256_set1_pd(half_pi));
  const __m256d r2 = _mm256_mul_pd(r, r);

  __m256d ps = poly6(r2, sin_c0, sin_c1, sin_c2, sin_c3, sin_c4, sin_c5);
  const __m256d sr = _mm256_add_pd(r, _mm256_mul_pd(r, _mm256_mul_pd(r2, ps)));
  __m256d pc = poly6(r2, cos_c0, cos_c1, cos_c2, cos_c3, cos_c4, cos_c5);
  const __m256d cr = _mm256_add_pd(
      _mm256_sub_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(_mm256_set1_pd(0.5), r2)),
      _mm256_mul_pd(_mm256_mul_pd(r2, r2), pc));

  const __m256d quad = _mm256_sub_pd(
      k, _mm256_mul_pd(_mm256_set1_pd(4.0), _mm256_floor_pd(_mm256_mul_pd(k, _mm256_set1_pd(0.25)))));
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d neg_sr = _mm256_xor_pd(sr, sign);
  const __m256d neg_cr = _mm256_xor_pd(cr, sign);
  const __m256d is1 = _mm256_cmp_pd(quad, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
  const __m256d is2 = _mm256_cmp_pd(quad, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
  const __m256d is3 = _mm256_cmp_pd(quad, _mm256_set1_pd(3.0), _CMP_EQ_OQ);

  __m256d s = sr;
  s = _mm256_blendv_pd(s, cr, is1);
  s = _mm256_blendv_pd(s, neg_sr, is2);
  s = _mm256_blendv_pd(s, neg_cr, is3);
  __m256d c = cr;
  c = _mm256_blendv_pd(c, neg_sr, is1);
  c = _mm256_blendv_pd(c, neg_cr, is2);
  c = _mm256_blendv_pd(c, sr, is3);
  return {s, c};
}

SOLENOID_AVX2 inline void step4(__m256d w, __m256d lambda, __m256d eps, __m256d& theta, __m256d& x,
                  __m256d& y) {
  SinCos4 u = sincos_turns(theta);
  x = _mm256_add_pd(_mm256_mul_pd(lambda, x), _mm256_mul_pd(eps, u.c));
  y = _mm256_add_pd(_mm256_mul_pd(lambda, y), _mm256_mul_pd(eps, u.s));
  __m256d t = _mm256_mul_pd(w, theta);
  theta = _mm256_sub_pd(t, _mm256_floor_pd(t));
}

inline std::uint64_t cell_index(double cell, std::uint64_t bins) {
  if (cell < 0.0) return 0;
  auto i = static_cast<std::uint64_t>(cell);
  return i >= bins ? bins - 1 : i;
}

}  // namespace

SOLENOID_AVX2 void iterate(const MapCoefficients& map, PointBlock pts, std::size_t depth) {
  const std::size_t n = pts.size();
  const __m256d w = _mm256_set1_pd(map.w);
  const __m256d lambda = _mm256_set1_pd(map.lambda);
  const __m256d eps = _mm256_set1_pd(map.eps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d theta = _mm256_loadu_pd(&pts.theta[i]);
    __m256d x = _mm256_loadu_pd(&pts.x[i]);
    __m256d y = _mm256_loadu_pd(&pts.y[i]);
    for (std::size_t d = 0; d < depth; ++d) step4(w, lambda, eps, theta, x, y);
    _mm256_storeu_pd(&pts.theta[i], theta);
    _mm256_storeu_pd(&pts.x[i], x);
    _mm256_storeu_pd(&pts.y[i], y);
  }
  if (i < n) {
    // tail: pad to a full vector; padding lanes are discarded
    alignas(32) double bt[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double bx[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double by[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t rest = n - i;
    for (std::size_t l = 0; l < rest; ++l) {
      bt[l] = pts.theta[i + l];
      bx[l] = pts.x[i + l];
      by[l] = pts.y[i + l];
    }
    __m256d theta = _mm256_load_pd(bt);
    __m256d x = _mm256_load_pd(bx);
    __m256d y = _mm256_load_pd(by);
    for (std::size_t d = 0; d < depth; ++d) step4(w, lambda, eps, theta, x, y);
    _mm256_store_pd(bt, theta);
    _mm256_store_pd(bx, x);
    _mm256_store_pd(by, y);
    for (std::size_t l = 0; l < rest; ++l) {
      pts.theta[i + l] = bt[l];
      pts.x[i + l] = bx[l];
      pts.y[i + l] = by[l];
    }
  }
}

SOLENOID_AVX2 void box_keys(const BoxGrid& grid, ConstPointBlock pts, std::span<std::uint64_t> keys) {
  const double theta_bins = static_cast<double>(grid.theta_bins);
  const double inv_side_s = 1.0 / grid.side;
  const __m256d tb = _mm256_set1_pd(theta_bins);
  const __m256d inv_side = _mm256_set1_pd(inv_side_s);
  const __m256d one = _mm256_set1_pd(1.0);
  const std::size_t n = pts.size();
  alignas(32) double ft[4];
  alignas(32) double fx[4];
  alignas(32) double fy[4];
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_store_pd(ft, _mm256_floor_pd(_mm256_mul_pd(_mm256_loadu_pd(&pts.theta[i]), tb)));
    _mm256_store_pd(
        fx, _mm256_floor_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_loadu_pd(&pts.x[i]), one), inv_side)));
    _mm256_store_pd(
        fy, _mm256_floor_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_loadu_pd(&pts.y[i]), one), inv_side)));
    for (int l = 0; l < 4; ++l) {
      std::uint64_t it = ft[l] >= theta_bins ? 0 : cell_index(ft[l], grid.theta_bins);
      std::uint64_t ix = cell_index(fx[l], grid.fiber_bins);
      std::uint64_t iy = cell_index(fy[l], grid.fiber_bins);
      keys[i + l] = (it * grid.fiber_bins + ix) * grid.fiber_bins + iy;
    }
  }
  if (i < n) {
    scalar::box_keys(grid,
                     {pts.theta.subspan(i), pts.x.subspan(i), pts.y.subspan(i)},
                     keys.subspan(i));
  }
}

}  // namespace solenoid_lab::kernels::avx2
