#include "simd_kernels_impl.hpp"

#if EVAC_HAVE_NEON

#include <arm_neon.h>

// NEON variants, two lanes of double, mirroring the AVX2 kernels.

namespace evac::kernels::detail {

void axpy_neon(double* rho, const double* w, double amp, std::size_t n) {
  const float64x2_t vamp = vdupq_n_f64(amp);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t ww = vld1q_f64(w + i);
    const float64x2_t rr = vld1q_f64(rho + i);
    const float64x2_t contrib = vmulq_f64(vamp, ww);
    vst1q_f64(rho + i, vaddq_f64(rr, contrib));
  }
  if (i < n) axpy_scalar(rho + i, w + i, amp, n - i);
}

void throttle_neon(double* v, const double* rho, std::size_t n, double v_max, double inv_rho_cap,
                   double v_min_frac) {
  const float64x2_t ones = vdupq_n_f64(1.0);
  const float64x2_t vinv = vdupq_n_f64(inv_rho_cap);
  const float64x2_t vmin = vdupq_n_f64(v_min_frac);
  const float64x2_t vmax = vdupq_n_f64(v_max);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t rr = vld1q_f64(rho + i);
    float64x2_t factor = vsubq_f64(ones, vmulq_f64(rr, vinv));
    factor = vminq_f64(factor, ones);
    factor = vmaxq_f64(factor, vmin);
    vst1q_f64(v + i, vmulq_f64(vmax, factor));
  }
  if (i < n) throttle_scalar(v + i, rho + i, n - i, v_max, inv_rho_cap, v_min_frac);
}

}  // namespace evac::kernels::detail

#endif  // EVAC_HAVE_NEON
