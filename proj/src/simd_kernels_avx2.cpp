#include "simd_kernels_impl.hpp"

#if EVAC_HAVE_AVX2

#include <immintrin.h>

// AVX2 variants, four lanes of double. Explicit mul + add (never
// _mm256_fmadd_pd) so each lane matches the scalar kernel bit for bit.

namespace evac::kernels::detail {

void axpy_avx2(double* rho, const double* w, double amp, std::size_t n) {
  const __m256d vamp = _mm256_set1_pd(amp);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ww = _mm256_loadu_pd(w + i);
    const __m256d rr = _mm256_loadu_pd(rho + i);
    const __m256d contrib = _mm256_mul_pd(vamp, ww);
    _mm256_storeu_pd(rho + i, _mm256_add_pd(rr, contrib));
  }
  if (i < n) axpy_scalar(rho + i, w + i, amp, n - i);
}

void throttle_avx2(double* v, const double* rho, std::size_t n, double v_max, double inv_rho_cap,
                   double v_min_frac) {
  const __m256d ones = _mm256_set1_pd(1.0);
  const __m256d vinv = _mm256_set1_pd(inv_rho_cap);
  const __m256d vmin = _mm256_set1_pd(v_min_frac);
  const __m256d vmax = _mm256_set1_pd(v_max);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d rr = _mm256_loadu_pd(rho + i);
    __m256d factor = _mm256_sub_pd(ones, _mm256_mul_pd(rr, vinv));
    factor = _mm256_min_pd(factor, ones);
    factor = _mm256_max_pd(factor, vmin);
    _mm256_storeu_pd(v + i, _mm256_mul_pd(vmax, factor));
  }
  if (i < n) throttle_scalar(v + i, rho + i, n - i, v_max, inv_rho_cap, v_min_frac);
}

}  // namespace evac::kernels::detail

#endif  // EVAC_HAVE_AVX2
