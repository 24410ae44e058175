#include <algorithm>

#include "simd_kernels_impl.hpp"

// Reference kernels. The separate mul/add statements pin one rounding per
// operation; the build disables FP contraction so the compiler cannot fuse
// them, which keeps these bit-identical to the SIMD variants.

namespace evac::kernels::detail {

void axpy_scalar(double* rho, const double* w, double amp, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double contrib = amp * w[i];
    rho[i] += contrib;
  }
}

void throttle_scalar(double* v, const double* rho, std::size_t n, double v_max,
                     double inv_rho_cap, double v_min_frac) {
  for (std::size_t i = 0; i < n; ++i) {
    double factor = 1.0 - rho[i] * inv_rho_cap;
    factor = std::min(factor, 1.0);
    factor = std::max(factor, v_min_frac);
    v[i] = v_max * factor;
  }
}

}  // namespace evac::kernels::detail
