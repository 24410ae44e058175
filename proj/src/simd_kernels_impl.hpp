#pragma once

#include <cstddef>

// Internal declarations shared by the kernel translation units and the
// runtime dispatcher. Not part of the public interface.
namespace evac::kernels::detail {

void axpy_scalar(double* rho, const double* w, double amp, std::size_t n);
void throttle_scalar(double* v, const double* rho, std::size_t n, double v_max,
                     double inv_rho_cap, double v_min_frac);

#if EVAC_HAVE_AVX2
void axpy_avx2(double* rho, const double* w, double amp, std::size_t n);
void throttle_avx2(double* v, const double* rho, std::size_t n, double v_max, double inv_rho_cap,
                   double v_min_frac);
#endif

#if EVAC_HAVE_NEON
void axpy_neon(double* rho, const double* w, double amp, std::size_t n);
void throttle_neon(double* v, const double* rho, std::size_t n, double v_max, double inv_rho_cap,
                   double v_min_frac);
#endif

}  // namespace evac::kernels::detail
