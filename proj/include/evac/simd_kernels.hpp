#pragma once

#include <cstddef>
#include <string_view>

namespace evac::kernels {

// The density rebuild and the per-agent speed throttle are the only
// data-parallel inner loops in the pipeline. Each has a scalar reference
// kernel plus SIMD variants selected at runtime. Every variant performs one
// rounding per multiply and one per add (no FMA), so all backends produce
// bit-identical results; the equivalence tests assert that.

enum class SimdLevel { scalar, avx2, neon };

// rho[i] += amp * w[i]
using AxpyFn = void (*)(double* rho, const double* w, double amp, std::size_t n);

// v[i] = v_max * clamp(1 - rho[i] * inv_rho_cap, v_min_frac, 1)
using ThrottleFn = void (*)(double* v, const double* rho, std::size_t n, double v_max,
                            double inv_rho_cap, double v_min_frac);

struct KernelSet {
  AxpyFn axpy;
  ThrottleFn throttle;
  SimdLevel level;
};

// Best level the running CPU supports.
SimdLevel best_supported_level();
bool level_supported(SimdLevel level);
std::string_view level_name(SimdLevel level);

// Kernels for the detected level. The EVAC_SIMD environment variable
// ("scalar", "avx2", "neon") overrides detection; it is read once.
const KernelSet& kernels();

// Explicit selection, mainly for the equivalence tests. Throws
// std::invalid_argument if the CPU does not support `level`.
const KernelSet& kernels_for(SimdLevel level);

}  // namespace evac::kernels
