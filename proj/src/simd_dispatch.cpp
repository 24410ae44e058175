#include "evac/simd_kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "simd_kernels_impl.hpp"

namespace evac::kernels {

namespace {

bool avx2_available() {
#if EVAC_HAVE_AVX2
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

bool neon_available() {
#if EVAC_HAVE_NEON
  // NEON is mandatory on AArch64, no runtime probe needed.
  return true;
#else
  return false;
#endif
}

KernelSet make_set(SimdLevel level) {
  KernelSet set{};
  set.level = level;
  switch (level) {
    case SimdLevel::scalar:
      set.axpy = detail::axpy_scalar;
      set.throttle = detail::throttle_scalar;
      break;
    case SimdLevel::avx2:
#if EVAC_HAVE_AVX2
      set.axpy = detail::axpy_avx2;
      set.throttle = detail::throttle_avx2;
      break;
#else
      throw std::runtime_error("avx2 kernels not compiled in");
#endif
    case SimdLevel::neon:
#if EVAC_HAVE_NEON
      set.axpy = detail::axpy_neon;
      set.throttle = detail::throttle_neon;
      break;
#else
      throw std::runtime_error("neon kernels not compiled in");
#endif
  }
  return set;
}

SimdLevel resolve_default() {
  if (const char* env = std::getenv("EVAC_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return SimdLevel::scalar;
    if (want == "avx2" && level_supported(SimdLevel::avx2)) return SimdLevel::avx2;
    if (want == "neon" && level_supported(SimdLevel::neon)) return SimdLevel::neon;
    // Unknown or unsupported request falls through to auto-detection.
  }
  return best_supported_level();
}

}  // namespace

SimdLevel best_supported_level() {
  if (avx2_available()) return SimdLevel::avx2;
  if (neon_available()) return SimdLevel::neon;
  return SimdLevel::scalar;
}

bool level_supported(SimdLevel level) {
  switch (level) {
    case SimdLevel::scalar: return true;
    case SimdLevel::avx2: return avx2_available();
    case SimdLevel::neon: return neon_available();
  }
  return false;
}

std::string_view level_name(SimdLevel level) {
  switch (level) {
    case SimdLevel::scalar: return "scalar";
    case SimdLevel::avx2: return "avx2";
    case SimdLevel::neon: return "neon";
  }
  return "?";
}

const KernelSet& kernels_for(SimdLevel level) {
  if (!level_supported(level)) {
    throw std::invalid_argument("simd level not supported on this host: " +
                                std::string(level_name(level)));
  }
  switch (level) {
    case SimdLevel::scalar: {
      static const KernelSet set = make_set(SimdLevel::scalar);
      return set;
    }
    case SimdLevel::avx2: {
      static const KernelSet set = make_set(SimdLevel::avx2);
      return set;
    }
    case SimdLevel::neon: {
      static const KernelSet set = make_set(SimdLevel::neon);
      return set;
    }
  }
  throw std::invalid_argument("unknown simd level");
}

const KernelSet& kernels() {
  static const KernelSet active = make_set(resolve_default());
  return active;
}

}  // namespace evac::kernels
