#include "cohlb/kernels.hpp"

#include <stdexcept>
#include <string>

namespace cohlb {

const SoftminKernels& scalar_kernels() noexcept { return detail::scalar_kernel_table; }

const SoftminKernels* avx2_kernels() noexcept {
#if defined(COHLB_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_kernel_table : nullptr;
#else
  return nullptr;
#endif
}

const SoftminKernels& default_kernels() noexcept {
  if (const auto* k = avx2_kernels()) return *k;
  return scalar_kernels();
}

const SoftminKernels& kernels_by_name(std::string_view name) {
  if (name == "auto") return default_kernels();
  if (name == "scalar") return scalar_kernels();
  if (name == "avx2") {
    if (const auto* k = avx2_kernels()) return *k;
    throw std::invalid_argument("kernel variant 'avx2' is not available on this CPU");
  }
  throw std::invalid_argument("unknown kernel variant '" + std::string(name) + "'");
}

std::vector<std::string_view> available_kernels() {
  std::vector<std::string_view> out{"scalar"};
  if (avx2_kernels()) out.push_back("avx2");
  return out;
}

}  // namespace cohlb
