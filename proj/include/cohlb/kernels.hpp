#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace cohlb {

/// Inner loops of the soft-min evaluation over a sample set. Every variant
/// reduces in a fixed order, so a given variant is bit-reproducible; variants
/// agree with the scalar reference to rounding (see tests/test_kernels.cpp).
struct SoftminKernels {
  std::string_view name;
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// min_i x_i, n >= 1
  double (*min)(const double* x, std::size_t n);
  /// w_i = exp(-temperature * (values_i - shift)); returns sum_i w_i.
  /// Requires values_i >= shift. Vector variants may flush weights below
  /// the normal range (about 1e-308) to zero.
  double (*exp_shift_sum)(const double* values, double shift, double temperature, double* w, std::size_t n);
  /// sum_i x_i y_i
  double (*dot)(const double* x, const double* y, std::size_t n);
};

const SoftminKernels& scalar_kernels() noexcept;
/// nullptr when the build or the running CPU lacks AVX2+FMA.
const SoftminKernels* avx2_kernels() noexcept;
/// Best variant available on this CPU.
const SoftminKernels& default_kernels() noexcept;
/// "auto", "scalar" or "avx2". Throws std::invalid_argument for unknown or
/// unavailable variants.
const SoftminKernels& kernels_by_name(std::string_view name);
/// Names of every variant usable on this CPU.
std::vector<std::string_view> available_kernels();

namespace detail {
extern const SoftminKernels scalar_kernel_table;
#if defined(COHLB_HAVE_AVX2_TU)
extern const SoftminKernels avx2_kernel_table;
#endif
}  // namespace detail

}  // namespace cohlb
