#include <algorithm>
#include <cmath>

#include "cohlb/kernels.hpp"

namespace cohlb::detail {
namespace {

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double min(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double exp_shift_sum(const double* values, double shift, double temperature, double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(-temperature * (values[i] - shift));
    s += w[i];
  }
  return s;
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

const SoftminKernels scalar_kernel_table{"scalar", &axpy, &min, &exp_shift_sum, &dot};

}  // namespace cohlb::detail
