#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace cohlb {

using Complex = std::complex<double>;

/// Raised when two operands disagree on the Hilbert-space dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix or vector violates the invariants of the type it is
/// being promoted to (Hermiticity, unit trace, positivity, unit norm).
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix outer(std::span<const Complex> ket);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }
  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const noexcept;
  double max_abs() const noexcept;
  bool is_finite() const noexcept;
  /// true when every entry has zero imaginary part
  bool is_real() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex s) { return lhs *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix rhs) { return rhs *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Observable. Hermiticity is checked on construction.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m);

  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  friend bool operator==(const HermitianOperator&, const HermitianOperator&) = default;

 private:
  ComplexMatrix m_;
};

bool is_hermitian(const ComplexMatrix& m);

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and the smallest eigenvalue.
  explicit DensityMatrix(ComplexMatrix m);

  /// Skips the spectral check; Hermiticity and trace are still enforced.
  /// For callers whose construction already guarantees positivity
  /// (e.g. G G^dagger / Tr).
  static DensityMatrix from_psd(ComplexMatrix m);

  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Unit vector in C^d.
class PureState {
 public:
  explicit PureState(std::vector<Complex> amplitudes);
  /// Normalizes first; throws if the input norm is zero or not finite.
  static PureState normalized(std::vector<Complex> amplitudes);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amp_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amp_; }
  const Complex& operator[](std::size_t i) const noexcept { return amp_[i]; }
  DensityMatrix projector() const;
  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  std::vector<Complex> amp_;
};

using QuantumState = std::variant<DensityMatrix, PureState>;

std::size_t state_dim(const QuantumState& s) noexcept;

/// Re Tr(rho O).
double trace_inner_product(const DensityMatrix& rho, const HermitianOperator& op);
/// <psi|O|psi>.
double expectation_pure(const PureState& psi, const HermitianOperator& op);
/// Dispatches on the state kind.
double expectation(const QuantumState& state, const HermitianOperator& op);

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  ComplexMatrix vectors;       ///< column j is the eigenvector of values[j]
};

/// Cyclic complex Jacobi. Throws InvariantError on non-Hermitian input.
EigenDecomposition hermitian_eigen(const HermitianOperator& op);
/// Same, but for a matrix already known to be Hermitian up to rounding.
EigenDecomposition hermitian_eigen(const ComplexMatrix& m);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

}  // namespace cohlb
