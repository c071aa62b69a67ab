#include "cohlb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cohlb/tolerances.hpp"

namespace cohlb {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw DimensionError("matrix dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw DimensionError("matrix dimension must be positive");
  if (data_.size() != dim * dim) {
    throw DimensionError("expected " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket) {
  ComplexMatrix m(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Complex ComplexMatrix::trace() const noexcept {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

bool ComplexMatrix::is_real() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) { return z.imag() == 0.0; });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionError("matrix sum: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionError("matrix difference: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw DimensionError("matrix product: dimension mismatch");
  const std::size_t d = lhs.dim_;
  ComplexMatrix r(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const Complex a = lhs(i, k);
      for (std::size_t j = 0; j < d; ++j) r(i, j) += a * rhs(k, j);
    }
  return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

bool is_hermitian(const ComplexMatrix& m) {
  if (!m.is_finite()) return false;
  double asym = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j) asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
  return asym <= Tolerances::hermitian_rel * (1.0 + m.max_abs());
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.dim() == 0) throw DimensionError("operator dimension must be positive");
  if (!is_hermitian(m_)) throw InvariantError("operator is not Hermitian");
}

namespace {

void check_density_basics(const ComplexMatrix& m) {
  if (m.dim() == 0) throw DimensionError("density matrix dimension must be positive");
  if (!is_hermitian(m)) throw InvariantError("density matrix is not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > Tolerances::density_trace)
    throw InvariantError("density matrix trace differs from 1");
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  check_density_basics(m_);
  const auto eig = hermitian_eigen(m_);
  if (eig.values.front() < Tolerances::density_min_eigenvalue)
    throw InvariantError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_psd(ComplexMatrix m) {
  check_density_basics(m);
  return DensityMatrix(std::move(m), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  auto m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityMatrix(std::move(m), Unchecked{});
}

namespace {

double norm2(std::span<const Complex> v) {
  return std::accumulate(v.begin(), v.end(), 0.0, [](double acc, const Complex& z) { return acc + std::norm(z); });
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.empty()) throw DimensionError("pure state dimension must be positive");
  if (std::abs(std::sqrt(norm2(amp_)) - 1.0) > Tolerances::pure_norm)
    throw InvariantError("pure state is not normalized");
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  const double n = std::sqrt(norm2(amplitudes));
  if (!(n > 0.0) || !std::isfinite(n)) throw InvariantError("cannot normalize a zero or non-finite vector");
  for (auto& z : amplitudes) z /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  std::vector<Complex> v(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

DensityMatrix PureState::projector() const { return DensityMatrix::from_psd(ComplexMatrix::outer(amp_)); }

std::size_t state_dim(const QuantumState& s) noexcept {
  return std::visit([](const auto& st) { return st.dim(); }, s);
}

double trace_inner_product(const DensityMatrix& rho, const HermitianOperator& op) {
  if (rho.dim() != op.dim()) throw DimensionError("trace_inner_product: dimension mismatch");
  const auto& a = rho.matrix();
  const auto& b = op.matrix();
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  if (std::abs(t.imag()) > Tolerances::trace_imag)
    throw InvariantError("Tr(rho O) has a non-negligible imaginary part");
  return t.real();
}

double expectation_pure(const PureState& psi, const HermitianOperator& op) {
  if (psi.dim() != op.dim()) throw DimensionError("expectation_pure: dimension mismatch");
  const auto& m = op.matrix();
  Complex t = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < psi.dim(); ++j) row += m(i, j) * psi[j];
    t += std::conj(psi[i]) * row;
  }
  return t.real();
}

double expectation(const QuantumState& state, const HermitianOperator& op) {
  if (const auto* rho = std::get_if<DensityMatrix>(&state)) return trace_inner_product(*rho, op);
  return expectation_pure(std::get<PureState>(state), op);
}

EigenDecomposition hermitian_eigen(const HermitianOperator& op) { return hermitian_eigen(op.matrix()); }

// Cyclic Jacobi for Hermitian matrices. Each pivot (p, q) is handled in two
// steps: a diagonal phase on column/row q makes a_pq real and non-negative,
// then a real plane rotation annihilates it.
EigenDecomposition hermitian_eigen(const ComplexMatrix& input) {
  if (!is_hermitian(input)) throw InvariantError("hermitian_eigen: input is not Hermitian");
  const std::size_t d = input.dim();
  ComplexMatrix a = input;
  // Symmetrize so that rounding asymmetry does not leak into the result.
  for (std::size_t i = 0; i < d; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(d);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };
  double full = 0.0;
  for (const auto& z : a.data()) full += std::norm(z);
  full = std::sqrt(full);

  for (int sweep = 0; sweep < Tolerances::jacobi_max_sweeps; ++sweep) {
    if (off_norm() <= Tolerances::jacobi_rel * full || full == 0.0) break;
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;

        // a <- D^dagger a D with D_qq = e^{-i phi}, phi = arg(a_pq)
        const Complex phase = std::conj(a(p, q)) / mag;
        for (std::size_t k = 0; k < d; ++k) {
          a(k, q) *= phase;
          a(q, k) *= std::conj(phase);
          v(k, q) *= phase;
        }
        a(q, q) = a(q, q).real();
        a(p, q) = mag;
        a(q, p) = mag;

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t k = 0; k < d; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out{std::vector<double>(d), ComplexMatrix(d)};
  for (std::size_t j = 0; j < d; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < d; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const auto& z : rho.matrix().data()) s += std::norm(z);
  return s;
}

}  // namespace cohlb
