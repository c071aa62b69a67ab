#include "cohlb/sampler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cohlb {

std::string_view to_string(SampleMode m) noexcept { return m == SampleMode::mixed ? "mixed" : "pure"; }
std::string_view to_string(SampleField f) noexcept { return f == SampleField::complex ? "complex" : "real"; }

double GaussianStream::uniform_open() {
  // 53 random bits mapped to (0, 1]
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (spare_) {
    const double s = *spare_;
    spare_.reset();
    return s;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  return r * std::cos(theta);
}

namespace {

Complex draw(GaussianStream& g, SampleField field) {
  const double re = g.next();
  if (field == SampleField::real) return re;
  return {re, g.next()};
}

}  // namespace

DensityMatrix random_density(GaussianStream& g, std::size_t dim, SampleField field, std::size_t rank) {
  if (dim == 0) throw DimensionError("random_density: dimension must be positive");
  if (rank == 0) rank = dim;
  std::vector<Complex> gm(dim * rank);
  for (auto& z : gm) z = draw(g, field);
  ComplexMatrix rho(dim);
  double tr = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < rank; ++k) s += gm[i * rank + k] * std::conj(gm[j * rank + k]);
      rho(i, j) = s;
      rho(j, i) = std::conj(s);
    }
    rho(i, i) = rho(i, i).real();
    tr += rho(i, i).real();
  }
  rho *= 1.0 / tr;
  return DensityMatrix(std::move(rho));
}

PureState random_pure(GaussianStream& g, std::size_t dim, SampleField field) {
  if (dim == 0) throw DimensionError("random_pure: dimension must be positive");
  std::vector<Complex> v(dim);
  for (auto& z : v) z = draw(g, field);
  return PureState::normalized(std::move(v));
}

void SampleSet::grow(std::size_t count) {
  states_.reserve(states_.size() + count);
  for (std::size_t i = 0; i < count; ++i) {
    if (mode_ == SampleMode::mixed)
      states_.emplace_back(random_density(stream_, dim_, field_));
    else
      states_.emplace_back(random_pure(stream_, dim_, field_));
  }
}

SampleSet SampleSet::from_states(std::vector<QuantumState> states, std::uint64_t seed) {
  if (states.empty()) throw std::invalid_argument("SampleSet::from_states: no states");
  const bool pure = std::holds_alternative<PureState>(states.front());
  const std::size_t dim = state_dim(states.front());
  for (const auto& s : states) {
    if (std::holds_alternative<PureState>(s) != pure)
      throw std::invalid_argument("SampleSet::from_states: mixed and pure states cannot share a set");
    if (state_dim(s) != dim) throw DimensionError("SampleSet::from_states: states differ in dimension");
  }
  SampleSet out(pure ? SampleMode::pure : SampleMode::mixed, SampleField::complex, dim, seed);
  out.states_ = std::move(states);
  return out;
}

SampleSet sample_mixed(std::size_t count, std::size_t dim, std::uint64_t seed, SampleField field) {
  if (count == 0) throw std::invalid_argument("sample_mixed: count must be at least 1");
  if (dim == 0) throw DimensionError("sample_mixed: dimension must be positive");
  SampleSet s(SampleMode::mixed, field, dim, seed);
  s.grow(count);
  return s;
}

SampleSet sample_pure(std::size_t count, std::size_t dim, std::uint64_t seed, SampleField field) {
  if (count == 0) throw std::invalid_argument("sample_pure: count must be at least 1");
  if (dim == 0) throw DimensionError("sample_pure: dimension must be positive");
  SampleSet s(SampleMode::pure, field, dim, seed);
  s.grow(count);
  return s;
}

SampleSet enlarge(const SampleSet& s, std::size_t additional) {
  if (additional == 0) throw std::invalid_argument("enlarge: additional must be at least 1");
  SampleSet out = s;
  out.grow(additional);
  return out;
}

}  // namespace cohlb
