#include "cohlb/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cohlb {

double MeasureDescriptor::operator()(const QuantumState& state) const {
  if (const auto* psi = std::get_if<PureState>(&state)) return evaluate_pure(*psi);
  if (!has_mixed())
    throw std::invalid_argument("measure '" + name + "' is a convex roof and is only evaluated on pure states");
  return evaluate_mixed(std::get<DensityMatrix>(state));
}

double l1_coherence(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j) s += std::abs(m(i, j));
  return s;
}

double l1_coherence_pure(const PureState& psi) {
  // (sum_i |psi_i|)^2 - sum_i |psi_i|^2
  double s1 = 0.0, s2 = 0.0;
  for (const auto& z : psi.amplitudes()) {
    const double a = std::abs(z);
    s1 += a;
    s2 += a * a;
  }
  return std::max(0.0, s1 * s1 - s2);
}

double geometric_coherence_pure(const PureState& psi) {
  double best = 0.0;
  for (const auto& z : psi.amplitudes()) best = std::max(best, std::norm(z));
  return std::max(0.0, 1.0 - best);
}

namespace {

double entropy_bits(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

}  // namespace

double relative_entropy_coherence(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  std::vector<double> diag(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) diag[i] = std::max(0.0, m(i, i).real());
  auto spectrum = hermitian_eigen(m).values;
  for (auto& x : spectrum) x = std::max(0.0, x);
  return std::max(0.0, entropy_bits(diag) - entropy_bits(spectrum));
}

double relative_entropy_coherence_pure(const PureState& psi) {
  std::vector<double> probs;
  probs.reserve(psi.dim());
  for (const auto& z : psi.amplitudes()) probs.push_back(std::norm(z));
  return entropy_bits(probs);
}

MeasureDescriptor l1_measure() {
  return {"l1", false, [](const DensityMatrix& r) { return l1_coherence(r); },
          [](const PureState& p) { return l1_coherence_pure(p); }};
}

MeasureDescriptor geometric_measure() {
  return {"geometric", true, {}, [](const PureState& p) { return geometric_coherence_pure(p); }};
}

MeasureDescriptor relative_entropy_measure() {
  return {"relative_entropy", false, [](const DensityMatrix& r) { return relative_entropy_coherence(r); },
          [](const PureState& p) { return relative_entropy_coherence_pure(p); }};
}

std::optional<MeasureDescriptor> measure_by_name(const std::string& name) {
  if (name == "l1") return l1_measure();
  if (name == "geometric") return geometric_measure();
  if (name == "relative_entropy") return relative_entropy_measure();
  return std::nullopt;
}

std::vector<std::string> measure_names() { return {"l1", "geometric", "relative_entropy"}; }

}  // namespace cohlb
