#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cohlb/linalg.hpp"

namespace cohlb {

/// A coherence measure in the computational basis.
///
/// Convex-roof measures are evaluated on pure states only; the estimator then
/// samples pure states. Otherwise `evaluate_mixed` is required and the
/// estimator samples density matrices.
struct MeasureDescriptor {
  std::string name;
  bool is_convex_roof = false;
  std::function<double(const DensityMatrix&)> evaluate_mixed;  // empty for convex roofs
  std::function<double(const PureState&)> evaluate_pure;

  bool has_mixed() const noexcept { return static_cast<bool>(evaluate_mixed); }
  /// Routes to the matching evaluator. Throws std::invalid_argument when a
  /// density matrix is passed to a measure without a mixed-state form.
  double operator()(const QuantumState& state) const;
};

/// sum_{i != j} |rho_ij|
double l1_coherence(const DensityMatrix& rho);
double l1_coherence_pure(const PureState& psi);

/// 1 - max_i |<i|psi>|^2
double geometric_coherence_pure(const PureState& psi);

/// S(diag(rho)) - S(rho), base-2 logarithms.
double relative_entropy_coherence(const DensityMatrix& rho);
double relative_entropy_coherence_pure(const PureState& psi);

MeasureDescriptor l1_measure();
MeasureDescriptor geometric_measure();
MeasureDescriptor relative_entropy_measure();

/// "l1", "geometric" or "relative_entropy"; nullopt otherwise.
std::optional<MeasureDescriptor> measure_by_name(const std::string& name);
std::vector<std::string> measure_names();

}  // namespace cohlb
