#pragma once

namespace cohlb {

/// Numerical thresholds shared by every module. Invariant checks compare
/// against these values verbatim.
struct Tolerances {
  /// max|O - O^dagger| <= hermitian_rel * (1 + max|O|)
  static constexpr double hermitian_rel = 1e-10;
  /// |Tr(rho) - 1|
  static constexpr double density_trace = 1e-10;
  /// smallest admissible eigenvalue of a density matrix
  static constexpr double density_min_eigenvalue = -1e-10;
  /// | ||psi|| - 1 |
  static constexpr double pure_norm = 1e-12;
  /// imaginary part of Tr(rho O)
  static constexpr double trace_imag = 1e-10;
  /// default slack used by is_feasible
  static constexpr double feasibility = 1e-9;
  /// any multiplier above this aborts the ascent as unbounded
  static constexpr double divergence_threshold = 1e8;
  /// Jacobi stops once the off-diagonal Frobenius norm is below this
  /// fraction of the full Frobenius norm
  static constexpr double jacobi_rel = 1e-15;
  static constexpr int jacobi_max_sweeps = 100;
};

}  // namespace cohlb
