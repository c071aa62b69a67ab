#pragma once

#include <cstddef>
#include <vector>

#include "cohlb/linalg.hpp"
#include "cohlb/measures.hpp"
#include "cohlb/tolerances.hpp"

namespace cohlb {

/// lower <= Tr(rho O) <= upper. Equalities use lower == upper.
struct IntervalConstraint {
  HermitianOperator op;
  double lower;
  double upper;
};

class ConstraintSet {
 public:
  /// Throws DimensionError / std::invalid_argument on an empty list, mixed
  /// dimensions, non-finite bounds or lower > upper.
  ConstraintSet(std::size_t dim, std::vector<IntervalConstraint> items);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return items_.size(); }
  const IntervalConstraint& operator[](std::size_t k) const noexcept { return items_[k]; }
  const std::vector<IntervalConstraint>& items() const noexcept { return items_; }

  /// true when every operator has purely real entries
  bool all_real() const noexcept;

 private:
  std::size_t dim_;
  std::vector<IntervalConstraint> items_;
};

/// Nonnegative Lagrange multipliers, one pair per constraint.
class Multipliers {
 public:
  explicit Multipliers(std::size_t n) : mu_(n, 0.0), nu_(n, 0.0) {}
  Multipliers(std::vector<double> mu, std::vector<double> nu);

  std::size_t size() const noexcept { return mu_.size(); }
  const std::vector<double>& mu() const noexcept { return mu_; }
  const std::vector<double>& nu() const noexcept { return nu_; }

  /// Packed as [mu_0..mu_{n-1}, nu_0..nu_{n-1}].
  std::vector<double> packed() const;
  static Multipliers from_packed(std::span<const double> packed);

  friend bool operator==(const Multipliers&, const Multipliers&) = default;

 private:
  std::vector<double> mu_;
  std::vector<double> nu_;
};

struct PenaltyTerms {
  std::vector<double> lower_slack;  ///< a_k - Tr(rho O_k)
  std::vector<double> upper_slack;  ///< Tr(rho O_k) - b_k
};

PenaltyTerms penalty_terms(const QuantumState& state, const ConstraintSet& cs);

/// C(state) + sum_k mu_k (a_k - Tr) + nu_k (Tr - b_k).
/// A convex-roof measure requires a pure state.
double lagrangian(const QuantumState& state, const Multipliers& m, const ConstraintSet& cs,
                  const MeasureDescriptor& measure);

bool is_feasible(const QuantumState& state, const ConstraintSet& cs, double tol = Tolerances::feasibility);

}  // namespace cohlb
