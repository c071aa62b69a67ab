#include "cohlb/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cohlb {

ConstraintSet::ConstraintSet(std::size_t dim, std::vector<IntervalConstraint> items)
    : dim_(dim), items_(std::move(items)) {
  if (dim_ == 0) throw DimensionError("constraint set dimension must be positive");
  if (items_.empty()) throw std::invalid_argument("constraint set must contain at least one constraint");
  for (std::size_t k = 0; k < items_.size(); ++k) {
    const auto& c = items_[k];
    const std::string where = "constraint " + std::to_string(k + 1);
    if (c.op.dim() != dim_) throw DimensionError(where + ": operator dimension differs from " + std::to_string(dim_));
    if (!std::isfinite(c.lower) || !std::isfinite(c.upper))
      throw std::invalid_argument(where + ": bounds must be finite");
    if (c.lower > c.upper) throw std::invalid_argument(where + ": lower bound exceeds upper bound");
  }
}

bool ConstraintSet::all_real() const noexcept {
  return std::all_of(items_.begin(), items_.end(), [](const auto& c) { return c.op.matrix().is_real(); });
}

Multipliers::Multipliers(std::vector<double> mu, std::vector<double> nu) : mu_(std::move(mu)), nu_(std::move(nu)) {
  if (mu_.size() != nu_.size()) throw DimensionError("mu and nu must have the same length");
  auto bad = [](double x) { return !(x >= 0.0) || !std::isfinite(x); };
  if (std::any_of(mu_.begin(), mu_.end(), bad) || std::any_of(nu_.begin(), nu_.end(), bad))
    throw std::invalid_argument("multipliers must be finite and nonnegative");
}

std::vector<double> Multipliers::packed() const {
  std::vector<double> p(mu_);
  p.insert(p.end(), nu_.begin(), nu_.end());
  return p;
}

Multipliers Multipliers::from_packed(std::span<const double> packed) {
  if (packed.size() % 2 != 0) throw DimensionError("packed multipliers must have even length");
  const auto n = packed.size() / 2;
  return Multipliers(std::vector<double>(packed.begin(), packed.begin() + n),
                     std::vector<double>(packed.begin() + n, packed.end()));
}

PenaltyTerms penalty_terms(const QuantumState& state, const ConstraintSet& cs) {
  if (state_dim(state) != cs.dim()) throw DimensionError("penalty_terms: state and constraints differ in dimension");
  PenaltyTerms out{std::vector<double>(cs.size()), std::vector<double>(cs.size())};
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const double t = expectation(state, cs[k].op);
    out.lower_slack[k] = cs[k].lower - t;
    out.upper_slack[k] = t - cs[k].upper;
  }
  return out;
}

double lagrangian(const QuantumState& state, const Multipliers& m, const ConstraintSet& cs,
                  const MeasureDescriptor& measure) {
  if (m.size() != cs.size()) throw DimensionError("lagrangian: multiplier count differs from constraint count");
  if (measure.is_convex_roof && !std::holds_alternative<PureState>(state))
    throw std::invalid_argument("lagrangian: convex-roof measure '" + measure.name + "' needs a pure state");
  const auto slack = penalty_terms(state, cs);
  double value = measure(state);
  for (std::size_t k = 0; k < cs.size(); ++k)
    value += m.mu()[k] * slack.lower_slack[k] + m.nu()[k] * slack.upper_slack[k];
  return value;
}

bool is_feasible(const QuantumState& state, const ConstraintSet& cs, double tol) {
  const auto slack = penalty_terms(state, cs);
  for (std::size_t k = 0; k < cs.size(); ++k)
    if (slack.lower_slack[k] > tol || slack.upper_slack[k] > tol) return false;
  return true;
}

}  // namespace cohlb
