#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cohlb/constraints.hpp"
#include "cohlb/kernels.hpp"
#include "cohlb/measures.hpp"
#include "cohlb/sampler.hpp"

namespace cohlb {

/// Multiplier-independent data of a sample set, laid out column-wise:
/// C(rho) and the two slack vectors of every constraint. The Lagrangian of
/// state i is cost[i] + sum_k mu_k lower[k][i] + nu_k upper[k][i].
class StateTable {
 public:
  explicit StateTable(std::size_t constraints) : lower_(constraints), upper_(constraints) {}

  /// Evaluates states [size(), s.size()) of `s` and appends them. The work
  /// is split over `threads` workers; each writes only its own indices.
  void extend(const SampleSet& s, const ConstraintSet& cs, const MeasureDescriptor& measure, unsigned threads = 1);

  static StateTable build(const SampleSet& s, const ConstraintSet& cs, const MeasureDescriptor& measure,
                          unsigned threads = 1);

  std::size_t size() const noexcept { return cost_.size(); }
  std::size_t constraints() const noexcept { return lower_.size(); }
  std::span<const double> cost() const noexcept { return cost_; }
  std::span<const double> lower(std::size_t k) const noexcept { return lower_[k]; }
  std::span<const double> upper(std::size_t k) const noexcept { return upper_[k]; }

 private:
  std::vector<double> cost_;
  std::vector<std::vector<double>> lower_;
  std::vector<std::vector<double>> upper_;
};

/// F(mu, nu) = -(1/T) ln sum_i exp(-T L_i(mu, nu)), evaluated with a
/// max-shift. Holds scratch buffers, so one instance per thread.
class Softmin {
 public:
  Softmin(const StateTable& table, double temperature, const SoftminKernels& kernels = default_kernels());

  double temperature() const noexcept { return temperature_; }

  /// `packed` = [mu..., nu...]
  double value(std::span<const double> packed);
  /// Also writes dF/d(packed) into `grad` (same layout).
  double value_and_gradient(std::span<const double> packed, std::span<double> grad);

  /// Lagrangian values of the last evaluation.
  std::span<const double> last_lagrangians() const noexcept { return lagr_; }
  /// Normalized softmax weights of the last evaluation.
  std::span<const double> last_weights() const noexcept { return weights_; }
  double last_min() const noexcept { return last_min_; }

 private:
  double evaluate(std::span<const double> packed);

  const StateTable* table_;
  double temperature_;
  const SoftminKernels* kernels_;
  std::vector<double> lagr_;
  std::vector<double> weights_;
  double last_min_ = 0.0;
  double last_sum_ = 0.0;
};

/// Throws std::invalid_argument when the sample mode does not match the
/// measure (pure iff convex roof) or the set is empty.
void check_sample_compatibility(const SampleSet& s, const MeasureDescriptor& measure);

double softmin_objective(const SampleSet& s, double temperature, const Multipliers& m, const ConstraintSet& cs,
                         const MeasureDescriptor& measure);

struct SoftminGradient {
  std::vector<double> d_mu;
  std::vector<double> d_nu;
};

SoftminGradient softmin_gradient(const SampleSet& s, double temperature, const Multipliers& m,
                                 const ConstraintSet& cs, const MeasureDescriptor& measure);

}  // namespace cohlb
