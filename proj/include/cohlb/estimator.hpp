#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohlb/ascent.hpp"
#include "cohlb/constraints.hpp"
#include "cohlb/kernels.hpp"
#include "cohlb/measures.hpp"
#include "cohlb/sampler.hpp"

namespace cohlb {

/// Refinement schedule. Round k (1-based) uses
///   L_k = initial_count + (k - 1) * count_increment states and
///   T_k = temperature_scale * k^temperature_power.
struct Schedule {
  std::size_t initial_count = 100;
  std::size_t count_increment = 100;
  double temperature_scale = 20.0;
  double temperature_power = 2.0;
  double tolerance = 1e-4;
  int stability_window = 5;
  int max_rounds = 60;
  AscentParams ascent;

  std::size_t count(int k) const noexcept;
  double temperature(int k) const noexcept;
  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

enum class EstimationStatus { converged, max_rounds_exhausted, diverged_unbounded };
std::string_view to_string(EstimationStatus s) noexcept;

struct RoundRecord {
  int k;
  std::size_t count;
  double temperature;
  double max_f;
  Multipliers multipliers;
  int ascent_iterations;
  AscentStatus ascent_status;
};

struct EstimationResult {
  /// max F at the converged round; the last round's value when rounds ran
  /// out; NaN after divergence.
  double lower_bound;
  std::vector<RoundRecord> rounds;
  EstimationStatus status;
  std::optional<int> converged_round;  ///< k0
  std::uint64_t seed;
  std::string measure;
  SampleMode mode;
  SampleField field;
  std::string rng;
  std::string kernel;
};

struct EstimateOptions {
  /// Unset: real amplitudes when every constraint operator is real,
  /// complex otherwise.
  std::optional<SampleField> field;
  /// Workers for the per-state evaluation. Never changes the result.
  unsigned threads = 1;
  /// Unset: default_kernels().
  const SoftminKernels* kernels = nullptr;
};

/// Field the estimator samples from when `requested` is unset.
SampleField resolve_field(const ConstraintSet& cs, std::optional<SampleField> requested) noexcept;

struct AscentOutcome {
  double max_f;
  Multipliers argmax;
  int iterations;
  AscentStatus status;
};

/// Maximizes F_{S,T} over (mu, nu) >= 0 starting from `start`.
AscentOutcome ascend(const SampleSet& s, double temperature, const ConstraintSet& cs,
                     const MeasureDescriptor& measure, const Schedule& schedule, const Multipliers& start);

/// Runs refinement rounds until max F is stable for `stability_window`
/// rounds, the multipliers diverge, or `max_rounds` is reached.
EstimationResult estimate(const ConstraintSet& cs, const MeasureDescriptor& measure, const Schedule& schedule,
                          std::uint64_t seed, const EstimateOptions& options = {});

}  // namespace cohlb
