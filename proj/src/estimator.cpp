#include "cohlb/estimator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cohlb/softmin.hpp"

namespace cohlb {

std::size_t Schedule::count(int k) const noexcept {
  return initial_count + static_cast<std::size_t>(k - 1) * count_increment;
}

double Schedule::temperature(int k) const noexcept {
  return temperature_scale * std::pow(static_cast<double>(k), temperature_power);
}

void Schedule::validate() const {
  if (initial_count < 1) throw std::invalid_argument("schedule: initial_count must be >= 1");
  if (count_increment < 1) throw std::invalid_argument("schedule: count_increment must be >= 1");
  if (!(temperature_scale > 0.0) || !std::isfinite(temperature_scale))
    throw std::invalid_argument("schedule: temperature_scale must be positive");
  // T_k strictly increasing in k
  if (!(temperature_power > 0.0) || !std::isfinite(temperature_power))
    throw std::invalid_argument("schedule: temperature_power must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("schedule: tolerance must be positive");
  if (stability_window < 1) throw std::invalid_argument("schedule: stability_window must be >= 1");
  if (max_rounds < 1) throw std::invalid_argument("schedule: max_rounds must be >= 1");
}

std::string_view to_string(EstimationStatus s) noexcept {
  switch (s) {
    case EstimationStatus::converged: return "converged";
    case EstimationStatus::max_rounds_exhausted: return "max_rounds_exhausted";
    case EstimationStatus::diverged_unbounded: return "diverged_unbounded";
  }
  return "unknown";
}

SampleField resolve_field(const ConstraintSet& cs, std::optional<SampleField> requested) noexcept {
  if (requested) return *requested;
  return cs.all_real() ? SampleField::real : SampleField::complex;
}

namespace {

AscentOutcome run_ascent(Softmin& f, const Schedule& schedule, const Multipliers& start) {
  auto objective = [&f](std::span<const double> x, std::span<double> g) { return f.value_and_gradient(x, g); };
  auto r = cohlb::ascend(objective, start.packed(), schedule.ascent);
  // Round-off can leave tiny negatives out of max(0, .); the iterate itself
  // is always clamped, so this only guards the type invariant.
  for (auto& v : r.argmax) v = std::max(0.0, v);
  return {r.value, Multipliers::from_packed(r.argmax), r.iterations, r.status};
}

}  // namespace

AscentOutcome ascend(const SampleSet& s, double temperature, const ConstraintSet& cs,
                     const MeasureDescriptor& measure, const Schedule& schedule, const Multipliers& start) {
  check_sample_compatibility(s, measure);
  if (start.size() != cs.size()) throw DimensionError("ascend: multiplier count differs from constraint count");
  const auto table = StateTable::build(s, cs, measure);
  Softmin f(table, temperature);
  return run_ascent(f, schedule, start);
}

EstimationResult estimate(const ConstraintSet& cs, const MeasureDescriptor& measure, const Schedule& schedule,
                          std::uint64_t seed, const EstimateOptions& options) {
  schedule.validate();
  if (!measure.is_convex_roof && !measure.has_mixed())
    throw std::invalid_argument("measure '" + measure.name + "' has no mixed-state evaluator");

  const SampleMode mode = measure.is_convex_roof ? SampleMode::pure : SampleMode::mixed;
  const SampleField field = resolve_field(cs, options.field);
  const SoftminKernels& kernels = options.kernels ? *options.kernels : default_kernels();

  EstimationResult result{std::numeric_limits<double>::quiet_NaN(),
                          {},
                          EstimationStatus::max_rounds_exhausted,
                          std::nullopt,
                          seed,
                          measure.name,
                          mode,
                          field,
                          std::string(GaussianStream::algorithm),
                          std::string(kernels.name)};

  std::optional<SampleSet> samples;
  StateTable table(cs.size());
  Multipliers current(cs.size());

  for (int k = 1; k <= schedule.max_rounds; ++k) {
    const std::size_t count = schedule.count(k);
    if (!samples) {
      samples = mode == SampleMode::mixed ? sample_mixed(count, cs.dim(), seed, field)
                                          : sample_pure(count, cs.dim(), seed, field);
    } else {
      samples = enlarge(*samples, count - samples->size());
    }
    table.extend(*samples, cs, measure, options.threads);

    const double temperature = schedule.temperature(k);
    Softmin f(table, temperature, kernels);
    auto outcome = run_ascent(f, schedule, current);
    result.rounds.push_back(
        {k, count, temperature, outcome.max_f, outcome.argmax, outcome.iterations, outcome.status});

    if (outcome.status == AscentStatus::diverged) {
      result.status = EstimationStatus::diverged_unbounded;
      result.lower_bound = std::numeric_limits<double>::quiet_NaN();
      return result;
    }
    current = outcome.argmax;

    // First k0 whose next W rounds all stay within tolerance of round k0.
    const int window = schedule.stability_window;
    const int k0 = k - window;
    if (k0 >= 1) {
      const double ref = result.rounds[k0 - 1].max_f;
      bool stable = true;
      for (int j = 1; j <= window && stable; ++j)
        stable = std::abs(result.rounds[k0 - 1 + j].max_f - ref) < schedule.tolerance;
      if (stable) {
        result.status = EstimationStatus::converged;
        result.converged_round = k0;
        result.lower_bound = ref;
        return result;
      }
    }
  }

  result.lower_bound = result.rounds.back().max_f;
  return result;
}

}  // namespace cohlb
