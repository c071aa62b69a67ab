#include "cohlb/ascent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cohlb {

std::string_view to_string(AscentStatus s) noexcept {
  switch (s) {
    case AscentStatus::converged: return "converged";
    case AscentStatus::stalled: return "stalled";
    case AscentStatus::iteration_cap: return "iteration_cap";
    case AscentStatus::diverged: return "diverged";
  }
  return "unknown";
}

namespace {

double projected_gradient_norm(std::span<const double> x, std::span<const double> g) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double step = std::max(0.0, x[i] + g[i]) - x[i];
    s += step * step;
  }
  return std::sqrt(s);
}

}  // namespace

AscentResult ascend(const ConcaveObjective& f, std::vector<double> start, const AscentParams& params) {
  if (!(params.initial_step > 0.0) || !(params.shrink > 0.0 && params.shrink < 1.0) ||
      !(params.sufficient_increase > 0.0 && params.sufficient_increase < 1.0) || params.max_iterations < 0)
    throw std::invalid_argument("ascend: invalid parameters");
  for (auto& v : start) {
    if (!std::isfinite(v)) throw std::invalid_argument("ascend: start point must be finite");
    v = std::max(0.0, v);
  }

  const std::size_t n = start.size();
  std::vector<double> x = std::move(start);
  std::vector<double> g(n), trial(n), g_trial(n);
  double fx = f(x, g);
  double step = params.initial_step;

  for (int it = 0; it < params.max_iterations; ++it) {
    if (projected_gradient_norm(x, g) <= params.gradient_tolerance) return {fx, x, it, AscentStatus::converged};

    for (;;) {
      double predicted = 0.0;
      double moved = 0.0;
      double scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = std::max(0.0, x[i] + step * g[i]);
        predicted += g[i] * (trial[i] - x[i]);
        moved = std::max(moved, std::abs(trial[i] - x[i]));
        scale = std::max(scale, std::abs(x[i]));
      }
      if (moved <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + scale))
        return {fx, x, it, AscentStatus::stalled};
      const double ft = f(trial, g_trial);
      if (std::isfinite(ft) && ft >= fx + params.sufficient_increase * predicted && ft >= fx) {
        x.swap(trial);
        g.swap(g_trial);
        fx = ft;
        break;
      }
      step *= params.shrink;
    }

    if (std::any_of(x.begin(), x.end(), [&](double v) { return v > params.divergence_threshold; }))
      return {fx, x, it + 1, AscentStatus::diverged};
    step /= params.shrink;
  }
  return {fx, x, params.max_iterations, AscentStatus::iteration_cap};
}

}  // namespace cohlb
