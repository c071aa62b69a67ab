#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "cohlb/tolerances.hpp"

namespace cohlb {

struct AscentParams {
  double initial_step = 1.0;
  double shrink = 0.5;            ///< backtracking factor
  double sufficient_increase = 1e-4;
  double gradient_tolerance = 1e-9;  ///< on the projected-gradient norm
  int max_iterations = 20000;
  double divergence_threshold = Tolerances::divergence_threshold;
};

enum class AscentStatus {
  converged,       ///< projected-gradient norm below tolerance
  stalled,         ///< no representable ascent step left
  iteration_cap,
  diverged,        ///< a coordinate exceeded the divergence threshold
};

std::string_view to_string(AscentStatus s) noexcept;

struct AscentResult {
  double value;
  std::vector<double> argmax;
  int iterations;
  AscentStatus status;
};

/// Returns f(x) and writes its gradient.
using ConcaveObjective = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Projected gradient ascent on the nonnegative orthant with Armijo
/// backtracking along the projection arc. The first trial step is
/// `initial_step`; every later iteration starts from the previously accepted
/// step divided by `shrink`, so steps can also grow. Only increases of f are
/// accepted, hence value >= f(start).
AscentResult ascend(const ConcaveObjective& f, std::vector<double> start, const AscentParams& params = {});

}  // namespace cohlb
