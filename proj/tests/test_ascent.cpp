#include <cmath>

#include <gtest/gtest.h>

#include "cohlb/ascent.hpp"

using namespace cohlb;

namespace {

ConcaveObjective quadratic(std::vector<double> center) {
  return [center](std::span<const double> x, std::span<double> g) {
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - center[i];
      f -= d * d;
      g[i] = -2.0 * d;
    }
    return f;
  };
}

}  // namespace

TEST(Ascent, InteriorMaximum) {
  const auto r = ascend(quadratic({1.0}), {0.0});
  EXPECT_EQ(r.status, AscentStatus::converged);
  EXPECT_NEAR(r.argmax[0], 1.0, 1e-6);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(Ascent, MaximumOnTheBoundary) {
  const auto r = ascend(quadratic({-1.0}), {3.0});
  EXPECT_EQ(r.argmax[0], 0.0);
  EXPECT_NEAR(r.value, -1.0, 1e-12);
}

TEST(Ascent, MixedBoundaryAndInterior) {
  const auto r = ascend(quadratic({2.0, -0.5, 0.25}), {0.0, 0.0, 0.0});
  EXPECT_NEAR(r.argmax[0], 2.0, 1e-6);
  EXPECT_EQ(r.argmax[1], 0.0);
  EXPECT_NEAR(r.argmax[2], 0.25, 1e-6);
}

TEST(Ascent, IllConditionedQuadratic) {
  auto f = [](std::span<const double> x, std::span<double> g) {
    const double a = x[0] - 3.0, b = x[1] - 0.01;
    g[0] = -0.2 * a;
    g[1] = -200.0 * b;
    return -0.1 * a * a - 100.0 * b * b;
  };
  const auto r = ascend(f, {0.0, 0.0});
  EXPECT_EQ(r.status, AscentStatus::converged);
  EXPECT_NEAR(r.argmax[0], 3.0, 1e-6);
  EXPECT_NEAR(r.argmax[1], 0.01, 1e-6);
}

TEST(Ascent, NeverWorseThanTheStart) {
  auto f = [](std::span<const double> x, std::span<double> g) {
    g[0] = -std::sinh(x[0] - 0.5);
    return -std::cosh(x[0] - 0.5);
  };
  for (double s : {0.0, 0.4, 0.5, 2.0, 7.0}) {
    std::vector<double> g(1);
    const double f0 = f(std::vector<double>{s}, g);
    EXPECT_GE(ascend(f, {s}).value, f0);
  }
}

TEST(Ascent, UnboundedObjectiveDiverges) {
  auto f = [](std::span<const double> x, std::span<double> g) {
    g[0] = 0.25;
    g[1] = -1.0;
    return 0.25 * x[0] - x[1];
  };
  const auto r = ascend(f, {0.0, 0.0});
  EXPECT_EQ(r.status, AscentStatus::diverged);
  EXPECT_GT(r.argmax[0], 1e8);
  EXPECT_LT(r.iterations, 200);
}

TEST(Ascent, IterationCapIsReported) {
  AscentParams p;
  p.max_iterations = 3;
  p.initial_step = 1e-6;
  p.shrink = 0.99;
  const auto r = ascend(quadratic({100.0}), {0.0}, p);
  EXPECT_EQ(r.status, AscentStatus::iteration_cap);
  EXPECT_EQ(r.iterations, 3);
}

TEST(Ascent, InfeasibleStartIsProjected) {
  const auto r = ascend(quadratic({1.0}), {-5.0});
  EXPECT_NEAR(r.argmax[0], 1.0, 1e-6);
}

TEST(Ascent, InvalidArgumentsThrow) {
  EXPECT_THROW(ascend(quadratic({1.0}), {std::nan("")}), std::invalid_argument);
  AscentParams p;
  p.shrink = 1.5;
  EXPECT_THROW(ascend(quadratic({1.0}), {0.0}, p), std::invalid_argument);
  p = {};
  p.initial_step = 0.0;
  EXPECT_THROW(ascend(quadratic({1.0}), {0.0}, p), std::invalid_argument);
}

TEST(Ascent, StatusNames) {
  EXPECT_EQ(to_string(AscentStatus::converged), "converged");
  EXPECT_EQ(to_string(AscentStatus::diverged), "diverged");
}
