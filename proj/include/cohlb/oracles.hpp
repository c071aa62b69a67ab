#pragma once

#include <cstddef>
#include <cstdint>

#include "cohlb/constraints.hpp"
#include "cohlb/linalg.hpp"
#include "cohlb/measures.hpp"

namespace cohlb {

/// Two-photon witness experiment: d = 4, O = |Psi><Psi| with Psi the uniform
/// superposition, lower <= Tr(rho O) <= upper.
struct PhotonFixture {
  double lower = 0.0088;
  double upper = 0.0114;

  static constexpr std::size_t dim = 4;
  static PureState psi();
  static HermitianOperator witness();
  ConstraintSet constraints() const;
};

/// Isotropic state (1-p) I/4 + p |Psi><Psi|, p in [-1/3, 1].
DensityMatrix isotropic_state(double p);

/// inf over the isotropic family of 3|p| + mu (a - (1+3p)/4) + nu ((1+3p)/4 - b).
/// Piecewise linear in p with its only kink at 0, so the minimum is at
/// p = -1/3, 0 or 1.
double l1_dual_inner(const PhotonFixture& fx, double mu, double nu);

struct L1Analytic {
  double lower_bound;  ///< +inf when no isotropic state meets the interval
  double p_star;       ///< minimizing isotropic parameter
  double mu;           ///< a dual maximizer
  double nu;
};

/// sup_{mu,nu >= 0} l1_dual_inner. The optimum pins p to the end of the
/// feasible p-interval closest to 0, giving 3 |p*|.
L1Analytic l1_lower_bound_analytic(const PhotonFixture& fx = {});

/// Smallest eigenvalue of x O - |i><i| for the photon witness:
/// -(sqrt(x^2 + x + 1) - x + 1) / 2, the same for every i.
double photon_min_eigenvalue(double x);

/// inf_psi of the geometric Lagrangian in closed form:
/// lambda_min(x) + a mu - b nu + 1 with x = nu - mu.
double geometric_dual_objective(const PhotonFixture& fx, double mu, double nu);

struct GeometricAnalytic {
  double lower_bound;
  double x;  ///< nu - mu at the maximizer
  double mu;
  double nu;
};

/// Maximizes geometric_dual_objective. At fixed x = nu - mu the linear part
/// (a - b) mu - b x favours the smallest admissible mu = max(0, -x), which
/// reduces the problem to a concave function of x, maximized by golden
/// section to well below 1e-6.
GeometricAnalytic geometric_lower_bound_analytic(const PhotonFixture& fx = {});

struct BruteForceOptions {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
  int refine_sweeps = 200;
};

/// Upper estimate of inf_rho L(rho, m) (or inf_psi for convex roofs) for
/// d <= 4: the best of a dense random scan (Ginibre states of random rank,
/// or Haar vectors) polished by a shrinking-step coordinate search over the
/// generating amplitudes.
double brute_force_inner_infimum(const ConstraintSet& cs, const MeasureDescriptor& measure, const Multipliers& m,
                                 const BruteForceOptions& options = {});

}  // namespace cohlb
