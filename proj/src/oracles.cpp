#include "cohlb/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "cohlb/sampler.hpp"

namespace cohlb {

PureState PhotonFixture::psi() { return PureState(std::vector<Complex>(dim, 0.5)); }

HermitianOperator PhotonFixture::witness() { return HermitianOperator(psi().projector().matrix()); }

ConstraintSet PhotonFixture::constraints() const { return ConstraintSet(dim, {{witness(), lower, upper}}); }

DensityMatrix isotropic_state(double p) {
  if (p < -1.0 / 3.0 - 1e-15 || p > 1.0 + 1e-15) throw std::invalid_argument("isotropic_state: p outside [-1/3, 1]");
  auto m = ComplexMatrix::identity(4);
  m *= (1.0 - p) / 4.0;
  m += PhotonFixture::psi().projector().matrix() * Complex(p);
  return DensityMatrix::from_psd(std::move(m));
}

double l1_dual_inner(const PhotonFixture& fx, double mu, double nu) {
  if (mu < 0.0 || nu < 0.0) throw std::invalid_argument("l1_dual_inner: multipliers must be nonnegative");
  auto value = [&](double p) {
    const double t = (1.0 + 3.0 * p) / 4.0;
    return 3.0 * std::abs(p) + mu * (fx.lower - t) + nu * (t - fx.upper);
  };
  return std::min({value(-1.0 / 3.0), value(0.0), value(1.0)});
}

L1Analytic l1_lower_bound_analytic(const PhotonFixture& fx) {
  // Tr(rho_p O) = (1 + 3p)/4, so the interval maps to p in [lo, hi].
  const double lo = std::max(-1.0 / 3.0, (4.0 * fx.lower - 1.0) / 3.0);
  const double hi = std::min(1.0, (4.0 * fx.upper - 1.0) / 3.0);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (lo > hi) return {std::numeric_limits<double>::infinity(), nan, nan, nan};
  if (lo <= 0.0 && hi >= 0.0) return {0.0, 0.0, 0.0, 0.0};
  // The slope of 3|p| is balanced by 3/4 of the active multiplier.
  if (hi < 0.0) return {3.0 * -hi, hi, 0.0, 4.0};
  return {3.0 * lo, lo, 4.0, 0.0};
}

double photon_min_eigenvalue(double x) { return -0.5 * (std::sqrt(x * x + x + 1.0) - x + 1.0); }

double geometric_dual_objective(const PhotonFixture& fx, double mu, double nu) {
  if (mu < 0.0 || nu < 0.0) throw std::invalid_argument("geometric_dual_objective: multipliers must be nonnegative");
  return photon_min_eigenvalue(nu - mu) + fx.lower * mu - fx.upper * nu + 1.0;
}

GeometricAnalytic geometric_lower_bound_analytic(const PhotonFixture& fx) {
  auto ridge = [&](double x) {
    const double mu = std::max(0.0, -x);
    return geometric_dual_objective(fx, mu, mu + x);
  };
  // Concave in x: lambda_min is concave and the kink at 0 bends downward
  // because lower <= upper.
  double a = -1e3, b = 1e3;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = ridge(c), fd = ridge(d);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = ridge(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = ridge(d);
    }
  }
  double x = 0.5 * (a + b);
  // The maximum may sit exactly on the kink.
  if (ridge(0.0) >= ridge(x)) x = 0.0;
  const double mu = std::max(0.0, -x);
  return {ridge(x), x, mu, mu + x};
}

namespace {

// Lagrangian of the state generated by `params`, read as a dim x rank
// complex matrix G (rho = G G^dagger / Tr) or, for pure states, as the
// amplitude vector.
class ParamLagrangian {
 public:
  ParamLagrangian(const ConstraintSet& cs, const MeasureDescriptor& measure, const Multipliers& m, bool pure)
      : cs_(cs), measure_(measure), m_(m), pure_(pure) {}

  double operator()(const std::vector<double>& params, std::size_t rank) const {
    const std::size_t d = cs_.dim();
    if (pure_) {
      std::vector<Complex> v(d);
      double n = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        v[i] = {params[2 * i], params[2 * i + 1]};
        n += std::norm(v[i]);
      }
      if (!(n > 0.0)) return std::numeric_limits<double>::infinity();
      return lagrangian(QuantumState(PureState::normalized(std::move(v))), m_, cs_, measure_);
    }
    ComplexMatrix rho(d);
    double tr = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < rank; ++k) {
          const Complex gi{params[2 * (i * rank + k)], params[2 * (i * rank + k) + 1]};
          const Complex gj{params[2 * (j * rank + k)], params[2 * (j * rank + k) + 1]};
          s += gi * std::conj(gj);
        }
        rho(i, j) = s;
        rho(j, i) = std::conj(s);
        if (i == j) tr += s.real();
      }
    if (!(tr > 0.0)) return std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d; ++i) rho(i, i) = rho(i, i).real();
    rho *= 1.0 / tr;
    return lagrangian(QuantumState(DensityMatrix::from_psd(std::move(rho))), m_, cs_, measure_);
  }

 private:
  const ConstraintSet& cs_;
  const MeasureDescriptor& measure_;
  const Multipliers& m_;
  bool pure_;
};

struct Candidate {
  double value;
  std::vector<double> params;
  std::size_t rank;
};

}  // namespace

double brute_force_inner_infimum(const ConstraintSet& cs, const MeasureDescriptor& measure, const Multipliers& m,
                                 const BruteForceOptions& options) {
  const std::size_t d = cs.dim();
  if (d > 4) throw DimensionError("brute_force_inner_infimum: dimension must be <= 4");
  if (m.size() != cs.size()) throw DimensionError("brute_force_inner_infimum: multiplier count mismatch");
  const bool pure = measure.is_convex_roof;
  const ParamLagrangian eval(cs, measure, m, pure);

  GaussianStream g(options.seed);
  std::mt19937_64 rank_rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  constexpr std::size_t keep = 4;
  std::vector<Candidate> best;

  for (std::size_t s = 0; s < options.samples; ++s) {
    const std::size_t rank = pure ? 1 : 1 + static_cast<std::size_t>(rank_rng() % d);
    std::vector<double> params(2 * d * rank);
    for (auto& p : params) p = g.next();
    const double v = eval(params, rank);
    if (best.size() < keep || v < best.back().value) {
      best.push_back({v, std::move(params), rank});
      std::sort(best.begin(), best.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
      if (best.size() > keep) best.pop_back();
    }
  }

  double result = std::numeric_limits<double>::infinity();
  for (auto& c : best) {
    double scale = 0.0;
    for (double p : c.params) scale = std::max(scale, std::abs(p));
    double h = 0.25 * scale;
    for (int sweep = 0; sweep < options.refine_sweeps && h > 1e-12 * scale; ++sweep) {
      bool improved = false;
      for (std::size_t i = 0; i < c.params.size(); ++i) {
        for (double dir : {1.0, -1.0}) {
          const double old = c.params[i];
          c.params[i] = old + dir * h;
          const double v = eval(c.params, c.rank);
          if (v < c.value) {
            c.value = v;
            improved = true;
            break;
          }
          c.params[i] = old;
        }
      }
      if (!improved) h *= 0.5;
    }
    result = std::min(result, c.value);
  }
  return result;
}

}  // namespace cohlb
