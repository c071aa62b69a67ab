// Acceptance gate: one [PASS]/[FAIL] line per criterion. Exit status is the
// number of failed criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "cohlb/estimator.hpp"
#include "cohlb/measures.hpp"
#include "cohlb/oracles.hpp"
#include "cohlb/softmin.hpp"

using namespace cohlb;

namespace {

namespace tol {
constexpr double oracle_abs = 1e-4;
constexpr double oracle_seconds = 1.0;
constexpr double l1_target = 0.9544, l1_window = 0.005;
constexpr double geometric_target = 0.1638, geometric_window = 0.005;
constexpr double l1_seconds = 600.0, geometric_seconds = 900.0;
constexpr double trace_slack = 0.02;
constexpr int trace_after_round = 3;
constexpr double sandwich_slack = 1e-9;
constexpr double fd_step = 1e-6, fd_rel = 1e-5;
constexpr double synthetic_halfwidth = 0.01, synthetic_slack = 0.01;
constexpr double feasible_l1_slack = 1e-9, feasible_geometric_slack = 1e-4;
constexpr double eigen_abs = 1e-10;
}  // namespace tol

constexpr std::uint64_t kSeed = 42;

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Cli {
  int exit_code;
  std::string out;
  double seconds;
};

Cli run_cli(const std::string& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string cmd = std::string(COHLB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  if (p) {
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  }
  const int status = p ? pclose(p) : -1;
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, s};
}

// Pulls "lower_bound": <number> out of the oracle JSON without a parser, so
// this check depends only on the printed text.
double lower_bound_field(const std::string& json) {
  const auto pos = json.find("\"lower_bound\":");
  if (pos == std::string::npos) return NAN;
  return std::strtod(json.c_str() + pos + 14, nullptr);
}

void oracle_criterion(int id, const std::string& fixture, double target) {
  const auto r = run_cli("oracle " + fixture);
  const double v = lower_bound_field(r.out);
  const bool ok = r.exit_code == 0 && std::abs(v - target) <= tol::oracle_abs && r.seconds < tol::oracle_seconds;
  report(id, ok, fmt("oracle %s = %.10g (target %.4f +- %.0e), %.3f s", fixture.c_str(), v, target, tol::oracle_abs,
                     r.seconds));
}

struct TimedEstimate {
  EstimationResult result;
  double seconds;
};

TimedEstimate photon_estimate(const MeasureDescriptor& m) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = estimate(PhotonFixture{}.constraints(), m, Schedule{}, kSeed);
  return {std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

void estimator_criterion(int id, const TimedEstimate& e, double target, double window, double budget) {
  const auto& r = e.result;
  const bool ok = r.status == EstimationStatus::converged && std::abs(r.lower_bound - target) <= window &&
                  e.seconds < budget;
  report(id, ok,
         fmt("estimate %s (seed %llu): lower_bound = %.6f, status %s, k0 = %d, %zu rounds, %.2f s; need [%.4f, %.4f]",
             r.measure.c_str(), static_cast<unsigned long long>(r.seed), r.lower_bound,
             std::string(to_string(r.status)).c_str(), r.converged_round.value_or(-1), r.rounds.size(), e.seconds,
             target - window, target + window));
}

// After round `after`, the distance to the final value may grow by at most
// `slack` from one round to the next.
bool approaches_monotonically(const EstimationResult& r, double& worst) {
  worst = 0.0;
  if (r.status == EstimationStatus::diverged_unbounded || r.rounds.size() <= tol::trace_after_round) return false;
  const double final_value = r.rounds.back().max_f;
  for (std::size_t i = tol::trace_after_round; i + 1 < r.rounds.size(); ++i) {
    const double grow = std::abs(r.rounds[i + 1].max_f - final_value) - std::abs(r.rounds[i].max_f - final_value);
    worst = std::max(worst, grow);
  }
  return worst <= tol::trace_slack;
}

HermitianOperator random_hermitian(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> n;
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = n(rng);
    for (std::size_t j = i + 1; j < d; ++j) {
      m(i, j) = {n(rng), n(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return HermitianOperator(m);
}

struct RandomConfig {
  ConstraintSet cs;
  MeasureDescriptor measure;
  SampleSet samples;
  double temperature;
  Multipliers m;
};

RandomConfig random_config(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(2, 4), count(1, 400), ncons(1, 3), kind(0, 2);
  std::uniform_real_distribution<double> logt(-2.0, 6.0), mult(0.0, 50.0), unit(0.0, 1.0);
  const std::size_t d = dim(rng);
  const int k = ncons(rng);
  std::vector<IntervalConstraint> items;
  for (int i = 0; i < k; ++i) {
    const double a = unit(rng) - 0.5;
    items.push_back({random_hermitian(rng, d), a, a + unit(rng)});
  }
  const int which = kind(rng);
  MeasureDescriptor measure = which == 0 ? l1_measure() : which == 1 ? relative_entropy_measure() : geometric_measure();
  const std::size_t n = count(rng);
  const std::uint64_t seed = rng();
  SampleSet s = measure.is_convex_roof ? sample_pure(n, d, seed) : sample_mixed(n, d, seed);
  std::vector<double> mu(k), nu(k);
  for (int i = 0; i < k; ++i) {
    mu[i] = unit(rng) < 0.2 ? 0.0 : mult(rng);
    nu[i] = unit(rng) < 0.2 ? 0.0 : mult(rng);
  }
  return {ConstraintSet(d, std::move(items)), std::move(measure), std::move(s), std::pow(10.0, logt(rng)),
          Multipliers(std::move(mu), std::move(nu))};
}

void sandwich_criterion() {
  std::mt19937_64 rng(6006);
  int bad = 0;
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto c = random_config(rng);
    double lmin = INFINITY;
    for (const auto& q : c.samples.states()) lmin = std::min(lmin, lagrangian(q, c.m, c.cs, c.measure));
    const double f = softmin_objective(c.samples, c.temperature, c.m, c.cs, c.measure);
    const double gap = std::log(static_cast<double>(c.samples.size())) / c.temperature;
    const double over = std::max(f - lmin, (lmin - gap) - f);
    worst = std::max(worst, over);
    if (over > tol::sandwich_slack) ++bad;
  }
  report(6, bad == 0, fmt("soft-min sandwich on 1000 random configurations: %d violations, worst excess %.3g", bad,
                          worst));
}

void gradient_criterion() {
  std::mt19937_64 rng(7007);
  int bad = 0;
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    auto c = random_config(rng);
    // Finite differences need the multipliers away from the boundary.
    auto mu = c.m.mu(), nu = c.m.nu();
    for (auto& v : mu) v += 1.0;
    for (auto& v : nu) v += 1.0;
    const double t = std::min(c.temperature, 1e4);
    const auto g = softmin_gradient(c.samples, t, Multipliers(mu, nu), c.cs, c.measure);
    auto f = [&](const std::vector<double>& a, const std::vector<double>& b) {
      return softmin_objective(c.samples, t, Multipliers(a, b), c.cs, c.measure);
    };
    for (std::size_t k = 0; k < mu.size(); ++k) {
      for (int which = 0; which < 2; ++which) {
        auto plus_mu = mu, minus_mu = mu, plus_nu = nu, minus_nu = nu;
        if (which == 0) {
          plus_mu[k] += tol::fd_step;
          minus_mu[k] -= tol::fd_step;
        } else {
          plus_nu[k] += tol::fd_step;
          minus_nu[k] -= tol::fd_step;
        }
        const double fd = (f(plus_mu, plus_nu) - f(minus_mu, minus_nu)) / (2 * tol::fd_step);
        const double analytic = which == 0 ? g.d_mu[k] : g.d_nu[k];
        const double rel = std::abs(analytic - fd) / std::max(1.0, std::abs(analytic));
        worst = std::max(worst, rel);
        if (rel > tol::fd_rel) ++bad;
      }
    }
  }
  report(7, bad == 0,
         fmt("analytic gradient vs central differences on 200 configurations: %d mismatches, worst %.3g", bad, worst));
}

void weak_duality_criterion() {
  // Synthetic problems: a known state fixes the intervals, so its coherence
  // bounds the true greatest lower bound from above.
  std::mt19937_64 rng(8008);
  std::normal_distribution<double> n;
  int synthetic_bad = 0, diverged = 0;
  double worst = -INFINITY;
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t d = 3;
    const bool pure = rep % 2 == 1;
    std::vector<Complex> v(d);
    ComplexMatrix g(d);
    for (auto& z : v) z = {n(rng), n(rng)};
    for (auto& z : g.data()) z = {n(rng), n(rng)};
    const PureState psi = PureState::normalized(v);
    ComplexMatrix rho_m = g * g.adjoint();
    rho_m *= 1.0 / rho_m.trace().real();
    for (std::size_t i = 0; i < d; ++i) rho_m(i, i) = rho_m(i, i).real();
    const QuantumState star = pure ? QuantumState(psi) : QuantumState(DensityMatrix::from_psd(rho_m));
    std::vector<IntervalConstraint> items;
    for (int k = 0; k < 2; ++k) {
      auto op = random_hermitian(rng, d);
      const double t = expectation(star, op);
      items.push_back({std::move(op), t - tol::synthetic_halfwidth, t + tol::synthetic_halfwidth});
    }
    const auto measure = pure ? geometric_measure() : l1_measure();
    const double c_star = measure(star);
    const auto r = estimate(ConstraintSet(d, std::move(items)), measure, Schedule{}, 500 + rep);
    if (r.status == EstimationStatus::diverged_unbounded) ++diverged;
    const double excess = r.lower_bound - c_star;
    if (!(excess <= tol::synthetic_slack)) ++synthetic_bad;
    if (std::isfinite(excess)) worst = std::max(worst, excess);
  }

  const PhotonFixture fx;
  const auto cs = fx.constraints();
  std::uniform_real_distribution<double> p((4 * fx.lower - 1) / 3, (4 * fx.upper - 1) / 3), eps(0.0, 0.01);
  GaussianStream gs(8009);
  int l1_bad = 0, kept = 0;
  double l1_min = INFINITY;
  while (kept < 1000) {
    // Alternate isotropic states perturbed by Ginibre noise and raw Ginibre
    // draws of random rank; keep the feasible ones.
    DensityMatrix rho = kept % 2 == 0 ? isotropic_state(p(rng)) : random_density(gs, 4, SampleField::complex, 1);
    if (kept % 2 == 0) {
      const auto noise = random_density(gs, 4, SampleField::complex);
      const double e = eps(rng);
      auto m = rho.matrix() * Complex(1 - e) + noise.matrix() * Complex(e);
      rho = DensityMatrix::from_psd(m);
    }
    if (!is_feasible(QuantumState(rho), cs, 0.0)) continue;
    ++kept;
    const double c = l1_coherence(rho);
    l1_min = std::min(l1_min, c);
    if (c < tol::l1_target - tol::feasible_l1_slack) ++l1_bad;
  }
  int g_bad = 0;
  double g_min = INFINITY;
  for (kept = 0; kept < 1000;) {
    const auto psi = random_pure(gs, 4, SampleField::complex);
    if (!is_feasible(QuantumState(psi), cs, 0.0)) continue;
    ++kept;
    const double c = geometric_coherence_pure(psi);
    g_min = std::min(g_min, c);
    if (c < tol::geometric_target - tol::feasible_geometric_slack) ++g_bad;
  }
  report(8, synthetic_bad == 0 && l1_bad == 0 && g_bad == 0,
         fmt("synthetic problems: %d/50 above C(rho*) + %.2g (%d diverged, worst excess %.4f); feasible photon "
             "states: l1 min %.6f (%d below), geometric min %.6f (%d below)",
             synthetic_bad, tol::synthetic_slack, diverged, worst, l1_min, l1_bad, g_min, g_bad));
}

void eigen_criterion() {
  double worst = 0.0;
  for (double x : {-5.0, -1.0, -0.5, 0.0, 0.5, 1.0, 5.0})
    for (std::size_t i = 0; i < 4; ++i) {
      const HermitianOperator op(PhotonFixture::witness().matrix() * Complex(x) -
                                 PureState::basis(4, i).projector().matrix());
      worst = std::max(worst, std::abs(hermitian_eigen(op).values.front() -
                                       -0.5 * (std::sqrt(x * x + x + 1) - x + 1)));
    }
  report(9, worst <= tol::eigen_abs, fmt("closed-form minimum eigenvalue, 7 x 4 cases: worst error %.3g", worst));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void determinism_criterion() {
  const auto dir = std::filesystem::temp_directory_path() / "cohlb_acceptance";
  std::filesystem::create_directories(dir);
  bool ok = true;
  std::string detail;
  for (const char* problem : {"photon_l1", "photon_geometric"}) {
    std::string traces[2];
    for (int run = 0; run < 2; ++run) {
      const auto path = dir / (std::string(problem) + std::to_string(run) + ".csv");
      run_cli(std::string("estimate --problem ") + COHLB_DATA_DIR + "/" + problem + ".json --seed 42 --out /dev/null " +
              "--trace " + path.string());
      traces[run] = slurp(path);
    }
    const bool same = !traces[0].empty() && traces[0] == traces[1];
    ok = ok && same;
    detail += fmt(" %s: %zu bytes %s;", problem, traces[0].size(), same ? "identical" : "DIFFER");
  }
  std::filesystem::remove_all(dir);
  report(10, ok, "trace CSV byte-identical across two runs:" + detail);
}

}  // namespace

int main() {
  std::printf("acceptance: seed %llu, kernels %s\n", static_cast<unsigned long long>(kSeed),
              std::string(default_kernels().name).c_str());

  oracle_criterion(1, "photon_l1", tol::l1_target);
  oracle_criterion(2, "photon_geometric", tol::geometric_target);

  const auto l1 = photon_estimate(l1_measure());
  const auto geo = photon_estimate(geometric_measure());
  estimator_criterion(3, l1, tol::l1_target, tol::l1_window, tol::l1_seconds);
  estimator_criterion(4, geo, tol::geometric_target, tol::geometric_window, tol::geometric_seconds);

  double worst_l1 = 0.0, worst_geo = 0.0;
  const bool shape_l1 = approaches_monotonically(l1.result, worst_l1);
  const bool shape_geo = approaches_monotonically(geo.result, worst_geo);
  report(5, shape_l1 && shape_geo,
         fmt("trace approaches its final value after round %d within %.2g: l1 worst step %.4f, geometric worst step "
             "%.4f",
             tol::trace_after_round, tol::trace_slack, worst_l1, worst_geo));

  sandwich_criterion();
  gradient_criterion();
  weak_duality_criterion();
  eigen_criterion();
  determinism_criterion();

  // Single-round check at the size and temperature where the reference run
  // settled; not one of the numbered criteria.
  {
    const Schedule s;
    const auto cs = PhotonFixture{}.constraints();
    const auto samples = sample_mixed(s.count(26), 4, kSeed, resolve_field(cs, std::nullopt));
    const auto r = ascend(samples, s.temperature(26), cs, l1_measure(), s, Multipliers(1));
    const bool ok = r.status != AscentStatus::diverged && std::abs(r.max_f - tol::l1_target) <= tol::l1_window;
    std::printf("[%s] extra. single round l1, L = 2600, T = 13520, seed %llu: max_F = %.6f (target %.4f +- %.3f)\n",
                ok ? "PASS" : "FAIL", static_cast<unsigned long long>(kSeed), r.max_f, tol::l1_target,
                tol::l1_window);
  }

  std::printf("acceptance: %d of 10 criteria failed\n", failures);
  return failures;
}
