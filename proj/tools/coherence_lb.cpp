// coherence_lb: lower bounds on coherence measures from interval data.
//
//   coherence_lb estimate --problem photon_l1.json --seed 42 --trace trace.csv
//   coherence_lb oracle photon_geometric

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cohlb/estimator.hpp"
#include "cohlb/kernels.hpp"
#include "cohlb/measures.hpp"
#include "cohlb/oracles.hpp"
#include "cohlb/problem_io.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitMaxRounds = 3;
constexpr std::uint64_t kDefaultSeed = 42;

struct EstimateArgs {
  std::string problem;
  std::string measure;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<int> max_rounds;
  std::string out;
  std::string trace;
  unsigned threads = 1;
  std::string sampling = "auto";
  std::string kernel = "auto";
};

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << content;
  return static_cast<bool>(f);
}

int run_estimate(const EstimateArgs& args) {
  cohlb::ProblemFile problem;
  try {
    problem = cohlb::parse_problem_file(args.problem);
  } catch (const cohlb::ProblemError& e) {
    std::cerr << "error[" << cohlb::to_string(e.code()) << "]: " << e.what() << "\n";
    return static_cast<int>(e.code());
  }

  const std::string measure_name = args.measure.empty() ? problem.measure : args.measure;
  const auto measure = cohlb::measure_by_name(measure_name);
  if (!measure) {
    std::cerr << "error[unknown_measure]: unknown measure '" << measure_name << "'\n";
    return static_cast<int>(cohlb::ProblemErrorCode::unknown_measure);
  }

  cohlb::Schedule schedule;
  problem.schedule.apply(schedule);
  if (args.tolerance) schedule.tolerance = *args.tolerance;
  if (args.max_rounds) schedule.max_rounds = *args.max_rounds;

  cohlb::EstimateOptions options;
  options.threads = args.threads;
  if (args.sampling == "real") options.field = cohlb::SampleField::real;
  if (args.sampling == "complex") options.field = cohlb::SampleField::complex;
  const std::uint64_t seed = args.seed.value_or(problem.seed.value_or(kDefaultSeed));

  cohlb::EstimationResult result;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    options.kernels = &cohlb::kernels_by_name(args.kernel);
    schedule.validate();
    result = cohlb::estimate(problem.constraint_set(), *measure, schedule, seed, options);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error[invalid_value]: " << e.what() << "\n";
    return static_cast<int>(cohlb::ProblemErrorCode::invalid_value);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string record = cohlb::result_record(result, schedule, wall).dump(2) + "\n";
  if (args.out.empty()) {
    std::cout << record;
  } else if (!write_file(args.out, record)) {
    std::cerr << "error[io]: cannot write '" << args.out << "'\n";
    return kExitIo;
  }
  if (!args.trace.empty() && !write_file(args.trace, cohlb::trace_csv(result))) {
    std::cerr << "error[io]: cannot write '" << args.trace << "'\n";
    return kExitIo;
  }

  std::cerr << "status=" << cohlb::to_string(result.status) << " lower_bound=" << result.lower_bound
            << " rounds=" << result.rounds.size() << " wall=" << wall << "s\n";
  switch (result.status) {
    case cohlb::EstimationStatus::converged: return kExitOk;
    case cohlb::EstimationStatus::diverged_unbounded: return kExitDiverged;
    case cohlb::EstimationStatus::max_rounds_exhausted: return kExitMaxRounds;
  }
  return kExitIo;
}

json photon_l1_report() {
  const cohlb::PhotonFixture fx;
  const auto r = cohlb::l1_lower_bound_analytic(fx);
  return {{"fixture", "photon_l1"},
          {"measure", "l1"},
          {"lower_bound", r.lower_bound},
          {"interval", {fx.lower, fx.upper}},
          {"dual",
           {{"reduction", "isotropic family (1-p) I/4 + p |Psi><Psi|, -1/3 <= p <= 1"},
            {"inner", "3|p| - (1/4 - lower + 3p/4) mu + (1/4 - upper + 3p/4) nu"},
            {"lower_slack_at_p0", 0.25 - fx.lower},
            {"upper_slack_at_p0", 0.25 - fx.upper},
            {"p_star", r.p_star},
            {"mu", r.mu},
            {"nu", r.nu},
            {"inner_value_at_argmax", cohlb::l1_dual_inner(fx, r.mu, r.nu)}}}};
}

json photon_geometric_report() {
  const cohlb::PhotonFixture fx;
  const auto r = cohlb::geometric_lower_bound_analytic(fx);
  return {{"fixture", "photon_geometric"},
          {"measure", "geometric"},
          {"lower_bound", r.lower_bound},
          {"interval", {fx.lower, fx.upper}},
          {"dual",
           {{"closed_form", "-sqrt(x^2 + x + 1)/2 + c_mu mu + c_nu nu + 1/2, x = nu - mu"},
            {"c_mu", fx.lower - 0.5},
            {"c_nu", 0.5 - fx.upper},
            {"x", r.x},
            {"mu", r.mu},
            {"nu", r.nu},
            {"min_eigenvalue_at_x", cohlb::photon_min_eigenvalue(r.x)}}}};
}

int run_oracle(const std::string& name) {
  const std::map<std::string, json (*)()> fixtures = {{"photon_l1", &photon_l1_report},
                                                      {"photon_geometric", &photon_geometric_report}};
  const auto it = fixtures.find(name);
  if (it == fixtures.end()) {
    std::cerr << "error: unknown fixture '" << name << "'. Available fixtures:";
    for (const auto& [key, _] : fixtures) std::cerr << " " << key;
    std::cerr << "\n";
    return kExitIo;
  }
  std::cout << it->second().dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greatest lower bounds of coherence measures from expectation-value intervals"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Run the soft-min refinement estimator on a problem file");
  estimate->add_option("--problem", est.problem, "Problem JSON file")->required();
  estimate->add_option("--measure", est.measure, "Override the problem's measure (l1, geometric, relative_entropy)");
  estimate->add_option("--seed", est.seed, "RNG seed (default: problem seed, else 42)");
  estimate->add_option("--tolerance", est.tolerance, "Stability tolerance epsilon");
  estimate->add_option("--max-rounds", est.max_rounds, "Maximum refinement rounds");
  estimate->add_option("--out", est.out, "Write the JSON result record here (default: stdout)");
  estimate->add_option("--trace", est.trace, "Write the per-round CSV trace here");
  estimate->add_option("--threads", est.threads, "Workers for per-state evaluation")->check(CLI::PositiveNumber);
  estimate->add_option("--sampling", est.sampling, "Amplitude field: auto, real or complex")
      ->check(CLI::IsMember({"auto", "real", "complex"}));
  estimate->add_option("--kernel", est.kernel, "Soft-min kernel: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  std::string fixture;
  auto* oracle = app.add_subcommand("oracle", "Print the analytic bound for a built-in fixture");
  oracle->add_option("fixture", fixture, "photon_l1 or photon_geometric")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitIo;
  }

  if (estimate->parsed()) return run_estimate(est);
  return run_oracle(fixture);
}
