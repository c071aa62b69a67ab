#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cohlb/constraints.hpp"
#include "cohlb/estimator.hpp"

namespace cohlb {

/// Error classes for problem ingestion. The numeric value doubles as the CLI
/// exit code.
enum class ProblemErrorCode : int {
  io = 1,
  malformed = 4,
  non_hermitian = 5,
  inverted_interval = 6,
  dimension_mismatch = 7,
  unknown_field = 8,
  unknown_measure = 9,
  invalid_value = 10,
};

std::string_view to_string(ProblemErrorCode c) noexcept;

class ProblemError : public std::runtime_error {
 public:
  ProblemError(ProblemErrorCode code, std::string message, std::optional<std::size_t> constraint = std::nullopt);

  ProblemErrorCode code() const noexcept { return code_; }
  /// 1-based index of the offending constraint, if any.
  std::optional<std::size_t> constraint() const noexcept { return constraint_; }

 private:
  ProblemErrorCode code_;
  std::optional<std::size_t> constraint_;
};

/// Schedule fields a problem file may override. Unset fields keep the
/// defaults.
struct ScheduleOverrides {
  std::optional<std::size_t> initial_count;
  std::optional<std::size_t> count_increment;
  std::optional<double> temperature_scale;
  std::optional<double> temperature_power;
  std::optional<double> tolerance;
  std::optional<int> stability_window;
  std::optional<int> max_rounds;
  std::optional<double> initial_step;
  std::optional<double> shrink;
  std::optional<double> sufficient_increase;
  std::optional<double> gradient_tolerance;
  std::optional<int> max_iterations;

  void apply(Schedule& s) const;
  bool empty() const noexcept;
  friend bool operator==(const ScheduleOverrides&, const ScheduleOverrides&) = default;
};

struct ProblemFile {
  std::size_t dim;
  std::vector<IntervalConstraint> constraints;
  std::string measure;
  ScheduleOverrides schedule;
  std::optional<std::uint64_t> seed;

  ConstraintSet constraint_set() const { return ConstraintSet(dim, constraints); }
};

bool operator==(const ProblemFile& a, const ProblemFile& b);

/// Validates structure, Hermiticity, interval order, dimensions and the
/// measure name. Throws ProblemError.
ProblemFile parse_problem(const nlohmann::json& j);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile parse_problem_file(const std::filesystem::path& path);

nlohmann::json serialize_problem(const ProblemFile& p);

/// Full-precision result record.
nlohmann::json result_record(const EstimationResult& r, const Schedule& schedule, double wall_time_seconds);

/// Header `k,L,T,maxF,ascent_iters`, one row per round, reals with 6
/// significant digits.
std::string trace_csv(const EstimationResult& r);

nlohmann::json schedule_to_json(const Schedule& s);

}  // namespace cohlb
