#include "cohlb/problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cohlb/measures.hpp"

namespace cohlb {

using nlohmann::json;

std::string_view to_string(ProblemErrorCode c) noexcept {
  switch (c) {
    case ProblemErrorCode::io: return "io";
    case ProblemErrorCode::malformed: return "malformed";
    case ProblemErrorCode::non_hermitian: return "non_hermitian";
    case ProblemErrorCode::inverted_interval: return "inverted_interval";
    case ProblemErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ProblemErrorCode::unknown_field: return "unknown_field";
    case ProblemErrorCode::unknown_measure: return "unknown_measure";
    case ProblemErrorCode::invalid_value: return "invalid_value";
  }
  return "unknown";
}

namespace {

std::string with_location(const std::string& message, std::optional<std::size_t> constraint) {
  if (!constraint) return message;
  return "constraint " + std::to_string(*constraint) + ": " + message;
}

[[noreturn]] void fail(ProblemErrorCode code, const std::string& msg, std::optional<std::size_t> k = std::nullopt) {
  throw ProblemError(code, msg, k);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                    std::optional<std::size_t> k = std::nullopt) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(ProblemErrorCode::unknown_field, "unknown field '" + key + "' in " + where, k);
}

double get_number(const json& j, const std::string& what, std::optional<std::size_t> k = std::nullopt) {
  if (!j.is_number()) fail(ProblemErrorCode::malformed, what + " must be a number", k);
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ProblemErrorCode::invalid_value, what + " must be finite", k);
  return v;
}

template <typename Int>
Int get_integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(ProblemErrorCode::malformed, what + " must be an integer");
  if constexpr (std::is_unsigned_v<Int>) {
    if (j.is_number_unsigned()) return j.get<Int>();
    if (j.get<std::int64_t>() < 0) fail(ProblemErrorCode::invalid_value, what + " must be nonnegative");
  }
  return j.get<Int>();
}

ComplexMatrix parse_operator(const json& j, std::size_t dim, std::size_t k) {
  if (!j.is_array()) fail(ProblemErrorCode::malformed, "operator must be an array of rows", k);
  if (j.size() != dim)
    fail(ProblemErrorCode::dimension_mismatch,
         "operator has " + std::to_string(j.size()) + " rows, expected " + std::to_string(dim), k);
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& row = j[r];
    if (!row.is_array()) fail(ProblemErrorCode::malformed, "operator row " + std::to_string(r + 1) + " is not an array", k);
    if (row.size() != dim)
      fail(ProblemErrorCode::dimension_mismatch,
           "operator row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) + " entries, expected " +
               std::to_string(dim),
           k);
    for (std::size_t c = 0; c < dim; ++c) {
      const auto& z = row[c];
      if (!z.is_array() || z.size() != 2)
        fail(ProblemErrorCode::malformed, "operator entry must be an [re, im] pair", k);
      m(r, c) = {get_number(z[0], "operator entry", k), get_number(z[1], "operator entry", k)};
    }
  }
  return m;
}

const std::set<std::string> kScheduleKeys = {"initial_count",   "count_increment", "temperature_scale",
                                             "temperature_power", "tolerance",      "stability_window",
                                             "max_rounds",      "ascent"};
const std::set<std::string> kAscentKeys = {"initial_step", "shrink", "sufficient_increase", "gradient_tolerance",
                                           "max_iterations"};

ScheduleOverrides parse_schedule(const json& j) {
  if (!j.is_object()) fail(ProblemErrorCode::malformed, "schedule must be an object");
  reject_unknown(j, kScheduleKeys, "schedule");
  ScheduleOverrides o;
  if (j.contains("initial_count")) o.initial_count = get_integer<std::size_t>(j["initial_count"], "schedule.initial_count");
  if (j.contains("count_increment"))
    o.count_increment = get_integer<std::size_t>(j["count_increment"], "schedule.count_increment");
  if (j.contains("temperature_scale")) o.temperature_scale = get_number(j["temperature_scale"], "schedule.temperature_scale");
  if (j.contains("temperature_power")) o.temperature_power = get_number(j["temperature_power"], "schedule.temperature_power");
  if (j.contains("tolerance")) o.tolerance = get_number(j["tolerance"], "schedule.tolerance");
  if (j.contains("stability_window")) o.stability_window = get_integer<int>(j["stability_window"], "schedule.stability_window");
  if (j.contains("max_rounds")) o.max_rounds = get_integer<int>(j["max_rounds"], "schedule.max_rounds");
  if (j.contains("ascent")) {
    const auto& a = j["ascent"];
    if (!a.is_object()) fail(ProblemErrorCode::malformed, "schedule.ascent must be an object");
    reject_unknown(a, kAscentKeys, "schedule.ascent");
    if (a.contains("initial_step")) o.initial_step = get_number(a["initial_step"], "ascent.initial_step");
    if (a.contains("shrink")) o.shrink = get_number(a["shrink"], "ascent.shrink");
    if (a.contains("sufficient_increase")) o.sufficient_increase = get_number(a["sufficient_increase"], "ascent.sufficient_increase");
    if (a.contains("gradient_tolerance")) o.gradient_tolerance = get_number(a["gradient_tolerance"], "ascent.gradient_tolerance");
    if (a.contains("max_iterations")) o.max_iterations = get_integer<int>(a["max_iterations"], "ascent.max_iterations");
  }
  Schedule probe;
  o.apply(probe);
  try {
    probe.validate();
  } catch (const std::invalid_argument& e) {
    fail(ProblemErrorCode::invalid_value, e.what());
  }
  return o;
}

}  // namespace

ProblemError::ProblemError(ProblemErrorCode code, std::string message, std::optional<std::size_t> constraint)
    : std::runtime_error(with_location(message, constraint)), code_(code), constraint_(constraint) {}

void ScheduleOverrides::apply(Schedule& s) const {
  if (initial_count) s.initial_count = *initial_count;
  if (count_increment) s.count_increment = *count_increment;
  if (temperature_scale) s.temperature_scale = *temperature_scale;
  if (temperature_power) s.temperature_power = *temperature_power;
  if (tolerance) s.tolerance = *tolerance;
  if (stability_window) s.stability_window = *stability_window;
  if (max_rounds) s.max_rounds = *max_rounds;
  if (initial_step) s.ascent.initial_step = *initial_step;
  if (shrink) s.ascent.shrink = *shrink;
  if (sufficient_increase) s.ascent.sufficient_increase = *sufficient_increase;
  if (gradient_tolerance) s.ascent.gradient_tolerance = *gradient_tolerance;
  if (max_iterations) s.ascent.max_iterations = *max_iterations;
}

bool ScheduleOverrides::empty() const noexcept { return *this == ScheduleOverrides{}; }

bool operator==(const ProblemFile& a, const ProblemFile& b) {
  if (a.dim != b.dim || a.measure != b.measure || a.schedule != b.schedule || a.seed != b.seed) return false;
  if (a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t k = 0; k < a.constraints.size(); ++k) {
    const auto& x = a.constraints[k];
    const auto& y = b.constraints[k];
    if (!(x.op == y.op) || x.lower != y.lower || x.upper != y.upper) return false;
  }
  return true;
}

ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) fail(ProblemErrorCode::malformed, "problem must be a JSON object");
  reject_unknown(j, {"dim", "constraints", "measure", "schedule", "seed"}, "problem");
  for (const char* key : {"dim", "constraints", "measure"})
    if (!j.contains(key)) fail(ProblemErrorCode::malformed, std::string("missing field '") + key + "'");

  ProblemFile p;
  p.dim = get_integer<std::size_t>(j["dim"], "dim");
  if (p.dim == 0) fail(ProblemErrorCode::invalid_value, "dim must be positive");

  if (!j["measure"].is_string()) fail(ProblemErrorCode::malformed, "measure must be a string");
  p.measure = j["measure"].get<std::string>();
  if (!measure_by_name(p.measure)) fail(ProblemErrorCode::unknown_measure, "unknown measure '" + p.measure + "'");

  const auto& cons = j["constraints"];
  if (!cons.is_array()) fail(ProblemErrorCode::malformed, "constraints must be an array");
  if (cons.empty()) fail(ProblemErrorCode::invalid_value, "at least one constraint is required");
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const std::size_t k = i + 1;
    const auto& c = cons[i];
    if (!c.is_object()) fail(ProblemErrorCode::malformed, "constraint must be an object", k);
    reject_unknown(c, {"operator", "lower", "upper"}, "constraint", k);
    for (const char* key : {"operator", "lower", "upper"})
      if (!c.contains(key)) fail(ProblemErrorCode::malformed, std::string("missing field '") + key + "'", k);
    auto m = parse_operator(c["operator"], p.dim, k);
    if (!is_hermitian(m)) fail(ProblemErrorCode::non_hermitian, "operator is not Hermitian", k);
    const double lo = get_number(c["lower"], "lower", k);
    const double hi = get_number(c["upper"], "upper", k);
    if (lo > hi) fail(ProblemErrorCode::inverted_interval, "lower bound exceeds upper bound", k);
    p.constraints.push_back({HermitianOperator(std::move(m)), lo, hi});
  }

  if (j.contains("schedule")) p.schedule = parse_schedule(j["schedule"]);
  if (j.contains("seed")) p.seed = get_integer<std::uint64_t>(j["seed"], "seed");
  return p;
}

ProblemFile parse_problem_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ProblemErrorCode::malformed, std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(j);
}

ProblemFile parse_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ProblemErrorCode::io, "cannot open problem file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

json serialize_problem(const ProblemFile& p) {
  json cons = json::array();
  for (const auto& c : p.constraints) {
    json op = json::array();
    const auto& m = c.op.matrix();
    for (std::size_t r = 0; r < m.dim(); ++r) {
      json row = json::array();
      for (std::size_t col = 0; col < m.dim(); ++col) row.push_back({m(r, col).real(), m(r, col).imag()});
      op.push_back(std::move(row));
    }
    cons.push_back({{"operator", std::move(op)}, {"lower", c.lower}, {"upper", c.upper}});
  }
  json j = {{"dim", p.dim}, {"constraints", std::move(cons)}, {"measure", p.measure}};
  if (!p.schedule.empty()) {
    const auto& o = p.schedule;
    json s = json::object();
    if (o.initial_count) s["initial_count"] = *o.initial_count;
    if (o.count_increment) s["count_increment"] = *o.count_increment;
    if (o.temperature_scale) s["temperature_scale"] = *o.temperature_scale;
    if (o.temperature_power) s["temperature_power"] = *o.temperature_power;
    if (o.tolerance) s["tolerance"] = *o.tolerance;
    if (o.stability_window) s["stability_window"] = *o.stability_window;
    if (o.max_rounds) s["max_rounds"] = *o.max_rounds;
    json a = json::object();
    if (o.initial_step) a["initial_step"] = *o.initial_step;
    if (o.shrink) a["shrink"] = *o.shrink;
    if (o.sufficient_increase) a["sufficient_increase"] = *o.sufficient_increase;
    if (o.gradient_tolerance) a["gradient_tolerance"] = *o.gradient_tolerance;
    if (o.max_iterations) a["max_iterations"] = *o.max_iterations;
    if (!a.empty()) s["ascent"] = std::move(a);
    j["schedule"] = std::move(s);
  }
  if (p.seed) j["seed"] = *p.seed;
  return j;
}

json schedule_to_json(const Schedule& s) {
  return {{"initial_count", s.initial_count},
          {"count_increment", s.count_increment},
          {"temperature_scale", s.temperature_scale},
          {"temperature_power", s.temperature_power},
          {"tolerance", s.tolerance},
          {"stability_window", s.stability_window},
          {"max_rounds", s.max_rounds},
          {"ascent",
           {{"initial_step", s.ascent.initial_step},
            {"shrink", s.ascent.shrink},
            {"sufficient_increase", s.ascent.sufficient_increase},
            {"gradient_tolerance", s.ascent.gradient_tolerance},
            {"max_iterations", s.ascent.max_iterations},
            {"divergence_threshold", s.ascent.divergence_threshold}}}};
}

json result_record(const EstimationResult& r, const Schedule& schedule, double wall_time_seconds) {
  json rounds = json::array();
  for (const auto& rr : r.rounds) {
    rounds.push_back({{"k", rr.k},
                      {"L", rr.count},
                      {"T", rr.temperature},
                      {"max_F", rr.max_f},
                      {"mu", rr.multipliers.mu()},
                      {"nu", rr.multipliers.nu()},
                      {"ascent_iterations", rr.ascent_iterations},
                      {"ascent_status", std::string(to_string(rr.ascent_status))}});
  }
  json j = {{"lower_bound", std::isfinite(r.lower_bound) ? json(r.lower_bound) : json(nullptr)},
            {"status", std::string(to_string(r.status))},
            {"converged_round", r.converged_round ? json(*r.converged_round) : json(nullptr)},
            {"seed", r.seed},
            {"measure", r.measure},
            {"sampling", {{"mode", std::string(to_string(r.mode))},
                          {"field", std::string(to_string(r.field))},
                          {"rng", r.rng}}},
            {"kernel", r.kernel},
            {"schedule", schedule_to_json(schedule)},
            {"rounds", std::move(rounds)},
            {"wall_time", wall_time_seconds}};
  if (r.measure == "relative_entropy") j["units"] = "bits";
  return j;
}

std::string trace_csv(const EstimationResult& r) {
  std::string out = "k,L,T,maxF,ascent_iters\n";
  char buf[160];
  for (const auto& rr : r.rounds) {
    std::snprintf(buf, sizeof buf, "%d,%zu,%.6g,%.6g,%d\n", rr.k, rr.count, rr.temperature, rr.max_f,
                  rr.ascent_iterations);
    out += buf;
  }
  return out;
}

}  // namespace cohlb
