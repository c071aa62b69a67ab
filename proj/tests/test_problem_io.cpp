#include <gtest/gtest.h>

#include "cohlb/oracles.hpp"
#include "cohlb/problem_io.hpp"
#include "test_support.hpp"

using namespace cohlb;
using nlohmann::json;

namespace {

json photon_json() {
  ProblemFile p{4, PhotonFixture{}.constraints().items(), "l1", {}, std::nullopt};
  return serialize_problem(p);
}

ProblemErrorCode code_of(const json& j) {
  try {
    parse_problem(j);
  } catch (const ProblemError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ProblemErrorCode::io;
}

}  // namespace

TEST(ParseProblem, BundledPhotonFile) {
  const auto p = parse_problem_file(std::string(COHLB_DATA_DIR) + "/photon_l1.json");
  EXPECT_EQ(p.dim, 4u);
  EXPECT_EQ(p.measure, "l1");
  ASSERT_EQ(p.constraints.size(), 1u);
  EXPECT_EQ(p.constraints[0].lower, 0.0088);
  EXPECT_EQ(p.constraints[0].upper, 0.0114);
  EXPECT_TRUE(p.constraints[0].op == PhotonFixture::witness());
  const auto g = parse_problem_file(std::string(COHLB_DATA_DIR) + "/photon_geometric.json");
  EXPECT_EQ(g.measure, "geometric");
}

TEST(ParseProblem, InvertedIntervalNamesTheConstraint) {
  auto j = photon_json();
  j["constraints"][0]["lower"] = 0.5;
  j["constraints"][0]["upper"] = 0.1;
  try {
    parse_problem(j);
    FAIL() << "expected an error";
  } catch (const ProblemError& e) {
    EXPECT_EQ(e.code(), ProblemErrorCode::inverted_interval);
    EXPECT_EQ(e.constraint(), 1u);
    EXPECT_NE(std::string(e.what()).find("constraint 1"), std::string::npos);
  }
}

TEST(ParseProblem, NonHermitianOperator) {
  auto j = photon_json();
  j["constraints"][0]["operator"][0][1] = {0.25, 0.1};
  EXPECT_EQ(code_of(j), ProblemErrorCode::non_hermitian);
}

TEST(ParseProblem, ErrorClassesAreDistinct) {
  auto j = photon_json();
  j["constraints"][0]["operator"].erase(3);
  EXPECT_EQ(code_of(j), ProblemErrorCode::dimension_mismatch);

  j = photon_json();
  j["colour"] = "blue";
  EXPECT_EQ(code_of(j), ProblemErrorCode::unknown_field);

  j = photon_json();
  j["constraints"][0]["weight"] = 1;
  EXPECT_EQ(code_of(j), ProblemErrorCode::unknown_field);

  j = photon_json();
  j["schedule"] = {{"max_round", 3}};
  EXPECT_EQ(code_of(j), ProblemErrorCode::unknown_field);

  j = photon_json();
  j["measure"] = "negativity";
  EXPECT_EQ(code_of(j), ProblemErrorCode::unknown_measure);

  j = photon_json();
  j["schedule"] = {{"tolerance", -1.0}};
  EXPECT_EQ(code_of(j), ProblemErrorCode::invalid_value);

  j = photon_json();
  j.erase("dim");
  EXPECT_EQ(code_of(j), ProblemErrorCode::malformed);

  EXPECT_THROW(parse_problem_text("{\"dim\": 4,"), ProblemError);
  EXPECT_THROW(parse_problem_file("/nonexistent/problem.json"), ProblemError);
}

TEST(ParseProblem, SecondConstraintIsNamed) {
  auto j = photon_json();
  j["constraints"].push_back(j["constraints"][0]);
  j["constraints"][1]["upper"] = 0.0;
  try {
    parse_problem(j);
    FAIL();
  } catch (const ProblemError& e) {
    EXPECT_EQ(e.constraint(), 2u);
  }
}

TEST(ParseProblem, RoundTripsRandomProblems) {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t d = 1 + rep % 5;
    ProblemFile p;
    p.dim = d;
    for (int k = 0; k <= rep % 3; ++k) {
      const double a = u(rng);
      p.constraints.push_back({testing_support::random_hermitian(rng, d), a, a + std::abs(u(rng))});
    }
    p.measure = measure_names()[rep % 3];
    if (rep % 2) {
      p.schedule.max_rounds = 7 + rep;
      p.schedule.tolerance = 1e-5;
      p.schedule.shrink = 0.3;
    }
    if (rep % 3 == 0) p.seed = 1234567890123ull + rep;
    const auto text = serialize_problem(p).dump();
    EXPECT_TRUE(parse_problem_text(text) == p) << text;
  }
}

TEST(ResultRecord, TraceRowsMatchRounds) {
  const auto cs = PhotonFixture{}.constraints();
  Schedule s;
  s.max_rounds = 5;
  const auto r = estimate(cs, geometric_measure(), s, 42);
  const auto rec = result_record(r, s, 0.0);
  const auto csv = trace_csv(r);
  EXPECT_EQ(csv.rfind("k,L,T,maxF,ascent_iters\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), rec["rounds"].size() + 1);
  EXPECT_EQ(rec["rounds"].size(), r.rounds.size());
  EXPECT_EQ(rec["rounds"][0]["L"], 100);
  EXPECT_EQ(rec["rounds"][1]["T"], 80.0);
  EXPECT_EQ(rec["rounds"][0]["max_F"].get<double>(), r.rounds[0].max_f);
  EXPECT_EQ(rec["seed"], 42);
  EXPECT_EQ(rec["status"], "max_rounds_exhausted");
  EXPECT_EQ(rec["sampling"]["rng"], "mt19937_64/box-muller");
}

TEST(ResultRecord, DivergedBoundIsNull) {
  const ConstraintSet cs(4, {{PhotonFixture::witness(), 2.0, 3.0}});
  const auto r = estimate(cs, l1_measure(), Schedule{}, 1);
  const auto rec = result_record(r, Schedule{}, 0.0);
  EXPECT_TRUE(rec["lower_bound"].is_null());
  EXPECT_EQ(rec["status"], "diverged_unbounded");
}

TEST(TraceCsv, SixSignificantDigits) {
  EstimationResult r{};
  r.rounds.push_back({3, 300, 180.0, 0.123456789, Multipliers(1), 17, AscentStatus::converged});
  EXPECT_EQ(trace_csv(r), "k,L,T,maxF,ascent_iters\n3,300,180,0.123457,17\n");
}

TEST(TraceCsv, ByteIdenticalAcrossRuns) {
  const auto cs = PhotonFixture{}.constraints();
  Schedule s;
  s.max_rounds = 6;
  EXPECT_EQ(trace_csv(estimate(cs, l1_measure(), s, 5)), trace_csv(estimate(cs, l1_measure(), s, 5)));
}
