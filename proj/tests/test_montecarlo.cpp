#include <gtest/gtest.h>

#include "twoxor/census.hpp"
#include "twoxor/json_io.hpp"
#include "twoxor/montecarlo.hpp"

using namespace twoxor;

TEST(Trials, SmallCaseMatchesExact) {
  auto r = run_trials(2, 1, 100000, 11);
  EXPECT_LT(std::fabs(r.sat_frequency - 0.75), 3 * r.standard_errors.at("sat"));
  std::uint64_t total = r.false_count;
  for (const auto& [p, c] : r.class_histogram) total += c;
  EXPECT_EQ(total, r.trials);
}

TEST(Trials, SubcriticalMatchesExact) {
  auto r = run_trials(100, 40, 100000, 5);
  double exact = to_double(prob_sat_exact(40, 100));
  EXPECT_LT(std::fabs(r.sat_frequency - exact), 4 * r.standard_errors.at("sat"));
}

TEST(Trials, RejectsZeroTrials) { EXPECT_THROW(run_trials(3, 2, 0, 1), UsageError); }

TEST(Trials, ParallelismDoesNotChangeResults) {
  auto a = report_json(run_trials(30, 20, 20000, 99, 1)).dump();
  auto b = report_json(run_trials(30, 20, 20000, 99, 3)).dump();
  auto c = report_json(run_trials(30, 20, 20000, 99, 8)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_NE(a, report_json(run_trials(30, 20, 20000, 100, 1)).dump());
}

TEST(Trials, SupportNeverViolated) {
  auto r = run_trials(8, 3, 50000, 3);
  for (const auto& [p, c] : r.class_histogram) EXPECT_GE(3 + p.num_parts(), 8u) << p.to_string();
}

TEST(Compare, ExactPredictionsPass) {
  const std::size_t n = 4, m = 3;
  auto r = run_trials(n, m, 200000, 21);
  Predictions pred;
  pred.sat = to_double(prob_sat_exact(m, n));
  for (const auto& c : full_distribution(n, m).classes) pred.prob_class[c.partition] = to_double(c.prob_class);
  auto v = compare(r, pred);
  EXPECT_TRUE(all_pass(v));
  for (const auto& x : v) EXPECT_NE(x.status, VerdictStatus::kUntestable);
}

TEST(Compare, WrongPredictionFails) {
  auto r = run_trials(2, 1, 100000, 2);
  Predictions pred;
  pred.sat = 0.75 + 10 * r.standard_errors.at("sat");
  auto v = compare(r, pred);
  EXPECT_EQ(v[0].status, VerdictStatus::kFail);
  EXPECT_GT(std::fabs(v[0].z), 4.0);
}

TEST(Compare, MissingPredictionIsUntestable) {
  auto r = run_trials(3, 2, 1000, 2);
  auto v = compare(r, Predictions{});
  for (const auto& x : v) EXPECT_EQ(x.status, VerdictStatus::kUntestable);
  EXPECT_TRUE(all_pass(v));
}

TEST(Compare, ZeroSupportClass) {
  // two blocks of two cannot appear with one clause
  auto r = run_trials(4, 1, 10000, 4);
  Predictions pred;
  pred.prob_class[IntegerPartition::parse("2+2")] = 0.0;
  auto v = compare(r, pred);
  ASSERT_EQ(v.back().estimand, "2+2");
  EXPECT_EQ(v.back().count, 0u);
  EXPECT_EQ(v.back().status, VerdictStatus::kPass);
}

TEST(Compare, SmallCountsUseScoreStatistic) {
  auto v = judge("rare", 3, 100000, 5e-5);
  EXPECT_NEAR(v.z, (3e-5 - 5e-5) / std::sqrt(5e-5 * (1 - 5e-5) / 1e5), 1e-9);
  EXPECT_EQ(v.status, VerdictStatus::kPass);
  EXPECT_EQ(judge("never", 0, 1000, 0.0).status, VerdictStatus::kPass);
  EXPECT_EQ(judge("impossible", 1, 1000, 0.0).status, VerdictStatus::kFail);
}

TEST(MultigraphProcess, FrequenciesFollowKappa) {
  auto v = multigraph_frequency_check(2, 2, 200000, 8, 2);
  EXPECT_EQ(v.size(), 6u);
  EXPECT_TRUE(all_pass(v));
}
