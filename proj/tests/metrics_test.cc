// Copyright 2026 The Tempo Rerank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tempo/metrics.h"

#include <gtest/gtest.h>
#include "json.hpp"

#include "metrics_oracle.h"

namespace tempo {
namespace {

constexpr int64_t kPenalty = 365;

TEST(Recall, Examples) {
  const std::vector<Ranking> r = {{"a", "b", "g", "c"}};
  const std::vector<std::string> g = {"g"};
  EXPECT_EQ(RecallAtK(r, g, 5), 1.0);
  EXPECT_EQ(RecallAtK(r, g, 2), 0.0);
  const std::vector<Ranking> all = {{"x"}, {"y", "z"}};
  const std::vector<std::string> gs = {"x", "y"};
  EXPECT_EQ(RecallAtK(all, gs, 1), 1.0);
  EXPECT_THROW(RecallAtK(all, g, 1), std::invalid_argument);
  EXPECT_THROW(RecallAtK(all, gs, 0), std::invalid_argument);
}

TEST(Mrr, Examples) {
  const std::vector<Ranking> r = {{"g"}, {"a", "g"}, {"a", "b", "c", "g"}};
  const std::vector<std::string> g = {"g", "g", "g"};
  EXPECT_NEAR(MeanReciprocalRank(r, g), 7.0 / 12.0, 1e-15);
  const std::vector<Ranking> miss = {{"a"}, {"g"}};
  const std::vector<std::string> g2 = {"g", "g"};
  EXPECT_EQ(MeanReciprocalRank(miss, g2), 0.5);
}

AlignmentCase Align(const char* tq, std::vector<const char*> tcs) {
  AlignmentCase a{ParseDate(tq), {}};
  for (const char* t : tcs) a.clue_times.push_back({ParseDate(t)});
  return a;
}

TEST(TimeVar, Examples) {
  std::vector<AlignmentCase> c = {Align("2019", {"2019", "2019"})};
  EXPECT_EQ(TimeVarAtK(c, 2, TimeUnit::kYears, kPenalty).value, 0.0);

  // A 365.25-day gap is one year exactly; use day units with a 1-day unit
  // scale to keep the arithmetic exact.
  AlignmentCase one{ParseDate("2020-01-01"), {}};
  one.clue_times = {{ParseDate("2020-01-01")}, {ParseDate("2020-01-02")}};
  c = {one};
  EXPECT_EQ(TimeVarAtK(c, 2, TimeUnit::kDays, kPenalty).value, 0.5);

  AlignmentCase a{ParseDate("2020-01-10"), {}}, b = a;
  a.clue_times = {{ParseDate("2020-01-10")}, {ParseDate("2020-01-12")}};
  b.clue_times = {{ParseDate("2020-01-11")}, {ParseDate("2020-01-09")}};
  c = {a, b};
  EXPECT_EQ(TimeVarAtK(c, 2, TimeUnit::kDays, kPenalty).value, 1.5);
}

TEST(TimeVar, YearUnit) {
  EXPECT_EQ(ToUnit(365.25, TimeUnit::kYears), 1.0);
  const std::vector<AlignmentCase> c = {Align("2019", {"2019", "2021"})};
  const double g = ToUnit(IntervalGap(ParseDate("2019"), ParseDate("2021")).value,
                          TimeUnit::kYears);
  EXPECT_DOUBLE_EQ(TimeVarAtK(c, 2, TimeUnit::kYears, kPenalty).value, g * g / 2);
}

TEST(TimeVar, PenaltyAndTruncation) {
  AlignmentCase a{ParseDate("2020-01-10"), {{}, {ParseDate("2020-01-10")}}};
  const std::vector<AlignmentCase> c = {a};
  const TimeMetric m = TimeVarAtK(c, 5, TimeUnit::kDays, 10);
  EXPECT_EQ(m.value, 50.0);
  EXPECT_EQ(m.penalized, 1u);
  EXPECT_EQ(m.truncated, 1u);
}

TEST(Mfg, Examples) {
  FreshnessCase f{ParseDate("2024-03-10"),
                  {ParseDate("2024-03-10"), ParseDate("2024-03-08"), ParseDate("2024-03-06")}};
  std::vector<FreshnessCase> c = {f};
  EXPECT_EQ(MfgAtK(c, 3, TimeUnit::kDays, kPenalty).value, 2.0);
  f.pub_times = {ParseDate("2024-03-10")};
  c = {f};
  EXPECT_EQ(MfgAtK(c, 1, TimeUnit::kDays, kPenalty).value, 0.0);
  f.pub_times = {ParseDate("2024-03-12"), std::nullopt};
  c = {f, FreshnessCase{std::nullopt, {ParseDate("2024-03-12")}}};
  const TimeMetric m = MfgAtK(c, 2, TimeUnit::kDays, 8);
  EXPECT_EQ(m.value, 4.0);
  EXPECT_EQ(m.clamped, 1u);
  EXPECT_EQ(m.penalized, 1u);
  EXPECT_EQ(m.skipped, 1u);
}

TEST(Metrics, MatchBruteForce) {
  Rng rng(123);
  for (int t = 0; t < 200; ++t) {
    const oracle::MetricInstance m = oracle::RandomMetricInstance(rng);
    for (int k = 1; k <= 5; ++k) {
      EXPECT_NEAR(RecallAtK(m.rankings, m.golds, k), oracle::Recall(m, k), 1e-12);
    }
    EXPECT_NEAR(MeanReciprocalRank(m.rankings, m.golds), oracle::Mrr(m), 1e-12);
    EXPECT_NEAR(TimeVarAtK(m.align, m.k, TimeUnit::kDays, kPenalty).value,
                oracle::TimeVar(m, 1.0, kPenalty), 1e-12 * (1 + oracle::TimeVar(m, 1.0, kPenalty)));
    EXPECT_NEAR(TimeVarAtK(m.align, m.k, TimeUnit::kYears, kPenalty).value,
                oracle::TimeVar(m, 365.25, kPenalty), 1e-12);
    EXPECT_NEAR(MfgAtK(m.fresh, m.k, TimeUnit::kDays, kPenalty).value,
                oracle::Mfg(m, 1.0, kPenalty), 1e-12);
  }
}

TEST(Recall, MonotoneInK) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const oracle::MetricInstance m = oracle::RandomMetricInstance(rng);
    for (int k = 1; k < 8; ++k) {
      EXPECT_LE(RecallAtK(m.rankings, m.golds, k), RecallAtK(m.rankings, m.golds, k + 1));
    }
  }
}

TEST(Report, JsonFieldsFrozen) {
  MetricsReport r;
  r.mode = "full";
  r.scenario = "hyb";
  r.n_queries = 3;
  r.r_at_1 = 0.5;
  r.timevar_at_k = TimeMetric{};
  const auto j = nlohmann::ordered_json::parse(ReportToJson(r));
  std::vector<std::string> keys;
  for (const auto& [key, _] : j.items()) keys.push_back(key);
  EXPECT_EQ(keys, (std::vector<std::string>{"mode", "scenario", "k", "n_queries", "r_at_1",
                                            "r_at_5", "mrr", "timevar_at_k", "mfg_at_k"}));
  EXPECT_TRUE(j["mfg_at_k"].is_null());
  EXPECT_EQ(j["timevar_at_k"]["unit"], "days");
  EXPECT_NE(ReportToTable(r).find("full"), std::string::npos);
}

}  // namespace
}  // namespace tempo
