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

#ifndef TEMPO_METRICS_H_
#define TEMPO_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/date.h"

namespace tempo {

enum class TimeUnit { kDays, kYears };

std::string_view UnitName(TimeUnit unit);
TimeUnit ParseUnit(std::string_view name);
// Years are 365.25 days.
double ToUnit(double days, TimeUnit unit);

using Ranking = std::vector<std::string>;

// Fraction of queries whose gold is within the first k entries.
// Throws std::invalid_argument when k < 1 or the sizes disagree.
double RecallAtK(std::span<const Ranking> rankings,
                 std::span<const std::string> golds, int k);

// Mean reciprocal rank of the gold; an absent gold contributes 0.
double MeanReciprocalRank(std::span<const Ranking> rankings,
                          std::span<const std::string> golds);

// A metric value with its unit and the bookkeeping behind it.
struct TimeMetric {
  double value = 0.0;
  TimeUnit unit = TimeUnit::kDays;
  size_t truncated = 0;   // queries with fewer than k results
  size_t penalized = 0;   // documents charged the missing-time penalty
  size_t clamped = 0;     // negative lags clamped to zero (freshness only)
  size_t skipped = 0;     // queries left out of the average
};

// Clue times of the ranked documents of one query.
struct AlignmentCase {
  PartialDate t_q;
  std::vector<std::vector<PartialDate>> clue_times;
};

// Mean over queries of the mean squared (t_q, t_c) gap of the top k.
// Documents without a clue time are charged penalty_days.
TimeMetric TimeVarAtK(std::span<const AlignmentCase> cases, int k,
                      TimeUnit unit, int64_t penalty_days);

// Publication times of the ranked documents of one query together with the
// publication time of its freshest valid document.
struct FreshnessCase {
  std::optional<PartialDate> freshest;
  std::vector<std::optional<PartialDate>> pub_times;
};

// Mean over queries of the mean lag (freshest - t_d) of the top k. Lags
// below zero are clamped and counted; undated documents are charged
// penalty_days; queries without a freshest time are skipped and counted.
TimeMetric MfgAtK(std::span<const FreshnessCase> cases, int k, TimeUnit unit,
                  int64_t penalty_days);

struct MetricsReport {
  std::string mode;
  std::string scenario;
  int k = 5;
  size_t n_queries = 0;
  double r_at_1 = 0.0;
  double r_at_5 = 0.0;
  double mrr = 0.0;
  std::optional<TimeMetric> timevar_at_k;
  std::optional<TimeMetric> mfg_at_k;
};

// Frozen field names: mode, scenario, k, n_queries, r_at_1, r_at_5, mrr,
// timevar_at_k {value, unit, truncated, penalized, skipped} or null,
// mfg_at_k {value, unit, truncated, penalized, clamped, skipped} or null.
std::string ReportToJson(const MetricsReport& report);
std::string ReportToTable(const MetricsReport& report);

}  // namespace tempo

#endif  // TEMPO_METRICS_H_
