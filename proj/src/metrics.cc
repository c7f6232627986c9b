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

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "tempo/encode.h"

namespace tempo {

namespace {

void CheckSizes(size_t rankings, size_t golds) {
  if (rankings != golds) {
    throw std::invalid_argument("got " + std::to_string(rankings) +
                                " rankings but " + std::to_string(golds) +
                                " golds");
  }
}

// 1-based rank of gold, 0 when absent.
size_t RankOf(const Ranking& ranking, const std::string& gold) {
  auto it = std::find(ranking.begin(), ranking.end(), gold);
  return it == ranking.end() ? 0 : static_cast<size_t>(it - ranking.begin()) + 1;
}

nlohmann::ordered_json MetricJson(const std::optional<TimeMetric>& m,
                                  bool freshness) {
  if (!m) return nullptr;
  nlohmann::ordered_json j;
  j["value"] = m->value;
  j["unit"] = std::string(UnitName(m->unit));
  j["truncated"] = m->truncated;
  j["penalized"] = m->penalized;
  if (freshness) j["clamped"] = m->clamped;
  j["skipped"] = m->skipped;
  return j;
}

}  // namespace

std::string_view UnitName(TimeUnit unit) {
  return unit == TimeUnit::kDays ? "days" : "years";
}

TimeUnit ParseUnit(std::string_view name) {
  if (name == "days") return TimeUnit::kDays;
  if (name == "years") return TimeUnit::kYears;
  throw std::invalid_argument("unit must be 'days' or 'years'");
}

double ToUnit(double days, TimeUnit unit) {
  return unit == TimeUnit::kDays ? days : days / 365.25;
}

double RecallAtK(std::span<const Ranking> rankings,
                 std::span<const std::string> golds, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  CheckSizes(rankings.size(), golds.size());
  if (rankings.empty()) return 0.0;
  size_t hits = 0;
  for (size_t i = 0; i < rankings.size(); ++i) {
    const size_t r = RankOf(rankings[i], golds[i]);
    if (r != 0 && r <= static_cast<size_t>(k)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(rankings.size());
}

double MeanReciprocalRank(std::span<const Ranking> rankings,
                          std::span<const std::string> golds) {
  CheckSizes(rankings.size(), golds.size());
  if (rankings.empty()) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < rankings.size(); ++i) {
    const size_t r = RankOf(rankings[i], golds[i]);
    if (r != 0) sum += 1.0 / static_cast<double>(r);
  }
  return sum / static_cast<double>(rankings.size());
}

TimeMetric TimeVarAtK(std::span<const AlignmentCase> cases, int k,
                      TimeUnit unit, int64_t penalty_days) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  TimeMetric m;
  m.unit = unit;
  double total = 0.0;
  size_t counted = 0;
  for (const AlignmentCase& c : cases) {
    const size_t n =
        std::min(c.clue_times.size(), static_cast<size_t>(k));
    if (n < static_cast<size_t>(k)) ++m.truncated;
    if (n == 0) {
      ++m.skipped;
      continue;
    }
    double sum = 0.0;
    for (size_t j = 0; j < n; ++j) {
      const auto gap = RelevanceGap(c.t_q, c.clue_times[j]);
      double days;
      if (gap) {
        days = static_cast<double>(gap->value);
      } else {
        days = static_cast<double>(penalty_days);
        ++m.penalized;
      }
      const double g = ToUnit(days, unit);
      sum += g * g;
    }
    total += sum / static_cast<double>(n);
    ++counted;
  }
  m.value = counted ? total / static_cast<double>(counted) : 0.0;
  return m;
}

TimeMetric MfgAtK(std::span<const FreshnessCase> cases, int k, TimeUnit unit,
                  int64_t penalty_days) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  TimeMetric m;
  m.unit = unit;
  double total = 0.0;
  size_t counted = 0;
  for (const FreshnessCase& c : cases) {
    const size_t n = std::min(c.pub_times.size(), static_cast<size_t>(k));
    if (n < static_cast<size_t>(k)) ++m.truncated;
    if (n == 0 || !c.freshest) {
      ++m.skipped;
      continue;
    }
    const DayInterval star = IntervalOf(*c.freshest);
    double sum = 0.0;
    for (size_t j = 0; j < n; ++j) {
      double days;
      if (!c.pub_times[j]) {
        days = static_cast<double>(penalty_days);
        ++m.penalized;
      } else {
        const DayInterval d = IntervalOf(*c.pub_times[j]);
        if (d.last < star.first) {
          days = static_cast<double>(star.first.value - d.last.value);
        } else {
          if (star.last < d.first) ++m.clamped;
          days = 0.0;
        }
      }
      sum += ToUnit(days, unit);
    }
    total += sum / static_cast<double>(n);
    ++counted;
  }
  m.value = counted ? total / static_cast<double>(counted) : 0.0;
  return m;
}

std::string ReportToJson(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["mode"] = report.mode;
  j["scenario"] = report.scenario;
  j["k"] = report.k;
  j["n_queries"] = report.n_queries;
  j["r_at_1"] = report.r_at_1;
  j["r_at_5"] = report.r_at_5;
  j["mrr"] = report.mrr;
  j["timevar_at_k"] = MetricJson(report.timevar_at_k, false);
  j["mfg_at_k"] = MetricJson(report.mfg_at_k, true);
  return j.dump(2) + "\n";
}

std::string ReportToTable(const MetricsReport& report) {
  std::string out;
  char line[128];
  auto row = [&](const char* name, const std::string& value) {
    std::snprintf(line, sizeof(line), "%-14s %s\n", name, value.c_str());
    out += line;
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
  };
  row("mode", report.mode);
  row("scenario", report.scenario);
  row("queries", std::to_string(report.n_queries));
  row("R@1", num(report.r_at_1));
  row("R@5", num(report.r_at_5));
  row("MRR", num(report.mrr));
  const std::string k = std::to_string(report.k);
  if (report.timevar_at_k) {
    row(("TimeVar@" + k).c_str(),
        num(report.timevar_at_k->value) + " " +
            std::string(UnitName(report.timevar_at_k->unit)) + "^2");
  }
  if (report.mfg_at_k) {
    row(("MFG@" + k).c_str(), num(report.mfg_at_k->value) + " " +
                                  std::string(UnitName(report.mfg_at_k->unit)));
  }
  return out;
}

}  // namespace tempo
