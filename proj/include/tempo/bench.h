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

#ifndef TEMPO_BENCH_H_
#define TEMPO_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tempo/date.h"
#include "tempo/metrics.h"
#include "tempo/records.h"
#include "tempo/scorer.h"

namespace tempo {

struct GenConfig {
  Scenario scenario = Scenario::kHyb;
  int num_queries = 100;
  // Confusers per query. rel/hyb use `cdr`; rec draws uniformly from
  // [cdr_min, cdr_max].
  int cdr = 5;
  int cdr_min = 2;
  int cdr_max = 4;
  uint64_t seed = 7;
  // Dates drawn for t_q / t_c (rel, hyb) or the span of versions (rec).
  PartialDate window_start = PartialDate::Full(2024, 1, 1);
  PartialDate window_end = PartialDate::Full(2024, 12, 31);
  // Reference "today" for freshness in rec.
  PartialDate today = PartialDate::Full(2025, 1, 1);
  // Number of entities (orgs x roles, towns x metrics, cities) to draw from;
  // 0 means the whole built-in pool.
  int entity_pool = 0;
  // Selects one of the template pools (0 or 1); pool 1 rotates the template
  // lists so alternate wordings lead.
  int template_pool = 0;
  // Fraction of rec documents whose t_d is blanked after generation.
  double blank_t_d = 0.0;

  // Scenario-appropriate defaults for window/today.
  static GenConfig Defaults(Scenario scenario);
  // Throws ConfigError.
  void Validate() const;
};

// Which documents of a query play which role.
struct QueryGroup {
  std::string query_id;
  std::string gold;
  std::vector<std::string> stale;        // same content, older versions
  std::vector<std::string> distractors;  // near dates, other entities
};

struct BenchDataset {
  GenConfig config;
  std::vector<Query> queries;
  std::vector<Document> documents;
  std::vector<QueryGroup> groups;
};

BenchDataset GenerateRel(const GenConfig& cfg);
BenchDataset GenerateRec(const GenConfig& cfg);
BenchDataset GenerateHyb(const GenConfig& cfg);
BenchDataset Generate(const GenConfig& cfg);

// Writes docs.jsonl, queries.jsonl, groups.jsonl and manifest.json. The
// manifest echoes the config, counts, and file checksums.
void WriteDataset(const BenchDataset& data, const std::filesystem::path& dir);
BenchDataset ReadDataset(const std::filesystem::path& dir);

std::string GenConfigToJson(const GenConfig& cfg);
GenConfig GenConfigFromJson(const std::string& json);

// Evaluation conventions carried by a dataset.
RefTimePolicy DefaultPolicy(const GenConfig& cfg);
TimeUnit DefaultTimeVarUnit(Scenario s);
TimeUnit DefaultMfgUnit(Scenario s);
// Penalty for undated documents in time metrics: the window width in days.
int64_t MissingPenaltyDays(const GenConfig& cfg);

// Re-reads a dataset directory and checks every construction invariant from
// the serialized files alone. Returns one message per violation.
std::vector<std::string> ValidateDatasetFiles(const std::filesystem::path& dir);

// Dates a generated text embeds, as a set ordered by day: t_c and t_d for
// documents (t_c only in rec, whose t_d is metadata), t_q for queries. Used to
// score extraction.
std::vector<PartialDate> EmbeddedDates(const Document& doc, Scenario scenario);
std::vector<PartialDate> EmbeddedDates(const Query& query);

}  // namespace tempo

#endif  // TEMPO_BENCH_H_
