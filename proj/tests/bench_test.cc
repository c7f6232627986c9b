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

#include "tempo/bench.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "tempo/extract.h"
#include "tempo/pipeline.h"

namespace tempo {
namespace {

// Frozen from the reference run: rec, 100 queries, confusers 2..4, seed 7.
constexpr size_t kRecDocCount = 396;
constexpr const char* kRecDocsChecksum = "4af0c33004fb94c8";

std::filesystem::path TempDir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() /
                 ("tempo_bench_" + std::to_string(::getpid()) + "_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GenConfig Cfg(Scenario s, int queries, uint64_t seed) {
  GenConfig c = GenConfig::Defaults(s);
  c.num_queries = queries;
  c.seed = seed;
  return c;
}

std::map<std::string, const Document*> ById(const BenchDataset& d) {
  std::map<std::string, const Document*> m;
  for (const Document& doc : d.documents) m[doc.id] = &doc;
  return m;
}

TEST(GenRel, CountsAndInvariants) {
  GenConfig c = Cfg(Scenario::kRel, 10, 3);
  c.cdr = 5;
  const BenchDataset d = GenerateRel(c);
  EXPECT_EQ(d.queries.size(), 10u);
  EXPECT_EQ(d.documents.size(), 60u);
  const auto docs = ById(d);
  std::set<std::string> golds;
  for (size_t i = 0; i < d.queries.size(); ++i) {
    const Query& q = d.queries[i];
    EXPECT_TRUE(golds.insert(q.gold).second);
    ASSERT_TRUE(q.t_q.has_value());
    EXPECT_EQ(q.t_q->granularity(), Granularity::kYear);
    EXPECT_EQ(IntervalGap(*q.t_q, docs.at(q.gold)->t_c.at(0)).value, 0);
    const QueryGroup& g = d.groups[i];
    EXPECT_EQ(g.stale.size() + g.distractors.size(), 5u);
    for (const auto& ids : {g.stale, g.distractors}) {
      for (const std::string& id : ids) {
        const Document* doc = docs.at(id);
        const int64_t years = std::abs(doc->t_c.at(0).year() - q.t_q->year());
        EXPECT_GT(IntervalGap(*q.t_q, doc->t_c.at(0)).value, 0);
        EXPECT_GE(years, 1);
        EXPECT_LE(years, 3);
      }
    }
  }
}

TEST(GenRec, VersionsAndOrdering) {
  const BenchDataset d = GenerateRec(Cfg(Scenario::kRec, 100, 7));
  const auto docs = ById(d);
  for (size_t i = 0; i < d.queries.size(); ++i) {
    const Query& q = d.queries[i];
    EXPECT_FALSE(q.t_q.has_value());
    const QueryGroup& g = d.groups[i];
    const size_t versions = 1 + g.stale.size();
    EXPECT_GE(versions, 3u);
    EXPECT_LE(versions, 5u);
    // Stale versions are listed oldest first.
    std::vector<int64_t> days;
    for (const std::string& id : g.stale) days.push_back(ToDayNumber(*docs.at(id)->t_d).value);
    days.push_back(ToDayNumber(*docs.at(q.gold)->t_d).value);
    for (size_t k = 1; k < days.size(); ++k) EXPECT_LT(days[k - 1], days[k]) << q.id;
  }
}

TEST(GenRec, FrozenReferenceRun) {
  const BenchDataset d = GenerateRec(Cfg(Scenario::kRec, 100, 7));
  EXPECT_EQ(d.documents.size(), kRecDocCount);
  const auto dir = TempDir("rec_ref");
  WriteDataset(d, dir);
  EXPECT_EQ(FileChecksum(dir / "docs.jsonl"), kRecDocsChecksum);
  std::filesystem::remove_all(dir);
}

TEST(GenHyb, Invariants) {
  const BenchDataset d = GenerateHyb(Cfg(Scenario::kHyb, 50, 4));
  const auto docs = ById(d);
  for (size_t i = 0; i < d.queries.size(); ++i) {
    const Query& q = d.queries[i];
    const Document* gold = docs.at(q.gold);
    ASSERT_TRUE(q.t_q && gold->t_d);
    EXPECT_EQ(gold->t_c.at(0), *q.t_q);
    EXPECT_LE(ToDayNumber(*gold->t_d), ToDayNumber(*q.t_q));
    for (const std::string& id : d.groups[i].stale) {
      const Document* s = docs.at(id);
      EXPECT_EQ(s->t_c, gold->t_c);
      EXPECT_LT(ToDayNumber(*s->t_d), ToDayNumber(*gold->t_d));
    }
    EXPECT_EQ(d.groups[i].stale.size() + d.groups[i].distractors.size(), 5u);
  }
}

TEST(GenHyb, PreRetrievalRecall) {
  const BenchDataset d = GenerateHyb(Cfg(Scenario::kHyb, 200, 7));
  PipelineConfig cfg;
  const Corpus corpus = BuildCorpus(d, cfg);
  const auto pools = RetrieveAll(corpus, 50);
  std::vector<Ranking> r;
  std::vector<std::string> golds;
  for (size_t i = 0; i < pools.size(); ++i) {
    Ranking ids;
    for (const Candidate& c : pools[i].entries) ids.push_back(c.doc_id);
    r.push_back(ids);
    golds.push_back(d.queries[i].gold);
  }
  EXPECT_GE(RecallAtK(r, golds, 50), 0.95);
}

TEST(Bench, DeterministicFiles) {
  for (Scenario s : {Scenario::kRel, Scenario::kRec, Scenario::kHyb}) {
    const auto a = TempDir("det_a"), b = TempDir("det_b");
    WriteDataset(Generate(Cfg(s, 30, 5)), a);
    WriteDataset(Generate(Cfg(s, 30, 5)), b);
    for (const char* f : {"docs.jsonl", "queries.jsonl", "groups.jsonl", "manifest.json"}) {
      EXPECT_EQ(Slurp(a / f), Slurp(b / f)) << f;
    }
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
  }
}

TEST(Bench, RoundTripAndValidator) {
  for (Scenario s : {Scenario::kRel, Scenario::kRec, Scenario::kHyb}) {
    GenConfig c = Cfg(s, 40, 6);
    if (s == Scenario::kRec) c.blank_t_d = 0.3;
    const BenchDataset d = Generate(c);
    const auto dir = TempDir("rt");
    WriteDataset(d, dir);
    const BenchDataset back = ReadDataset(dir);
    EXPECT_EQ(back.documents, d.documents);
    EXPECT_EQ(back.queries, d.queries);
    EXPECT_EQ(GenConfigToJson(back.config), GenConfigToJson(d.config));
    EXPECT_TRUE(ValidateDatasetFiles(dir).empty()) << ScenarioName(s);

    // Tampering is caught.
    std::ofstream(dir / "docs.jsonl", std::ios::app) << "\n";
    EXPECT_FALSE(ValidateDatasetFiles(dir).empty());
    std::filesystem::remove_all(dir);
  }
}

TEST(Bench, BlankedDocumentTimes) {
  GenConfig c = Cfg(Scenario::kRec, 200, 8);
  c.blank_t_d = 0.3;
  const BenchDataset d = Generate(c);
  size_t blank = 0;
  for (const Document& doc : d.documents) blank += !doc.t_d.has_value();
  const double frac = static_cast<double>(blank) / static_cast<double>(d.documents.size());
  EXPECT_NEAR(frac, 0.3, 0.05);
}

TEST(Bench, ConfigErrors) {
  GenConfig c = Cfg(Scenario::kRel, 10, 1);
  c.cdr = 0;
  EXPECT_THROW(Generate(c), ConfigError);
  c = Cfg(Scenario::kRel, 10, 1);
  c.entity_pool = 3;
  EXPECT_THROW(Generate(c), ConfigError);
  c = Cfg(Scenario::kHyb, 10, 1);
  c.window_end = c.window_start;
  EXPECT_THROW(Generate(c), ConfigError);
  c = Cfg(Scenario::kRec, 10, 1);
  EXPECT_THROW(GenerateHyb(c), ConfigError);
}

TEST(Bench, ExtractionOnGeneratedText) {
  for (Scenario s : {Scenario::kRel, Scenario::kRec, Scenario::kHyb}) {
    const BenchDataset d = Generate(Cfg(s, 60, 9));
    auto sorted = [](std::vector<PartialDate> v) {
      std::sort(v.begin(), v.end(), [](const PartialDate& a, const PartialDate& b) {
        return FormatDate(a) < FormatDate(b);
      });
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    };
    for (const Document& doc : d.documents) {
      EXPECT_EQ(sorted(ExtractDates(doc.text).dates), sorted(EmbeddedDates(doc, s))) << doc.text;
    }
    for (const Query& q : d.queries) {
      EXPECT_EQ(sorted(ExtractDates(q.text).dates), sorted(EmbeddedDates(q))) << q.text;
    }
  }
}

}  // namespace
}  // namespace tempo
