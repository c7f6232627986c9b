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

#include "tempo/scorer.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "oracles.h"
#include "tempo/train.h"
#include "world.h"

namespace tempo {
namespace {

constexpr int kDim = 16;
constexpr int kTime = 8;

ScorerParams RandomParams(uint64_t seed, double alpha) {
  ScorerParams p = ScorerParams::Initialize({kDim, kTime, kDim}, seed);
  Rng rng(seed + 100);
  for (int i = 0; i < kTime; ++i) {
    p.miss_rel(i) = rng.Uniform(-1, 1);
    p.miss_rec(i) = rng.Uniform(-1, 1);
  }
  p.b1.setConstant(0.1);
  p.alpha = alpha;
  return p;
}

TEST(Policy, ParseAndResolve) {
  Query q{"q", "t", std::nullopt, "g", Scenario::kRec};
  EXPECT_THROW(RefTimePolicy::QueryTime().Resolve(q), PolicyError);
  EXPECT_EQ(RefTimePolicy::Parse("fixed:2025-01-01").Resolve(q), ParseDate("2025-01-01"));
  q.t_q = ParseDate("2024-02-02");
  EXPECT_EQ(RefTimePolicy::Parse("query-time").Resolve(q), *q.t_q);
  EXPECT_EQ(RefTimePolicy::Parse("fixed:2025-01-01").ToString(), "fixed:2025-01-01");
  EXPECT_THROW(RefTimePolicy::Parse("today"), PolicyError);
  EXPECT_THROW(RefTimePolicy::Parse("fixed:2025-13-01"), PolicyError);
}

TEST(Project, ZeroWeightsGiveZero) {
  const ScorerParams p = ScorerParams::Zeros({kDim, kTime, 4});
  EncodingConfig cfg;
  cfg.dim = kTime;
  const TemporalFeatures f = BuildFeatures(GapDays{3}, std::nullopt, cfg, p);
  EXPECT_EQ(ProjectTimeAware(ToyEmbed("abcdef", kDim, 1), f, p),
            Eigen::VectorXd::Zero(kDim));
}

// The fixed instance behind the golden file.
struct GoldenCase {
  ScorerParams params;
  EmbeddingVector e_d;
  TemporalFeatures feats;
};

GoldenCase MakeGolden() {
  GoldenCase g{ScorerParams::Initialize({8, 4, 6}, 3), ToyEmbed("golden input", 8, 1), {}};
  Rng rng(5);
  g.params.ForEachMutable([&](double& v) { v += rng.Uniform(-0.1, 0.1); });
  EncodingConfig cfg;
  cfg.dim = 4;
  g.feats = BuildFeatures(GapDays{12}, std::nullopt, cfg, g.params);
  return g;
}

TEST(Project, MatchesOracleAndGolden) {
  const GoldenCase g = MakeGolden();
  const EmbeddingVector out = ProjectTimeAware(g.e_d, g.feats, g.params);
  const std::vector<double> ref =
      oracle::Mlp(g.params, oracle::ToStd(ScorerInput(g.e_d, g.feats)));
  std::ifstream in(std::filesystem::path(TEMPO_TEST_DATA) / "project_golden.txt");
  ASSERT_TRUE(in) << "missing golden file";
  std::vector<double> golden;
  for (double v; in >> v;) golden.push_back(v);
  ASSERT_EQ(golden.size(), 8u);
  ASSERT_EQ(out.size(), 8);
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(out(i), ref[i], 1e-14);
    EXPECT_NEAR(out(i), golden[i], 1e-12);
  }
}

TEST(Project, MissingFlagChangesOutput) {
  const ScorerParams p = RandomParams(1, 0);
  EncodingConfig cfg;
  cfg.dim = kTime;
  const EmbeddingVector e = ToyEmbed("some document", kDim, 1);
  TemporalFeatures a = BuildFeatures(GapDays{4}, GapDays{4}, cfg, p);
  TemporalFeatures b = BuildFeatures(std::nullopt, GapDays{4}, cfg, p);
  EXPECT_FALSE(ProjectTimeAware(e, a, p).isApprox(ProjectTimeAware(e, b, p)));
  EXPECT_THROW(ProjectTimeAware(ToyEmbed("x", 8, 1), a, p), ConfigError);
}

TEST(ScorePair, GateArithmetic) {
  EncodingConfig cfg;
  cfg.dim = kTime;
  const EmbeddingVector q = ToyEmbed("query text", kDim, 1), d = ToyEmbed("doc text", kDim, 1);
  ScorerParams p = RandomParams(2, 0.0);
  const TemporalFeatures f = BuildFeatures(GapDays{1}, GapDays{2}, cfg, p);
  PairScores s = ScorePair(q, d, f, p);
  EXPECT_DOUBLE_EQ(s.final, 0.5 * s.sem + 0.5 * s.time);
  EXPECT_DOUBLE_EQ(s.sem, Cosine(q, d));
  EXPECT_DOUBLE_EQ(s.time, Cosine(q, ProjectTimeAware(d, f, p)));
  p.alpha = 20;
  s = ScorePair(q, d, f, p);
  EXPECT_NEAR(s.final, s.sem, 1e-8);
  p.alpha = -20;
  s = ScorePair(q, d, f, p);
  EXPECT_NEAR(s.final, s.time, 1e-8);

  // sem = 1, time = 0 at alpha 0: w2 = 0 and b2 orthogonal to q.
  ScorerParams z = ScorerParams::Zeros({2 * 4, 2, 2});
  Eigen::VectorXd e = Eigen::VectorXd::Zero(8);
  e(0) = 1;
  z.b2(1) = 1;
  EncodingConfig c2;
  c2.dim = 2;
  s = ScorePair(e, e, BuildFeatures(GapDays{0}, GapDays{0}, c2, z), z);
  EXPECT_EQ(s.final, 0.5);
}

TEST(Sigmoid, Stable) {
  EXPECT_EQ(Sigmoid(0), 0.5);
  EXPECT_GT(Sigmoid(-800), -1e-300);
  EXPECT_EQ(Sigmoid(800), 1.0);
  EXPECT_NEAR(Sigmoid(2) + Sigmoid(-2), 1.0, 1e-15);
}

std::vector<std::string> Ids(const std::vector<ScoredCandidate>& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(c.doc_id);
  return out;
}

TEST(Rerank, PropertiesOnRandomWorlds) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const testing::World w = testing::MakeWorld(seed, 24, kDim);
    const RerankContext ctx = testing::Context(w, kTime);
    const ScorerParams p = RandomParams(seed, Rng(seed).Uniform(-3, 3));
    const auto out = Rerank(w.pool, w.query, w.e_q, p, ctx);

    ASSERT_EQ(out.size(), w.pool.entries.size());
    std::multiset<std::string> before, after;
    for (const auto& c : w.pool.entries) before.insert(c.doc_id);
    for (const auto& c : out) after.insert(c.doc_id);
    EXPECT_EQ(before, after);

    std::set<std::string> patterns;
    for (size_t i = 0; i < out.size(); ++i) {
      const ScoredCandidate& c = out[i];
      EXPECT_LE(std::min(c.score_sem, c.score_time) - 1e-15, c.score_final);
      EXPECT_GE(std::max(c.score_sem, c.score_time) + 1e-15, c.score_final);
      EXPECT_EQ(c.m_rel, !c.delta_rel.has_value());
      EXPECT_EQ(c.m_rec, !c.delta_rec.has_value());
      const Document* d = w.table.Find(c.doc_id);
      EXPECT_EQ(c.m_rel, d->t_c.empty());
      EXPECT_EQ(c.m_rec, !d->t_d.has_value());
      patterns.insert(std::to_string(c.m_rel) + std::to_string(c.m_rec));
      if (i > 0) EXPECT_FALSE(FinalRanksBefore(c, out[i - 1]));
    }
    EXPECT_EQ(patterns.size(), 4u);
    EXPECT_EQ(Ids(out), Ids(Rerank(w.pool, w.query, w.e_q, p, ctx)));
  }
}

TEST(Rerank, GateLimits) {
  auto sem = [](const ScoredCandidate& c) { return c.score_sem; };
  auto time = [](const ScoredCandidate& c) { return c.score_time; };
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const testing::World w = testing::MakeWorld(seed, 30, kDim);
    const RerankContext ctx = testing::Context(w, kTime);
    ScorerParams p = RandomParams(seed, 20);
    auto out = Rerank(w.pool, w.query, w.e_q, p, ctx);
    EXPECT_TRUE(testing::OrderedBy(out, sem, 1e-8));
    for (const auto& c : out) EXPECT_NEAR(c.score_final, c.score_sem, 1e-8);

    p.alpha = -20;
    out = Rerank(w.pool, w.query, w.e_q, p, ctx);
    EXPECT_TRUE(testing::OrderedBy(out, time, 1e-8));
    for (const auto& c : out) EXPECT_NEAR(c.score_final, c.score_time, 1e-8);
  }
}

TEST(Rerank, SingletonAndErrors) {
  testing::World w = testing::MakeWorld(3, 4, kDim);
  RerankContext ctx = testing::Context(w, kTime);
  const ScorerParams p = RandomParams(3, 0.3);
  CandidatePool one{"q0", {w.pool.entries[0]}};
  const auto out = Rerank(one, w.query, w.e_q, p, ctx);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NE(out[0].score_sem, 0.0);
  EXPECT_NE(out[0].score_time, 0.0);
  EXPECT_NE(out[0].score_final, 0.0);

  CandidatePool bad{"q0", {{"nope", 0.5}}};
  try {
    Rerank(bad, w.query, w.e_q, p, ctx);
    FAIL();
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("nope"), std::string::npos);
  }
  w.query.t_q.reset();
  EXPECT_THROW(Rerank(one, w.query, w.e_q, p, ctx), PolicyError);
}

TEST(Rerank, AblationEncodings) {
  const testing::World w = testing::MakeWorld(4, 12, kDim);
  RerankContext ctx = testing::Context(w, kTime);
  const ScorerParams p = RandomParams(4, 0.0);
  ctx.features.missing_aware = false;
  for (const auto& c : Rerank(w.pool, w.query, w.e_q, p, ctx)) {
    EXPECT_FALSE(c.m_rel || c.m_rec);
  }
  const Document& d = w.docs[3];  // both times present
  ctx.features.kind = TimeEncoding::kScalarRepeat;
  const TimeInputs s = ComputeTimeInputs(w.query, d, *w.query.t_q, ctx.features);
  EXPECT_EQ(s.rec, Eigen::VectorXd::Constant(kTime, static_cast<double>(s.gap_rec->value)));
  ctx.features.kind = TimeEncoding::kEmbeddingDiff;
  const TimeInputs e = ComputeTimeInputs(w.query, d, *w.query.t_q, ctx.features);
  EXPECT_EQ(e.rec, ToyEmbed(FormatDate(*w.query.t_q), kTime, 7) -
                       ToyEmbed(FormatDate(*d.t_d), kTime, 7));
}

// Pairs of identical texts; the fresher version is the gold.
void FreshnessTask(int n, uint64_t seed, std::vector<Query>* queries,
                   std::vector<Document>* docs) {
  Rng rng(seed);
  const PartialDate today = ParseDate("2025-01-01");
  for (int i = 0; i < n; ++i) {
    const std::string text = "bulletin number " + std::to_string(rng.Below(1000));
    const int64_t t = ToDayNumber(today).value;
    const int64_t fresh = t - rng.Between(0, 3), stale = fresh - rng.Between(1, 5);
    Document a{"f" + std::to_string(i), text, {}, PartialDate::FromDayNumber({fresh})};
    Document b{"s" + std::to_string(i), text, {}, PartialDate::FromDayNumber({stale})};
    Query q{"q" + std::to_string(i), text, std::nullopt, a.id, Scenario::kRec};
    docs->push_back(a);
    docs->push_back(b);
    queries->push_back(q);
  }
}

TEST(Rerank, TrainedRecencyPrefersFresher) {
  std::vector<Query> queries;
  std::vector<Document> docs;
  FreshnessTask(40, 8, &queries, &docs);
  const DocumentTable table(docs);
  EmbeddingStore vecs;
  for (const Document& d : docs) vecs.Add(d.id, ToyEmbed(d.text, kDim, 1));
  FeatureOptions opts;
  opts.encoding.dim = kTime;
  const RefTimePolicy policy = RefTimePolicy::Fixed(ParseDate("2025-01-01"));
  const ScorerShape shape{kDim, kTime, kDim};

  auto compile = [&](size_t i) {
    const Query& q = queries[i];
    // Stale first so the pool order alone does not solve the task.
    std::vector<CompiledCandidate> c = {
        {docs[2 * i + 1].id, &docs[2 * i + 1], vecs.Find(docs[2 * i + 1].id)},
        {docs[2 * i].id, &docs[2 * i], vecs.Find(docs[2 * i].id)}};
    return *CompileExample(q, ToyEmbed(q.text, kDim, 1), c, policy.Resolve(q), opts, shape);
  };
  std::vector<TrainExample> train;
  for (size_t i = 0; i < 30; ++i) train.push_back(compile(i));
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.learning_rate = 1e-2;
  cfg.temperature = 0.1;
  const ScorerParams p = Fit(train, cfg, ScorerParams::Initialize(shape, 1)).params;

  RerankContext ctx;
  ctx.docs = &table;
  ctx.doc_vectors = &vecs;
  ctx.features = opts;
  ctx.policy = policy;
  for (size_t i = 30; i < queries.size(); ++i) {
    const Query& q = queries[i];
    const EmbeddingVector e_q = ToyEmbed(q.text, kDim, 1);
    CandidatePool pool{q.id, {{docs[2 * i + 1].id, Cosine(e_q, *vecs.Find(docs[2 * i + 1].id))},
                              {docs[2 * i].id, Cosine(e_q, *vecs.Find(docs[2 * i].id))}}};
    const auto out = Rerank(pool, q, e_q, p, ctx);
    EXPECT_EQ(out[0].doc_id, q.gold) << q.id;
  }
}

}  // namespace
}  // namespace tempo
