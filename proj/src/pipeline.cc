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

#include "tempo/pipeline.h"

#include <array>

namespace tempo {

namespace {

constexpr std::array<std::pair<AblationMode, std::string_view>, 7> kModes = {{
    {AblationMode::kSemantic, "semantic"},
    {AblationMode::kFull, "full"},
    {AblationMode::kNoGateFixed, "no-gate-fixed"},
    {AblationMode::kNoGateSemantic, "no-gate-semantic"},
    {AblationMode::kScalarRepeat, "scalar-repeat"},
    {AblationMode::kBgeDiff, "bge-diff"},
    {AblationMode::kMissingAwareOff, "missing-aware-off"},
}};

// Frozen gate value that saturates the sigmoid towards the semantic score.
constexpr double kSemanticAlpha = 20.0;

}  // namespace

std::string_view ModeName(AblationMode mode) {
  for (const auto& [m, name] : kModes) {
    if (m == mode) return name;
  }
  return "unknown";
}

AblationMode ParseMode(std::string_view name) {
  std::string valid;
  for (const auto& [m, n] : kModes) {
    if (n == name) return m;
    valid += valid.empty() ? "" : ", ";
    valid += n;
  }
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected one of " +
                    valid + ")");
}

std::vector<AblationMode> AllModes() {
  std::vector<AblationMode> out;
  for (const auto& entry : kModes) out.push_back(entry.first);
  return out;
}

ScorerShape PipelineConfig::Shape() const {
  return {embed_dim, encoding.dim, embed_dim};
}

void PipelineConfig::Validate() const {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (metric_k < 1) throw ConfigError("metric_k must be >= 1");
  if (embed_dim < 8) throw ConfigError("embed_dim must be >= 8");
  encoding.Validate();
  train.Validate();
}

EmbeddingStore EmbedDocuments(const std::vector<Document>& docs, int dim,
                              uint64_t seed, bool timestamp_tag) {
  EmbeddingStore store;
  for (const Document& d : docs) {
    const std::string text = timestamp_tag ? TimestampTag(d.text, d.t_d) : d.text;
    store.Add(d.id, ToyEmbed(text, dim, seed));
  }
  return store;
}

Corpus BuildCorpus(BenchDataset data, const PipelineConfig& cfg) {
  EmbeddingStore store = EmbedDocuments(data.documents, cfg.embed_dim,
                                        cfg.embed_seed, cfg.timestamp_tag);
  return BuildCorpus(std::move(data), std::move(store), cfg.embed_seed);
}

Corpus BuildCorpus(BenchDataset data, EmbeddingStore doc_vectors,
                   uint64_t embed_seed) {
  Corpus c;
  const int dim = doc_vectors.dim();
  for (const Document& d : data.documents) {
    if (!doc_vectors.Find(d.id)) {
      throw EmbedError("no vector for document '" + d.id + "'");
    }
  }
  c.table = DocumentTable(data.documents);
  c.index = ExactIndex(std::move(doc_vectors), embed_seed);
  for (const Query& q : data.queries) {
    c.query_vectors.push_back(ToyEmbed(q.text, dim, embed_seed));
  }
  c.data = std::move(data);
  return c;
}

std::vector<CandidatePool> RetrieveAll(const Corpus& corpus, int k) {
  std::vector<CandidatePool> pools;
  pools.reserve(corpus.data.queries.size());
  for (size_t i = 0; i < corpus.data.queries.size(); ++i) {
    pools.push_back(corpus.index.TopK(corpus.query_vectors[i], k,
                                      corpus.data.queries[i].id));
  }
  return pools;
}

FeatureOptions FeaturesFor(AblationMode mode, const PipelineConfig& cfg) {
  FeatureOptions f;
  f.encoding = cfg.encoding;
  f.embed_seed = cfg.embed_seed;
  if (mode == AblationMode::kScalarRepeat) f.kind = TimeEncoding::kScalarRepeat;
  if (mode == AblationMode::kBgeDiff) f.kind = TimeEncoding::kEmbeddingDiff;
  if (mode == AblationMode::kMissingAwareOff) f.missing_aware = false;
  return f;
}

TrainConfig TrainConfigFor(AblationMode mode, const PipelineConfig& cfg) {
  TrainConfig t = cfg.train;
  if (mode == AblationMode::kNoGateFixed) t.frozen_alpha = 0.0;
  if (mode == AblationMode::kNoGateSemantic) t.frozen_alpha = kSemanticAlpha;
  return t;
}

ExampleSet BuildExamples(const Corpus& corpus,
                         const std::vector<CandidatePool>& pools,
                         const FeatureOptions& features,
                         const ScorerShape& shape) {
  ExampleSet out;
  const RefTimePolicy policy = corpus.policy();
  for (size_t i = 0; i < corpus.data.queries.size(); ++i) {
    const Query& q = corpus.data.queries[i];
    std::vector<CompiledCandidate> cands;
    for (const Candidate& c : pools[i].entries) {
      cands.push_back({c.doc_id, corpus.table.Find(c.doc_id),
                       corpus.doc_vectors().Find(c.doc_id)});
    }
    auto ex = CompileExample(q, corpus.query_vectors[i], cands,
                             policy.Resolve(q), features, shape);
    if (ex) {
      out.examples.push_back(std::move(*ex));
    } else {
      ++out.dropped;
    }
  }
  return out;
}

TrainedScorer TrainScorer(const Corpus& corpus, AblationMode mode,
                          const PipelineConfig& cfg) {
  if (mode == AblationMode::kSemantic) {
    throw ConfigError("semantic mode has no scorer to train");
  }
  cfg.Validate();
  const ScorerShape shape = cfg.Shape();
  const ExampleSet set = BuildExamples(corpus, RetrieveAll(corpus, cfg.k),
                                       FeaturesFor(mode, cfg), shape);
  FitResult fit = Fit(set.examples, TrainConfigFor(mode, cfg),
                      ScorerParams::Initialize(shape, cfg.init_seed));
  return {std::move(fit.params), std::move(fit.trace), set.examples.size(),
          set.dropped};
}

std::vector<Ranking> RankQueries(const Corpus& corpus,
                                 const std::vector<CandidatePool>& pools,
                                 const ScorerParams* params,
                                 const FeatureOptions& features) {
  std::vector<Ranking> out;
  out.reserve(pools.size());
  RerankContext ctx;
  ctx.docs = &corpus.table;
  ctx.doc_vectors = &corpus.doc_vectors();
  ctx.features = features;
  ctx.policy = corpus.policy();
  for (size_t i = 0; i < pools.size(); ++i) {
    Ranking r;
    if (!params) {
      for (const Candidate& c : pools[i].entries) r.push_back(c.doc_id);
    } else {
      for (const ScoredCandidate& c :
           Rerank(pools[i], corpus.data.queries[i], corpus.query_vectors[i],
                  *params, ctx)) {
        r.push_back(c.doc_id);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

MetricsReport Evaluate(const Corpus& corpus,
                       const std::vector<Ranking>& rankings, std::string mode,
                       int metric_k) {
  const auto& queries = corpus.data.queries;
  const Scenario scenario = corpus.data.config.scenario;
  std::vector<std::string> golds;
  for (const Query& q : queries) golds.push_back(q.gold);

  MetricsReport r;
  r.mode = std::move(mode);
  r.scenario = std::string(ScenarioName(scenario));
  r.k = metric_k;
  r.n_queries = queries.size();
  r.r_at_1 = RecallAtK(rankings, golds, 1);
  r.r_at_5 = RecallAtK(rankings, golds, 5);
  r.mrr = MeanReciprocalRank(rankings, golds);

  const int64_t penalty = MissingPenaltyDays(corpus.data.config);
  auto doc = [&](const std::string& id) {
    const Document* d = corpus.table.Find(id);
    if (!d) throw std::out_of_range("ranked id '" + id + "' is not a document");
    return d;
  };
  if (scenario != Scenario::kRec) {
    std::vector<AlignmentCase> cases;
    for (size_t i = 0; i < queries.size(); ++i) {
      if (!queries[i].t_q) continue;
      AlignmentCase c{*queries[i].t_q, {}};
      for (const std::string& id : rankings[i]) c.clue_times.push_back(doc(id)->t_c);
      cases.push_back(std::move(c));
    }
    r.timevar_at_k = TimeVarAtK(cases, metric_k, DefaultTimeVarUnit(scenario),
                                penalty);
  }
  if (scenario != Scenario::kRel) {
    std::vector<FreshnessCase> cases;
    for (size_t i = 0; i < queries.size(); ++i) {
      FreshnessCase c{doc(queries[i].gold)->t_d, {}};
      for (const std::string& id : rankings[i]) c.pub_times.push_back(doc(id)->t_d);
      cases.push_back(std::move(c));
    }
    r.mfg_at_k = MfgAtK(cases, metric_k, DefaultMfgUnit(scenario), penalty);
  }
  return r;
}

MetricsReport RunAblation(AblationMode mode, const Corpus& train,
                          const Corpus& eval, const PipelineConfig& cfg,
                          const ScorerParams* params) {
  cfg.Validate();
  const std::vector<CandidatePool> pools = RetrieveAll(eval, cfg.k);
  const FeatureOptions features = FeaturesFor(mode, cfg);
  std::vector<Ranking> rankings;
  if (mode == AblationMode::kSemantic) {
    rankings = RankQueries(eval, pools, nullptr, features);
  } else if (params) {
    rankings = RankQueries(eval, pools, params, features);
  } else {
    const TrainedScorer trained = TrainScorer(train, mode, cfg);
    rankings = RankQueries(eval, pools, &trained.params, features);
  }
  return Evaluate(eval, rankings, std::string(ModeName(mode)), cfg.metric_k);
}

}  // namespace tempo
