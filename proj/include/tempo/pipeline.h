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

#ifndef TEMPO_PIPELINE_H_
#define TEMPO_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/bench.h"
#include "tempo/embed.h"
#include "tempo/index.h"
#include "tempo/metrics.h"
#include "tempo/params.h"
#include "tempo/scorer.h"
#include "tempo/train.h"

namespace tempo {

// Ranking variants. kSemantic keeps the pre-retrieval order; every other
// mode trains a scorer.
enum class AblationMode {
  kSemantic,
  kFull,
  kNoGateFixed,     // alpha frozen at 0: equal-weight sum
  kNoGateSemantic,  // alpha frozen at +20: semantic order
  kScalarRepeat,
  kBgeDiff,
  kMissingAwareOff,
};

std::string_view ModeName(AblationMode mode);
// Throws ConfigError listing the valid names.
AblationMode ParseMode(std::string_view name);
std::vector<AblationMode> AllModes();

struct PipelineConfig {
  int k = 50;         // candidate pool size
  int metric_k = 5;   // cutoff for TimeVar and MFG
  int embed_dim = 64;
  uint64_t embed_seed = 7;
  // Appends " (proposed on YYYY-MM-DD)" to document text before embedding.
  bool timestamp_tag = false;
  EncodingConfig encoding;
  TrainConfig train;
  uint64_t init_seed = 7;

  ScorerShape Shape() const;
  void Validate() const;
};

// A dataset with its document vectors, index and query vectors.
struct Corpus {
  BenchDataset data;
  DocumentTable table;
  ExactIndex index;
  std::vector<EmbeddingVector> query_vectors;  // aligned with data.queries

  const EmbeddingStore& doc_vectors() const { return index.store(); }
  RefTimePolicy policy() const { return DefaultPolicy(data.config); }
};

EmbeddingStore EmbedDocuments(const std::vector<Document>& docs, int dim,
                              uint64_t seed, bool timestamp_tag);

// Embeds documents and queries with the toy embedder.
Corpus BuildCorpus(BenchDataset data, const PipelineConfig& cfg);
// Uses precomputed document vectors; queries use the toy embedder with
// `embed_seed` at the store's width.
Corpus BuildCorpus(BenchDataset data, EmbeddingStore doc_vectors,
                   uint64_t embed_seed);

std::vector<CandidatePool> RetrieveAll(const Corpus& corpus, int k);

FeatureOptions FeaturesFor(AblationMode mode, const PipelineConfig& cfg);
TrainConfig TrainConfigFor(AblationMode mode, const PipelineConfig& cfg);

struct ExampleSet {
  std::vector<TrainExample> examples;
  size_t dropped = 0;  // queries whose pool misses the gold
};

ExampleSet BuildExamples(const Corpus& corpus,
                         const std::vector<CandidatePool>& pools,
                         const FeatureOptions& features,
                         const ScorerShape& shape);

struct TrainedScorer {
  ScorerParams params;
  std::vector<EpochStats> trace;
  size_t examples = 0;
  size_t dropped = 0;
};

// Trains the scorer variant for `mode` on `corpus`. Throws ConfigError for
// kSemantic, which has nothing to train.
TrainedScorer TrainScorer(const Corpus& corpus, AblationMode mode,
                          const PipelineConfig& cfg);

// Doc ids in ranked order per query. Without params, the pool order.
std::vector<Ranking> RankQueries(const Corpus& corpus,
                                 const std::vector<CandidatePool>& pools,
                                 const ScorerParams* params,
                                 const FeatureOptions& features);

// Scores rankings against the corpus golds. TimeVar applies when queries
// carry t_q (rel, hyb) and MFG when documents carry t_d (rec, hyb).
MetricsReport Evaluate(const Corpus& corpus,
                       const std::vector<Ranking>& rankings,
                       std::string mode, int metric_k);

// Trains on `train` (unless semantic or params are supplied) and evaluates
// on `eval`.
MetricsReport RunAblation(AblationMode mode, const Corpus& train,
                          const Corpus& eval, const PipelineConfig& cfg,
                          const ScorerParams* params = nullptr);

}  // namespace tempo

#endif  // TEMPO_PIPELINE_H_
