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

#ifndef TEMPO_SCORER_H_
#define TEMPO_SCORER_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/embed.h"
#include "tempo/encode.h"
#include "tempo/index.h"
#include "tempo/params.h"
#include "tempo/records.h"

namespace tempo {

class PolicyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Anchor for freshness: a fixed "today" or the query's own time.
class RefTimePolicy {
 public:
  static RefTimePolicy Fixed(PartialDate today);
  static RefTimePolicy QueryTime();
  // "query-time" or "fixed:YYYY[-MM[-DD]]".
  static RefTimePolicy Parse(std::string_view spec);

  // Throws PolicyError in query-time mode when the query has no t_q.
  PartialDate Resolve(const Query& query) const;
  std::string ToString() const;
  bool is_query_time() const { return !fixed_.has_value(); }

 private:
  std::optional<PartialDate> fixed_;
};

// How gaps become feature vectors. kFourier is the real model; the other two
// exist for ablation runs.
enum class TimeEncoding {
  kFourier,
  kScalarRepeat,   // raw gap in days repeated dim times
  kEmbeddingDiff,  // toy embedding of one date string minus the other
};

struct FeatureOptions {
  EncodingConfig encoding;
  TimeEncoding kind = TimeEncoding::kFourier;
  // When false, missing gaps become zero vectors with the flag cleared.
  bool missing_aware = true;
  uint64_t embed_seed = 7;  // kEmbeddingDiff only
};

// Parameter-independent temporal inputs of one (query, document) pair. The
// rel/rec vectors are meaningful only when the matching gap is present.
struct TimeInputs {
  std::optional<GapDays> gap_rel;
  std::optional<GapDays> gap_rec;
  Eigen::VectorXd rel;
  Eigen::VectorXd rec;
};

TimeInputs ComputeTimeInputs(const Query& query, const Document& doc,
                             const PartialDate& t_ref,
                             const FeatureOptions& options);

// Applies the missing-value rule to produce the scorer's feature blocks.
TemporalFeatures ResolveFeatures(const TimeInputs& inputs,
                                 const FeatureOptions& options,
                                 const ScorerParams& params);

double Sigmoid(double x);

// [e_d ⊕ phi_rel ⊕ phi_rec ⊕ m_rel ⊕ m_rec] as the MLP sees it.
Eigen::VectorXd ScorerInput(const EmbeddingVector& e_d,
                            const TemporalFeatures& feats);

// Time-aware document vector: w2 · tanh(w1 · x + b1) + b2.
EmbeddingVector ProjectTimeAware(const EmbeddingVector& e_d,
                                 const TemporalFeatures& feats,
                                 const ScorerParams& params);

struct PairScores {
  double sem = 0.0;
  double time = 0.0;
  double final = 0.0;
};

// sem = cos(e_q, e_d), time = cos(e_q, projected e_d),
// final = sigmoid(alpha) * sem + (1 - sigmoid(alpha)) * time.
PairScores ScorePair(const EmbeddingVector& e_q, const EmbeddingVector& e_d,
                     const TemporalFeatures& feats, const ScorerParams& params);

struct ScoredCandidate {
  std::string doc_id;
  double score_sem = 0.0;
  double score_time = 0.0;
  double score_final = 0.0;
  std::optional<GapDays> delta_rel;
  std::optional<GapDays> delta_rec;
  bool m_rel = false;
  bool m_rec = false;
};

// Descending final score, then descending semantic score, then doc id.
bool FinalRanksBefore(const ScoredCandidate& a, const ScoredCandidate& b);

struct RerankContext {
  const DocumentTable* docs = nullptr;
  const EmbeddingStore* doc_vectors = nullptr;
  FeatureOptions features;
  RefTimePolicy policy = RefTimePolicy::QueryTime();
};

// Scores every pool member and sorts with FinalRanksBefore. Throws
// std::out_of_range naming an unresolvable doc id, PolicyError when the
// reference time cannot be resolved.
std::vector<ScoredCandidate> Rerank(const CandidatePool& pool,
                                    const Query& query,
                                    const EmbeddingVector& e_q,
                                    const ScorerParams& params,
                                    const RerankContext& ctx);

}  // namespace tempo

#endif  // TEMPO_SCORER_H_
