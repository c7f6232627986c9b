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

#ifndef TEMPO_TRAIN_H_
#define TEMPO_TRAIN_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tempo/embed.h"
#include "tempo/params.h"
#include "tempo/records.h"
#include "tempo/scorer.h"

namespace tempo {

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainConfig {
  double learning_rate = 1e-3;
  int epochs = 50;
  int batch_size = 32;
  double temperature = 0.05;
  uint64_t seed = 7;
  double weight_decay = 0.0;
  // Holds alpha fixed during training (ablations without a learned gate).
  std::optional<double> frozen_alpha;

  void Validate() const;
};

// One query with its candidate pool, compiled into the matrices the trainer
// consumes. Column j of `inputs` is the scorer input of candidate j with the
// feature block of any missing timestamp left at zero; those blocks are
// filled from the current missing embeddings on every forward pass.
struct TrainExample {
  std::string query_id;
  EmbeddingVector e_q;
  std::vector<std::string> doc_ids;
  Eigen::MatrixXd inputs;  // input_dim x n
  Eigen::VectorXd sem;     // cos(e_q, e_d) per candidate
  std::vector<uint8_t> m_rel;
  std::vector<uint8_t> m_rec;
  size_t gold = 0;  // index into doc_ids

  size_t size() const { return doc_ids.size(); }
};

struct CompiledCandidate {
  std::string doc_id;
  const Document* doc = nullptr;
  const EmbeddingVector* e_d = nullptr;
};

// Returns nullopt when the gold document is not among the candidates.
std::optional<TrainExample> CompileExample(
    const Query& query, const EmbeddingVector& e_q,
    const std::vector<CompiledCandidate>& candidates, const PartialDate& t_ref,
    const FeatureOptions& options, const ScorerShape& shape);

// Scores of every candidate under params, same arithmetic as ScorePair.
struct ExampleScores {
  Eigen::VectorXd time;
  Eigen::VectorXd final;
};
ExampleScores ForwardScores(const TrainExample& ex, const ScorerParams& params);

// Listwise softmax cross-entropy over final/temperature: -log p(gold).
double Loss(const TrainExample& ex, const ScorerParams& params,
            double temperature);

struct LossAndGradient {
  double loss = 0.0;
  ScorerParams grad;      // same shape as the params
  Eigen::VectorXd final;  // candidate scores at which it was evaluated
};

// Exact analytic gradient of Loss with respect to every parameter.
LossAndGradient Gradient(const TrainExample& ex, const ScorerParams& params,
                         double temperature);

// Whether gold is ranked first under FinalRanksBefore.
bool GoldRankedFirst(const TrainExample& ex, const Eigen::VectorXd& final);

struct EpochStats {
  int epoch = 0;
  double mean_loss = 0.0;
  double train_r_at_1 = 0.0;
};

struct FitResult {
  ScorerParams params;
  std::vector<EpochStats> trace;
};

// Mini-batch Adam with bias correction over a seeded shuffle schedule.
// Throws TrainingError on non-finite loss or parameters.
FitResult Fit(const std::vector<TrainExample>& data, const TrainConfig& cfg,
              const ScorerParams& initial);

}  // namespace tempo

#endif  // TEMPO_TRAIN_H_
