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

#include "tempo/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tempo/random.h"

namespace tempo {

namespace {

constexpr double kNormGuard = 1e-12;
constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

// Scorer inputs with the current missing embeddings filled in.
Eigen::MatrixXd FilledInputs(const TrainExample& ex,
                             const ScorerParams& params) {
  const int sem = params.shape.sem_dim;
  const int td = params.shape.time_dim;
  Eigen::MatrixXd x = ex.inputs;
  for (size_t j = 0; j < ex.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    if (ex.m_rel[j]) x.col(col).segment(sem, td) = params.miss_rel;
    if (ex.m_rec[j]) x.col(col).segment(sem + td, td) = params.miss_rec;
  }
  return x;
}

struct Forward {
  Eigen::MatrixXd x;
  Eigen::MatrixXd h;
  Eigen::MatrixXd y;
  Eigen::VectorXd y_norm;
  Eigen::VectorXd time;
  Eigen::VectorXd final;
  double q_norm = 0.0;
  double gate = 0.5;
};

Forward RunForward(const TrainExample& ex, const ScorerParams& params) {
  Forward f;
  f.x = FilledInputs(ex, params);
  f.h = ((params.w1 * f.x).colwise() + params.b1).array().tanh().matrix();
  f.y = (params.w2 * f.h).colwise() + params.b2;
  f.q_norm = ex.e_q.norm();
  const auto n = static_cast<Eigen::Index>(ex.size());
  f.y_norm.resize(n);
  f.time.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    f.y_norm[j] = f.y.col(j).norm();
    f.time[j] = (f.q_norm < kNormGuard || f.y_norm[j] < kNormGuard)
                    ? 0.0
                    : ex.e_q.dot(f.y.col(j)) / (f.q_norm * f.y_norm[j]);
  }
  f.gate = Sigmoid(params.alpha);
  f.final = f.gate * ex.sem + (1.0 - f.gate) * f.time;
  return f;
}

// log-softmax probabilities of final/temperature.
Eigen::VectorXd LogSoftmax(const Eigen::VectorXd& final, double temperature) {
  const Eigen::VectorXd z = final / temperature;
  const double zmax = z.maxCoeff();
  const double lse = zmax + std::log((z.array() - zmax).exp().sum());
  return z.array() - lse;
}

std::vector<double> Flatten(const ScorerParams& p) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(p.size()));
  p.ForEach([&](double v) { out.push_back(v); });
  return out;
}

void Unflatten(const std::vector<double>& flat, ScorerParams* p) {
  size_t i = 0;
  p->ForEachMutable([&](double& v) { v = flat[i++]; });
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(learning_rate > 0)) throw ConfigError("learning_rate must be > 0");
  if (epochs < 0) throw ConfigError("epochs must be >= 0");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(temperature > 0)) throw ConfigError("temperature must be > 0");
  if (weight_decay < 0) throw ConfigError("weight_decay must be >= 0");
}

std::optional<TrainExample> CompileExample(
    const Query& query, const EmbeddingVector& e_q,
    const std::vector<CompiledCandidate>& candidates, const PartialDate& t_ref,
    const FeatureOptions& options, const ScorerShape& shape) {
  TrainExample ex;
  ex.query_id = query.id;
  ex.e_q = e_q;
  const auto n = static_cast<Eigen::Index>(candidates.size());
  ex.inputs = Eigen::MatrixXd::Zero(shape.input_dim(), n);
  ex.sem.resize(n);
  // Placeholders never reach the model: filled per forward pass.
  const ScorerParams zero_miss = ScorerParams::Zeros(
      {shape.sem_dim, options.encoding.dim, 1});
  bool has_gold = false;
  for (Eigen::Index j = 0; j < n; ++j) {
    const CompiledCandidate& c = candidates[static_cast<size_t>(j)];
    if (c.e_d->size() != shape.sem_dim) {
      throw ConfigError("document '" + c.doc_id + "' has embedding dim " +
                        std::to_string(c.e_d->size()) + ", scorer expects " +
                        std::to_string(shape.sem_dim));
    }
    const TimeInputs in = ComputeTimeInputs(query, *c.doc, t_ref, options);
    const TemporalFeatures f = ResolveFeatures(in, options, zero_miss);
    ex.inputs.col(j) = ScorerInput(*c.e_d, f);
    ex.sem[j] = Cosine(e_q, *c.e_d);
    ex.m_rel.push_back(f.m_rel);
    ex.m_rec.push_back(f.m_rec);
    if (c.doc_id == query.gold) {
      ex.gold = static_cast<size_t>(j);
      has_gold = true;
    }
    ex.doc_ids.push_back(c.doc_id);
  }
  if (!has_gold) return std::nullopt;
  return ex;
}

ExampleScores ForwardScores(const TrainExample& ex,
                            const ScorerParams& params) {
  Forward f = RunForward(ex, params);
  return {std::move(f.time), std::move(f.final)};
}

double Loss(const TrainExample& ex, const ScorerParams& params,
            double temperature) {
  const Forward f = RunForward(ex, params);
  return -LogSoftmax(f.final, temperature)[static_cast<Eigen::Index>(ex.gold)];
}

LossAndGradient Gradient(const TrainExample& ex, const ScorerParams& params,
                         double temperature) {
  const ScorerShape& s = params.shape;
  const Forward f = RunForward(ex, params);
  const Eigen::VectorXd logp = LogSoftmax(f.final, temperature);
  const auto gold = static_cast<Eigen::Index>(ex.gold);

  LossAndGradient out;
  out.loss = -logp[gold];
  out.grad = ScorerParams::Zeros(s);
  out.final = f.final;

  // dL/dfinal_j = (p_j - [j == gold]) / T
  Eigen::VectorXd d_final = logp.array().exp();
  d_final[gold] -= 1.0;
  d_final /= temperature;

  const double dgate = f.gate * (1.0 - f.gate);
  out.grad.alpha = d_final.dot(ex.sem - f.time) * dgate;
  const Eigen::VectorXd d_time = d_final * (1.0 - f.gate);

  const auto n = static_cast<Eigen::Index>(ex.size());
  Eigen::MatrixXd d_y = Eigen::MatrixXd::Zero(s.sem_dim, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double ny = f.y_norm[j];
    if (f.q_norm < kNormGuard || ny < kNormGuard) continue;
    // d cos(q, y) / dy = q / (|q||y|) - cos * y / |y|^2
    d_y.col(j) = d_time[j] * (ex.e_q / (f.q_norm * ny) -
                              f.time[j] * f.y.col(j) / (ny * ny));
  }
  out.grad.w2 = d_y * f.h.transpose();
  out.grad.b2 = d_y.rowwise().sum();
  const Eigen::MatrixXd d_a =
      ((params.w2.transpose() * d_y).array() * (1.0 - f.h.array().square()))
          .matrix();
  out.grad.w1 = d_a * f.x.transpose();
  out.grad.b1 = d_a.rowwise().sum();

  bool any_missing = false;
  for (Eigen::Index j = 0; j < n; ++j) {
    any_missing = any_missing || ex.m_rel[static_cast<size_t>(j)] ||
                  ex.m_rec[static_cast<size_t>(j)];
  }
  if (any_missing) {
    const Eigen::MatrixXd d_x = params.w1.transpose() * d_a;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (ex.m_rel[static_cast<size_t>(j)]) {
        out.grad.miss_rel += d_x.col(j).segment(s.sem_dim, s.time_dim);
      }
      if (ex.m_rec[static_cast<size_t>(j)]) {
        out.grad.miss_rec +=
            d_x.col(j).segment(s.sem_dim + s.time_dim, s.time_dim);
      }
    }
  }
  return out;
}

bool GoldRankedFirst(const TrainExample& ex, const Eigen::VectorXd& final) {
  const auto g = static_cast<Eigen::Index>(ex.gold);
  for (Eigen::Index j = 0; j < final.size(); ++j) {
    if (j == g) continue;
    ScoredCandidate a, b;
    a.doc_id = ex.doc_ids[static_cast<size_t>(j)];
    a.score_sem = ex.sem[j];
    a.score_final = final[j];
    b.doc_id = ex.doc_ids[ex.gold];
    b.score_sem = ex.sem[g];
    b.score_final = final[g];
    if (FinalRanksBefore(a, b)) return false;
  }
  return true;
}

FitResult Fit(const std::vector<TrainExample>& data, const TrainConfig& cfg,
              const ScorerParams& initial) {
  cfg.Validate();
  initial.Validate();
  if (data.empty()) throw TrainingError("empty training set");
  FitResult result{initial, {}};
  if (cfg.frozen_alpha) result.params.alpha = *cfg.frozen_alpha;
  if (cfg.epochs == 0) {
    result.params = initial;
    return result;
  }

  ScorerParams& params = result.params;
  std::vector<double> theta = Flatten(params);
  std::vector<double> m(theta.size(), 0.0);
  std::vector<double> v(theta.size(), 0.0);
  // Weight decay applies to matrix weights only.
  const auto decayed = static_cast<size_t>(params.w1.size() + params.b1.size() +
                                           params.w2.size());
  const size_t w1_end = static_cast<size_t>(params.w1.size());
  const size_t w2_begin = w1_end + static_cast<size_t>(params.b1.size());
  const size_t alpha_index = theta.size() - 1;

  Rng rng(cfg.seed);
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  int64_t step = 0;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rng.Shuffle(order);
    double loss_sum = 0.0;
    size_t hits = 0;
    for (size_t start = 0, batch = 0; start < order.size();
         start += static_cast<size_t>(cfg.batch_size), ++batch) {
      const size_t end =
          std::min(order.size(), start + static_cast<size_t>(cfg.batch_size));
      std::vector<double> grad(theta.size(), 0.0);
      double batch_loss = 0.0;
      for (size_t b = start; b < end; ++b) {
        const TrainExample& ex = data[order[b]];
        LossAndGradient lg = Gradient(ex, params, cfg.temperature);
        if (!std::isfinite(lg.loss)) {
          throw TrainingError("non-finite loss in epoch " +
                              std::to_string(epoch) + ", batch " +
                              std::to_string(batch) + " (query '" +
                              ex.query_id + "')");
        }
        batch_loss += lg.loss;
        if (GoldRankedFirst(ex, lg.final)) ++hits;
        size_t i = 0;
        lg.grad.ForEach([&](double g) { grad[i++] += g; });
      }
      loss_sum += batch_loss;
      const double inv = 1.0 / static_cast<double>(end - start);
      ++step;
      const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
      for (size_t i = 0; i < theta.size(); ++i) {
        if (i == alpha_index && cfg.frozen_alpha) continue;
        double g = grad[i] * inv;
        const bool is_weight = i < w1_end || (i >= w2_begin && i < decayed);
        if (is_weight) g += cfg.weight_decay * theta[i];
        m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * g;
        v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * g * g;
        theta[i] -= cfg.learning_rate * (m[i] / bc1) /
                    (std::sqrt(v[i] / bc2) + kAdamEps);
      }
      Unflatten(theta, &params);
    }
    if (!params.AllFinite()) {
      throw TrainingError("parameters became non-finite in epoch " +
                          std::to_string(epoch));
    }
    result.trace.push_back(
        {epoch, loss_sum / static_cast<double>(data.size()),
         static_cast<double>(hits) / static_cast<double>(data.size())});
  }
  return result;
}

}  // namespace tempo
