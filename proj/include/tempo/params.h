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

#ifndef TEMPO_PARAMS_H_
#define TEMPO_PARAMS_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tempo {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScorerShape {
  int sem_dim = 64;   // semantic embedding width, also the MLP output width
  int time_dim = 64;  // width of each temporal feature block
  int hidden = 64;

  int input_dim() const { return sem_dim + 2 * time_dim + 2; }
  bool operator==(const ScorerShape&) const = default;
};

// Trainable state of the time-aware scorer: a one-hidden-layer tanh MLP
// mapping [doc ⊕ rel features ⊕ rec features ⊕ m_rel ⊕ m_rec] to a vector of
// sem_dim, two substitute embeddings for missing timestamps, and the gate
// logit alpha.
struct ScorerParams {
  ScorerShape shape;
  Eigen::MatrixXd w1;  // hidden x input_dim
  Eigen::VectorXd b1;  // hidden
  Eigen::MatrixXd w2;  // sem_dim x hidden
  Eigen::VectorXd b2;  // sem_dim
  Eigen::VectorXd miss_rel;  // time_dim
  Eigen::VectorXd miss_rec;  // time_dim
  double alpha = 0.0;

  // All-zero parameters of the given shape.
  static ScorerParams Zeros(const ScorerShape& shape);
  // Glorot-uniform weights, zero biases, zero missing embeddings, alpha 0.
  static ScorerParams Initialize(const ScorerShape& shape, uint64_t seed);

  // Throws ConfigError on inconsistent shapes.
  void Validate() const;
  bool AllFinite() const;

  // Number of scalars, in serialization order.
  int64_t size() const;
  // Visits every scalar in serialization order: w1 (row-major), b1,
  // w2 (row-major), b2, miss_rel, miss_rec, alpha.
  template <typename F>
  void ForEach(F&& f) const;
  template <typename F>
  void ForEachMutable(F&& f);

  bool operator==(const ScorerParams& other) const;
};

// Binary layout (little-endian): "RE3P", u32 version, u32 sem_dim,
// u32 time_dim, u32 hidden, then size() float64 values in ForEach order.
void SaveParams(const ScorerParams& params, const std::filesystem::path& path);
ScorerParams LoadParams(const std::filesystem::path& path);

template <typename F>
void ScorerParams::ForEach(F&& f) const {
  for (Eigen::Index r = 0; r < w1.rows(); ++r)
    for (Eigen::Index c = 0; c < w1.cols(); ++c) f(w1(r, c));
  for (Eigen::Index i = 0; i < b1.size(); ++i) f(b1(i));
  for (Eigen::Index r = 0; r < w2.rows(); ++r)
    for (Eigen::Index c = 0; c < w2.cols(); ++c) f(w2(r, c));
  for (Eigen::Index i = 0; i < b2.size(); ++i) f(b2(i));
  for (Eigen::Index i = 0; i < miss_rel.size(); ++i) f(miss_rel(i));
  for (Eigen::Index i = 0; i < miss_rec.size(); ++i) f(miss_rec(i));
  f(alpha);
}

template <typename F>
void ScorerParams::ForEachMutable(F&& f) {
  for (Eigen::Index r = 0; r < w1.rows(); ++r)
    for (Eigen::Index c = 0; c < w1.cols(); ++c) f(w1(r, c));
  for (Eigen::Index i = 0; i < b1.size(); ++i) f(b1(i));
  for (Eigen::Index r = 0; r < w2.rows(); ++r)
    for (Eigen::Index c = 0; c < w2.cols(); ++c) f(w2(r, c));
  for (Eigen::Index i = 0; i < b2.size(); ++i) f(b2(i));
  for (Eigen::Index i = 0; i < miss_rel.size(); ++i) f(miss_rel(i));
  for (Eigen::Index i = 0; i < miss_rec.size(); ++i) f(miss_rec(i));
  f(alpha);
}

}  // namespace tempo

#endif  // TEMPO_PARAMS_H_
