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

#ifndef TEMPO_ENCODE_H_
#define TEMPO_ENCODE_H_

#include <optional>
#include <span>

#include <Eigen/Dense>

#include "tempo/date.h"
#include "tempo/params.h"

namespace tempo {

// Gaps are clamped to ten thousand years before encoding.
inline constexpr int64_t kMaxGapDays = 3652500;

struct EncodingConfig {
  int dim = 64;  // even, >= 2
  double base = 3.0;

  void Validate() const;
};

// Sinusoidal features of a day gap; length EncodingConfig::dim.
using FourierFeature = Eigen::VectorXd;

// Encoded gaps plus missing flags. When a flag is set, the matching feature
// is the learned substitute embedding rather than an encoding.
struct TemporalFeatures {
  Eigen::VectorXd phi_rel;
  Eigen::VectorXd phi_rec;
  bool m_rel = false;
  bool m_rec = false;
};

// Minimum interval gap between the query time and any clue time. Absent when
// either side is missing.
std::optional<GapDays> RelevanceGap(const std::optional<PartialDate>& t_q,
                                    std::span<const PartialDate> t_c);

// Gap between the reference time and the document time, absent without t_d.
std::optional<GapDays> RecencyGap(const PartialDate& t_ref,
                                  const std::optional<PartialDate>& t_d);

// Period of frequency pair i: base^(2i/dim).
double Period(int i, const EncodingConfig& cfg);

// values[2i] = sin(gap / period_i), values[2i+1] = cos(gap / period_i).
FourierFeature FourierEncode(GapDays gap, const EncodingConfig& cfg);

// Substitutes params.miss_rel / params.miss_rec for absent gaps.
TemporalFeatures BuildFeatures(const std::optional<GapDays>& gap_rel,
                               const std::optional<GapDays>& gap_rec,
                               const EncodingConfig& cfg,
                               const ScorerParams& params);

}  // namespace tempo

#endif  // TEMPO_ENCODE_H_
