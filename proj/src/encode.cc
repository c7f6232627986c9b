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

#include "tempo/encode.h"

#include <algorithm>
#include <cmath>

namespace tempo {

void EncodingConfig::Validate() const {
  if (dim < 2 || dim % 2 != 0) {
    throw ConfigError("encoding dim must be even and >= 2, got " +
                      std::to_string(dim));
  }
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw ConfigError("encoding base must be > 1");
  }
}

std::optional<GapDays> RelevanceGap(const std::optional<PartialDate>& t_q,
                                    std::span<const PartialDate> t_c) {
  if (!t_q || t_c.empty()) return std::nullopt;
  GapDays best{INT64_MAX};
  for (const PartialDate& clue : t_c) {
    best = std::min(best, IntervalGap(*t_q, clue));
  }
  return best;
}

std::optional<GapDays> RecencyGap(const PartialDate& t_ref,
                                  const std::optional<PartialDate>& t_d) {
  if (!t_d) return std::nullopt;
  return IntervalGap(t_ref, *t_d);
}

double Period(int i, const EncodingConfig& cfg) {
  return std::pow(cfg.base, 2.0 * i / cfg.dim);
}

FourierFeature FourierEncode(GapDays gap, const EncodingConfig& cfg) {
  cfg.Validate();
  // Phases reach millions of radians; a double quotient would already be off
  // by ~1e-10 there, so the phase is formed in extended precision.
  const long double delta = static_cast<long double>(
      std::clamp<int64_t>(gap.value, 0, kMaxGapDays));
  const long double base = cfg.base;
  FourierFeature out(cfg.dim);
  for (int i = 0; i < cfg.dim / 2; ++i) {
    const long double arg = delta / std::pow(base, 2.0L * i / cfg.dim);
    out[2 * i] = static_cast<double>(std::sin(arg));
    out[2 * i + 1] = static_cast<double>(std::cos(arg));
  }
  return out;
}

TemporalFeatures BuildFeatures(const std::optional<GapDays>& gap_rel,
                               const std::optional<GapDays>& gap_rec,
                               const EncodingConfig& cfg,
                               const ScorerParams& params) {
  if (params.miss_rel.size() != cfg.dim || params.miss_rec.size() != cfg.dim) {
    throw ConfigError("missing embeddings have dim " +
                      std::to_string(params.miss_rel.size()) +
                      " but encoding dim is " + std::to_string(cfg.dim));
  }
  TemporalFeatures f;
  f.m_rel = !gap_rel.has_value();
  f.m_rec = !gap_rec.has_value();
  f.phi_rel = f.m_rel ? params.miss_rel : FourierEncode(*gap_rel, cfg);
  f.phi_rec = f.m_rec ? params.miss_rec : FourierEncode(*gap_rec, cfg);
  return f;
}

}  // namespace tempo
