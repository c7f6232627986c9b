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

namespace tempo {

RefTimePolicy RefTimePolicy::Fixed(PartialDate today) {
  RefTimePolicy p;
  p.fixed_ = today;
  return p;
}

RefTimePolicy RefTimePolicy::QueryTime() { return RefTimePolicy(); }

RefTimePolicy RefTimePolicy::Parse(std::string_view spec) {
  if (spec == "query-time") return QueryTime();
  constexpr std::string_view kPrefix = "fixed:";
  if (spec.substr(0, kPrefix.size()) == kPrefix) {
    try {
      return Fixed(ParseDate(spec.substr(kPrefix.size())));
    } catch (const DateError& e) {
      throw PolicyError(std::string("bad fixed reference date: ") + e.what());
    }
  }
  throw PolicyError("policy must be 'query-time' or 'fixed:YYYY-MM-DD', got '" +
                    std::string(spec) + "'");
}

PartialDate RefTimePolicy::Resolve(const Query& query) const {
  if (fixed_) return *fixed_;
  if (!query.t_q) {
    throw PolicyError("query-time reference policy but query '" + query.id +
                      "' has no t_q");
  }
  return *query.t_q;
}

std::string RefTimePolicy::ToString() const {
  return fixed_ ? "fixed:" + FormatDate(*fixed_) : "query-time";
}

namespace {

Eigen::VectorXd ScalarRepeat(GapDays gap, int dim) {
  const double g =
      static_cast<double>(std::clamp<int64_t>(gap.value, 0, kMaxGapDays));
  return Eigen::VectorXd::Constant(dim, g);
}

Eigen::VectorXd DateDiff(const PartialDate& a, const PartialDate& b,
                         const FeatureOptions& options) {
  const int dim = options.encoding.dim;
  return ToyEmbed(FormatDate(a), dim, options.embed_seed) -
         ToyEmbed(FormatDate(b), dim, options.embed_seed);
}

Eigen::VectorXd Encode(GapDays gap, const PartialDate& from,
                       const PartialDate& to, const FeatureOptions& options) {
  switch (options.kind) {
    case TimeEncoding::kFourier:
      return FourierEncode(gap, options.encoding);
    case TimeEncoding::kScalarRepeat:
      return ScalarRepeat(gap, options.encoding.dim);
    case TimeEncoding::kEmbeddingDiff:
      return DateDiff(from, to, options);
  }
  return FourierEncode(gap, options.encoding);
}

}  // namespace

TimeInputs ComputeTimeInputs(const Query& query, const Document& doc,
                             const PartialDate& t_ref,
                             const FeatureOptions& options) {
  TimeInputs in;
  in.gap_rel = RelevanceGap(query.t_q, doc.t_c);
  if (in.gap_rel) {
    // The clue time that attains the minimum; first one on ties.
    const PartialDate* nearest = &doc.t_c.front();
    for (const PartialDate& clue : doc.t_c) {
      if (IntervalGap(*query.t_q, clue) < IntervalGap(*query.t_q, *nearest)) {
        nearest = &clue;
      }
    }
    in.rel = Encode(*in.gap_rel, *query.t_q, *nearest, options);
  }
  in.gap_rec = RecencyGap(t_ref, doc.t_d);
  if (in.gap_rec) in.rec = Encode(*in.gap_rec, t_ref, *doc.t_d, options);
  return in;
}

TemporalFeatures ResolveFeatures(const TimeInputs& inputs,
                                 const FeatureOptions& options,
                                 const ScorerParams& params) {
  if (options.kind == TimeEncoding::kFourier && options.missing_aware) {
    // The default path is exactly the encoder's substitution rule.
    TemporalFeatures f =
        BuildFeatures(std::nullopt, std::nullopt, options.encoding, params);
    if (inputs.gap_rel) {
      f.phi_rel = inputs.rel;
      f.m_rel = false;
    }
    if (inputs.gap_rec) {
      f.phi_rec = inputs.rec;
      f.m_rec = false;
    }
    return f;
  }
  const int dim = options.encoding.dim;
  if (params.miss_rel.size() != dim || params.miss_rec.size() != dim) {
    throw ConfigError("missing embeddings do not match encoding dim");
  }
  TemporalFeatures f;
  auto resolve = [&](const std::optional<GapDays>& gap,
                     const Eigen::VectorXd& present,
                     const Eigen::VectorXd& miss, Eigen::VectorXd* phi,
                     bool* flag) {
    if (gap) {
      *phi = present;
      *flag = false;
    } else if (options.missing_aware) {
      *phi = miss;
      *flag = true;
    } else {
      *phi = Eigen::VectorXd::Zero(dim);
      *flag = false;
    }
  };
  resolve(inputs.gap_rel, inputs.rel, params.miss_rel, &f.phi_rel, &f.m_rel);
  resolve(inputs.gap_rec, inputs.rec, params.miss_rec, &f.phi_rec, &f.m_rec);
  return f;
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Eigen::VectorXd ScorerInput(const EmbeddingVector& e_d,
                            const TemporalFeatures& feats) {
  Eigen::VectorXd x(e_d.size() + feats.phi_rel.size() + feats.phi_rec.size() +
                    2);
  x << e_d, feats.phi_rel, feats.phi_rec, feats.m_rel ? 1.0 : 0.0,
      feats.m_rec ? 1.0 : 0.0;
  return x;
}

EmbeddingVector ProjectTimeAware(const EmbeddingVector& e_d,
                                 const TemporalFeatures& feats,
                                 const ScorerParams& params) {
  const ScorerShape& s = params.shape;
  if (e_d.size() != s.sem_dim || feats.phi_rel.size() != s.time_dim ||
      feats.phi_rec.size() != s.time_dim) {
    throw ConfigError("scorer input dims (" + std::to_string(e_d.size()) +
                      ", " + std::to_string(feats.phi_rel.size()) + ", " +
                      std::to_string(feats.phi_rec.size()) +
                      ") do not match params (" + std::to_string(s.sem_dim) +
                      ", " + std::to_string(s.time_dim) + ")");
  }
  const Eigen::VectorXd x = ScorerInput(e_d, feats);
  const Eigen::VectorXd h = (params.w1 * x + params.b1).array().tanh().matrix();
  return params.w2 * h + params.b2;
}

PairScores ScorePair(const EmbeddingVector& e_q, const EmbeddingVector& e_d,
                     const TemporalFeatures& feats,
                     const ScorerParams& params) {
  PairScores s;
  s.sem = Cosine(e_q, e_d);
  s.time = Cosine(e_q, ProjectTimeAware(e_d, feats, params));
  const double gate = Sigmoid(params.alpha);
  s.final = gate * s.sem + (1.0 - gate) * s.time;
  return s;
}

bool FinalRanksBefore(const ScoredCandidate& a, const ScoredCandidate& b) {
  if (a.score_final != b.score_final) return a.score_final > b.score_final;
  if (a.score_sem != b.score_sem) return a.score_sem > b.score_sem;
  return a.doc_id < b.doc_id;
}

std::vector<ScoredCandidate> Rerank(const CandidatePool& pool,
                                    const Query& query,
                                    const EmbeddingVector& e_q,
                                    const ScorerParams& params,
                                    const RerankContext& ctx) {
  const PartialDate t_ref = ctx.policy.Resolve(query);
  std::vector<ScoredCandidate> out;
  out.reserve(pool.entries.size());
  for (const Candidate& c : pool.entries) {
    const Document* doc = ctx.docs->Find(c.doc_id);
    const EmbeddingVector* e_d = ctx.doc_vectors->Find(c.doc_id);
    if (!doc || !e_d) {
      throw std::out_of_range("candidate '" + c.doc_id +
                              "' not found in documents or vectors");
    }
    const TimeInputs in = ComputeTimeInputs(query, *doc, t_ref, ctx.features);
    const TemporalFeatures feats = ResolveFeatures(in, ctx.features, params);
    const PairScores s = ScorePair(e_q, *e_d, feats, params);
    out.push_back({c.doc_id, s.sem, s.time, s.final, in.gap_rel, in.gap_rec,
                   feats.m_rel, feats.m_rec});
  }
  std::sort(out.begin(), out.end(), FinalRanksBefore);
  return out;
}

}  // namespace tempo
