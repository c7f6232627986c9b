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

#ifndef TEMPO_TESTS_WORLD_H_
#define TEMPO_TESTS_WORLD_H_

// A small random corpus with one query, covering all four timestamp
// availability patterns.

#include <string>
#include <vector>

#include "tempo/embed.h"
#include "tempo/index.h"
#include "tempo/random.h"
#include "tempo/records.h"
#include "tempo/scorer.h"

namespace tempo::testing {

struct World {
  std::vector<Document> docs;
  DocumentTable table;
  EmbeddingStore vectors;
  Query query;
  EmbeddingVector e_q;
  CandidatePool pool;
};

inline World MakeWorld(uint64_t seed, int n, int dim) {
  Rng rng(seed);
  World w;
  static const char* kWords[] = {"rain",  "sun",    "boston", "denver", "cold",  "warm",
                                 "wind",  "snow",   "report", "today",  "fog",   "hail",
                                 "miami", "austin", "storm",  "clear",  "humid", "dry"};
  auto text = [&] {
    std::string s;
    for (int i = 0; i < 8; ++i) s += std::string(kWords[rng.Below(18)]) + " ";
    return s;
  };
  auto day = [&] { return PartialDate::FromDayNumber({rng.Between(738800, 738900)}); };
  for (int i = 0; i < n; ++i) {
    Document d;
    d.id = "doc" + std::to_string(100 + i);
    d.text = text();
    const int pattern = i % 4;
    if (pattern & 1) d.t_c = {day()};
    if (pattern & 2) d.t_d = day();
    w.docs.push_back(d);
    w.vectors.Add(d.id, ToyEmbed(d.text, dim, seed));
  }
  w.table = DocumentTable(w.docs);
  w.query = {"q0", text(), day(), w.docs[0].id, Scenario::kHyb};
  w.e_q = ToyEmbed(w.query.text, dim, seed);
  w.pool = ExactIndex(w.vectors).TopK(w.e_q, n, w.query.id);
  return w;
}

// Whether `out` is sorted by `key` descending, treating keys closer than
// `tol` as ties.
template <typename Key>
bool OrderedBy(const std::vector<ScoredCandidate>& out, Key key, double tol) {
  for (size_t i = 0; i + 1 < out.size(); ++i) {
    if (key(out[i]) < key(out[i + 1]) - tol) return false;
  }
  return true;
}

inline RerankContext Context(const World& w, int time_dim) {
  RerankContext ctx;
  ctx.docs = &w.table;
  ctx.doc_vectors = &w.vectors;
  ctx.features.encoding.dim = time_dim;
  ctx.policy = RefTimePolicy::QueryTime();
  return ctx;
}

}  // namespace tempo::testing

#endif  // TEMPO_TESTS_WORLD_H_
