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

#ifndef TEMPO_INDEX_H_
#define TEMPO_INDEX_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tempo/embed.h"

namespace tempo {

struct Candidate {
  std::string doc_id;
  double score_sem = 0.0;
};

// Top-k documents for one query, descending by score_sem, ties by doc id.
struct CandidatePool {
  std::string query_id;
  std::vector<Candidate> entries;
};

// Orders candidates by descending score, then ascending doc id.
bool RanksBefore(const Candidate& a, const Candidate& b);

// Exact cosine search by full scan with bounded selection.
class ExactIndex {
 public:
  ExactIndex() = default;
  explicit ExactIndex(EmbeddingStore store, uint64_t embed_seed = 0);

  // Empty store gives an empty pool. Throws EmbedError on width mismatch and
  // std::invalid_argument for k < 1.
  CandidatePool TopK(const EmbeddingVector& query, int k,
                     std::string query_id = {}) const;

  const EmbeddingStore& store() const { return store_; }
  // Seed of the toy embedder that produced the vectors, for query embedding.
  uint64_t embed_seed() const { return embed_seed_; }

  // "RE3I", u32 version, u64 embed seed, u32 dim, u64 count, then per record
  // u32 id length, id bytes, dim float64 values; all little-endian.
  void Save(const std::filesystem::path& path) const;
  static ExactIndex Load(const std::filesystem::path& path);

 private:
  EmbeddingStore store_;
  uint64_t embed_seed_ = 0;
};

}  // namespace tempo

#endif  // TEMPO_INDEX_H_
