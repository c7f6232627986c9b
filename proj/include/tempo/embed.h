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

#ifndef TEMPO_EMBED_H_
#define TEMPO_EMBED_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "tempo/date.h"

namespace tempo {

using EmbeddingVector = Eigen::VectorXd;

class EmbedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic hashing embedder: signed counts of lowercased character
// 3-grams hashed into `dim` buckets, L2-normalized. Texts without any 3-gram
// (or whose counts cancel) map to the first basis vector. dim >= 8.
EmbeddingVector ToyEmbed(std::string_view text, int dim, uint64_t seed);

// Cosine similarity; 0 when either norm is below 1e-12. Throws EmbedError on
// mismatched dimensions.
double Cosine(const EmbeddingVector& u, const EmbeddingVector& v);

// Appends " (proposed on YYYY-MM-DD)" when a document time is known.
std::string TimestampTag(std::string_view text,
                         const std::optional<PartialDate>& t_d);

// Id-keyed set of equal-width vectors. Immutable once loaded.
class EmbeddingStore {
 public:
  // 0 until the first vector is added.
  int dim() const { return dim_; }
  size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  // Throws EmbedError on duplicate id or width mismatch.
  void Add(std::string id, EmbeddingVector vec);

  const EmbeddingVector* Find(std::string_view id) const;
  const std::string& id(size_t i) const { return ids_[i]; }
  const EmbeddingVector& vector(size_t i) const { return vectors_[i]; }

  bool operator==(const EmbeddingStore& other) const;

 private:
  int dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<EmbeddingVector> vectors_;
  std::unordered_map<std::string, size_t> by_id_;
};

// Text format, one record per line: "<id>\t<v1> <v2> ... <vd>", values in
// shortest round-trip decimal.
void SaveStoreText(const EmbeddingStore& store,
                   const std::filesystem::path& path);

// Binary format (little-endian): "RE3V", u32 dim, u64 count, then per record
// u32 id length, id bytes, dim float32 values.
void SaveStoreBinary(const EmbeddingStore& store,
                     const std::filesystem::path& path);

// Reads either format, sniffing the magic.
EmbeddingStore LoadStore(const std::filesystem::path& path);

}  // namespace tempo

#endif  // TEMPO_EMBED_H_
