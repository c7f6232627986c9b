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

#include "tempo/index.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace tempo {

namespace {

constexpr char kMagic[4] = {'R', 'E', '3', 'I'};
constexpr uint32_t kVersion = 1;

void PutLe(std::ostream& out, uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.put(static_cast<char>(v >> (8 * i)));
}

uint64_t GetLe(std::istream& in, int bytes) {
  uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      throw EmbedError("truncated index file");
    }
    v |= static_cast<uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

}  // namespace

bool RanksBefore(const Candidate& a, const Candidate& b) {
  if (a.score_sem != b.score_sem) return a.score_sem > b.score_sem;
  return a.doc_id < b.doc_id;
}

ExactIndex::ExactIndex(EmbeddingStore store, uint64_t embed_seed)
    : store_(std::move(store)), embed_seed_(embed_seed) {}

CandidatePool ExactIndex::TopK(const EmbeddingVector& query, int k,
                               std::string query_id) const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  CandidatePool pool{std::move(query_id), {}};
  if (store_.empty()) return pool;
  if (query.size() != store_.dim()) {
    throw EmbedError("query dim " + std::to_string(query.size()) +
                     " does not match index dim " +
                     std::to_string(store_.dim()));
  }
  std::vector<Candidate> all;
  all.reserve(store_.size());
  for (size_t i = 0; i < store_.size(); ++i) {
    all.push_back({store_.id(i), Cosine(query, store_.vector(i))});
  }
  const size_t keep = std::min(all.size(), static_cast<size_t>(k));
  std::partial_sort(all.begin(), all.begin() + keep, all.end(), RanksBefore);
  all.resize(keep);
  pool.entries = std::move(all);
  return pool;
}

void ExactIndex::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw EmbedError("cannot write " + path.string());
  out.write(kMagic, 4);
  PutLe(out, kVersion, 4);
  PutLe(out, embed_seed_, 8);
  PutLe(out, static_cast<uint32_t>(store_.dim()), 4);
  PutLe(out, store_.size(), 8);
  for (size_t i = 0; i < store_.size(); ++i) {
    const std::string& id = store_.id(i);
    PutLe(out, id.size(), 4);
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
    const EmbeddingVector& v = store_.vector(i);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      uint64_t bits;
      std::memcpy(&bits, &v[k], sizeof(bits));
      PutLe(out, bits, 8);
    }
  }
  if (!out) throw EmbedError("failed writing " + path.string());
}

ExactIndex ExactIndex::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EmbedError("cannot read " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw EmbedError("not an index file: " + path.string());
  }
  if (GetLe(in, 4) != kVersion) {
    throw EmbedError("unsupported index version in " + path.string());
  }
  const uint64_t seed = GetLe(in, 8);
  const auto dim = static_cast<int>(GetLe(in, 4));
  const uint64_t count = GetLe(in, 8);
  EmbeddingStore store;
  for (uint64_t r = 0; r < count; ++r) {
    const auto len = static_cast<size_t>(GetLe(in, 4));
    std::string id(len, '\0');
    if (!in.read(id.data(), static_cast<std::streamsize>(len))) {
      throw EmbedError("truncated index file");
    }
    EmbeddingVector v(dim);
    for (int k = 0; k < dim; ++k) {
      const uint64_t bits = GetLe(in, 8);
      std::memcpy(&v[k], &bits, sizeof(bits));
    }
    store.Add(std::move(id), std::move(v));
  }
  return ExactIndex(std::move(store), seed);
}

}  // namespace tempo
