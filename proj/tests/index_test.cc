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
#include <filesystem>

#include <gtest/gtest.h>

#include "tempo/random.h"

namespace tempo {
namespace {

EmbeddingStore RandomStore(Rng& rng, int n, int dim) {
  EmbeddingStore s;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v(dim);
    for (int j = 0; j < dim; ++j) v(j) = rng.Uniform(-1, 1);
    char id[16];
    std::snprintf(id, sizeof id, "d%04d", (i * 37) % n);
    s.Add(id, v);
  }
  return s;
}

// Scores everything, sorts everything.
std::vector<Candidate> FullSort(const EmbeddingStore& s, const Eigen::VectorXd& q) {
  std::vector<Candidate> all;
  for (size_t i = 0; i < s.size(); ++i) {
    const Eigen::VectorXd& v = s.vector(i);
    all.push_back({s.id(i), q.dot(v) / (q.norm() * v.norm())});
  }
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    return a.score_sem != b.score_sem ? a.score_sem > b.score_sem : a.doc_id < b.doc_id;
  });
  return all;
}

TEST(TopK, MatchesFullSortOracle) {
  Rng rng(17);
  for (int n : {200, 2000}) {
    const ExactIndex index(RandomStore(rng, n, 24));
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXd q(24);
      for (int j = 0; j < 24; ++j) q(j) = rng.Uniform(-1, 1);
      const std::vector<Candidate> oracle = FullSort(index.store(), q);
      for (int k : {1, 5, 50, n + 3}) {
        const CandidatePool pool = index.TopK(q, k, "q");
        ASSERT_EQ(pool.entries.size(), std::min<size_t>(k, n));
        for (size_t i = 0; i < pool.entries.size(); ++i) {
          EXPECT_EQ(pool.entries[i].doc_id, oracle[i].doc_id);
          EXPECT_NEAR(pool.entries[i].score_sem, oracle[i].score_sem, 1e-12);
        }
      }
    }
  }
}

TEST(TopK, ExactMatchFirst) {
  EmbeddingStore s;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(4);
  for (int i = 0; i < 4; ++i) {
    e.setZero();
    e(i) = 1;
    s.Add("d" + std::to_string(i), e);
  }
  const ExactIndex index(s);
  e.setZero();
  e(2) = 1;
  const CandidatePool pool = index.TopK(e, 10);
  ASSERT_EQ(pool.entries.size(), 4u);
  EXPECT_EQ(pool.entries[0].doc_id, "d2");
  EXPECT_DOUBLE_EQ(pool.entries[0].score_sem, 1.0);
  // The rest tie at zero and follow id order.
  EXPECT_EQ(pool.entries[1].doc_id, "d0");
  EXPECT_EQ(pool.entries[3].doc_id, "d3");
}

TEST(TopK, TiesByIdRegardlessOfInsertion) {
  EmbeddingStore a, b;
  const Eigen::VectorXd v = Eigen::VectorXd::Ones(3);
  for (const char* id : {"c", "a", "b"}) a.Add(id, v);
  for (const char* id : {"b", "c", "a"}) b.Add(id, v);
  const auto pa = ExactIndex(a).TopK(v, 2), pb = ExactIndex(b).TopK(v, 2);
  ASSERT_EQ(pa.entries.size(), 2u);
  EXPECT_EQ(pa.entries[0].doc_id, "a");
  EXPECT_EQ(pa.entries[1].doc_id, "b");
  EXPECT_EQ(pb.entries[0].doc_id, "a");
  EXPECT_EQ(pb.entries[1].doc_id, "b");
}

TEST(TopK, Errors) {
  EXPECT_TRUE(ExactIndex().TopK(Eigen::VectorXd::Ones(3), 5).entries.empty());
  EmbeddingStore s;
  s.Add("a", Eigen::VectorXd::Ones(3));
  const ExactIndex index(s);
  EXPECT_THROW(index.TopK(Eigen::VectorXd::Ones(4), 5), EmbedError);
  EXPECT_THROW(index.TopK(Eigen::VectorXd::Ones(3), 0), std::invalid_argument);
}

TEST(Index, SaveLoad) {
  Rng rng(2);
  const ExactIndex index(RandomStore(rng, 50, 8), 42);
  const auto p = std::filesystem::temp_directory_path() /
                 ("tempo_index_" + std::to_string(::getpid()) + ".bin");
  index.Save(p);
  const ExactIndex back = ExactIndex::Load(p);
  EXPECT_EQ(back.embed_seed(), 42u);
  EXPECT_EQ(back.store(), index.store());
  std::filesystem::remove(p);
}

}  // namespace
}  // namespace tempo
