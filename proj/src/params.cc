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

#include "tempo/params.h"

#include <cmath>
#include <cstring>
#include <fstream>

#include "tempo/random.h"

namespace tempo {

namespace {

constexpr char kMagic[4] = {'R', 'E', '3', 'P'};
constexpr uint32_t kVersion = 1;

void WriteU32(std::ostream& out, uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void WriteF64(std::ostream& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

uint32_t ReadU32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw ConfigError("truncated params header");
  }
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return v;
}

double ReadF64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) {
    throw ConfigError("truncated params payload");
  }
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

}  // namespace

ScorerParams ScorerParams::Zeros(const ScorerShape& shape) {
  if (shape.sem_dim < 1 || shape.time_dim < 1 || shape.hidden < 1) {
    throw ConfigError("scorer dimensions must be positive");
  }
  ScorerParams p;
  p.shape = shape;
  p.w1 = Eigen::MatrixXd::Zero(shape.hidden, shape.input_dim());
  p.b1 = Eigen::VectorXd::Zero(shape.hidden);
  p.w2 = Eigen::MatrixXd::Zero(shape.sem_dim, shape.hidden);
  p.b2 = Eigen::VectorXd::Zero(shape.sem_dim);
  p.miss_rel = Eigen::VectorXd::Zero(shape.time_dim);
  p.miss_rec = Eigen::VectorXd::Zero(shape.time_dim);
  p.alpha = 0.0;
  return p;
}

ScorerParams ScorerParams::Initialize(const ScorerShape& shape,
                                      uint64_t seed) {
  ScorerParams p = Zeros(shape);
  Rng rng(seed);
  const double limit1 = std::sqrt(6.0 / (shape.input_dim() + shape.hidden));
  for (Eigen::Index r = 0; r < p.w1.rows(); ++r)
    for (Eigen::Index c = 0; c < p.w1.cols(); ++c)
      p.w1(r, c) = rng.Uniform(-limit1, limit1);
  const double limit2 = std::sqrt(6.0 / (shape.hidden + shape.sem_dim));
  for (Eigen::Index r = 0; r < p.w2.rows(); ++r)
    for (Eigen::Index c = 0; c < p.w2.cols(); ++c)
      p.w2(r, c) = rng.Uniform(-limit2, limit2);
  return p;
}

void ScorerParams::Validate() const {
  const ScorerShape& s = shape;
  if (w1.rows() != s.hidden || w1.cols() != s.input_dim() ||
      b1.size() != s.hidden || w2.rows() != s.sem_dim ||
      w2.cols() != s.hidden || b2.size() != s.sem_dim ||
      miss_rel.size() != s.time_dim || miss_rec.size() != s.time_dim) {
    throw ConfigError("scorer parameter shapes inconsistent with (sem_dim=" +
                      std::to_string(s.sem_dim) + ", time_dim=" +
                      std::to_string(s.time_dim) + ", hidden=" +
                      std::to_string(s.hidden) + ")");
  }
}

bool ScorerParams::AllFinite() const {
  bool finite = true;
  ForEach([&](double v) { finite = finite && std::isfinite(v); });
  return finite;
}

int64_t ScorerParams::size() const {
  return w1.size() + b1.size() + w2.size() + b2.size() + miss_rel.size() +
         miss_rec.size() + 1;
}

bool ScorerParams::operator==(const ScorerParams& other) const {
  return shape == other.shape && w1 == other.w1 && b1 == other.b1 &&
         w2 == other.w2 && b2 == other.b2 && miss_rel == other.miss_rel &&
         miss_rec == other.miss_rec && alpha == other.alpha;
}

void SaveParams(const ScorerParams& params,
                const std::filesystem::path& path) {
  params.Validate();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write params: " + path.string());
  out.write(kMagic, 4);
  WriteU32(out, kVersion);
  WriteU32(out, static_cast<uint32_t>(params.shape.sem_dim));
  WriteU32(out, static_cast<uint32_t>(params.shape.time_dim));
  WriteU32(out, static_cast<uint32_t>(params.shape.hidden));
  params.ForEach([&](double v) { WriteF64(out, v); });
  if (!out) throw ConfigError("failed writing params: " + path.string());
}

ScorerParams LoadParams(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read params: " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw ConfigError("not a params file (bad magic): " + path.string());
  }
  const uint32_t version = ReadU32(in);
  if (version != kVersion) {
    throw ConfigError("unsupported params version " + std::to_string(version));
  }
  ScorerShape shape;
  shape.sem_dim = static_cast<int>(ReadU32(in));
  shape.time_dim = static_cast<int>(ReadU32(in));
  shape.hidden = static_cast<int>(ReadU32(in));
  if (shape.sem_dim > (1 << 16) || shape.time_dim > (1 << 16) ||
      shape.hidden > (1 << 16)) {
    throw ConfigError("implausible params dimensions in " + path.string());
  }
  ScorerParams p = ScorerParams::Zeros(shape);
  p.ForEachMutable([&](double& v) { v = ReadF64(in); });
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ConfigError("trailing bytes in params file " + path.string());
  }
  return p;
}

}  // namespace tempo
