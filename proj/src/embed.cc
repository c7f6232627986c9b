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

#include "tempo/embed.h"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tempo {

namespace {

constexpr char kMagic[4] = {'R', 'E', '3', 'V'};
constexpr uint64_t kFnvOffset = 14695981039346656037ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

uint64_t FnvMix(uint64_t h, uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
  return h;
}

// Decodes UTF-8, replacing malformed sequences with U+FFFD, lowercasing
// ASCII and collapsing whitespace runs.
std::vector<uint32_t> CodePoints(std::string_view text) {
  std::vector<uint32_t> out;
  out.reserve(text.size());
  size_t i = 0;
  bool last_space = false;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    uint32_t cp = 0xFFFD;
    size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c >> 4) == 0xE) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c >> 3) == 0x1E) {
      len = 4;
      cp = c & 0x07;
    } else {
      len = 0;
    }
    if (len > 1) {
      if (i + len > text.size()) {
        len = 0;
      } else {
        for (size_t k = 1; k < len; ++k) {
          const auto cc = static_cast<unsigned char>(text[i + k]);
          if ((cc >> 6) != 0x2) {
            len = 0;
            break;
          }
          cp = (cp << 6) | (cc & 0x3F);
        }
      }
    }
    if (len == 0) {
      cp = 0xFFFD;
      len = 1;
    }
    i += len;
    if (cp >= 'A' && cp <= 'Z') cp += 'a' - 'A';
    const bool space = cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r';
    if (space) {
      if (last_space) continue;
      cp = ' ';
    }
    last_space = space;
    out.push_back(cp);
  }
  return out;
}

void PutLe(std::ostream& out, uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.put(static_cast<char>(v >> (8 * i)));
}

uint64_t GetLe(std::istream& in, int bytes, const std::string& what) {
  uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      throw EmbedError("truncated embedding file while reading " + what);
    }
    v |= static_cast<uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

EmbeddingStore LoadBinary(std::istream& in) {
  EmbeddingStore store;
  const auto dim = static_cast<int>(GetLe(in, 4, "dim"));
  const uint64_t count = GetLe(in, 8, "count");
  for (uint64_t r = 0; r < count; ++r) {
    const auto len = static_cast<size_t>(GetLe(in, 4, "id length"));
    std::string id(len, '\0');
    if (!in.read(id.data(), static_cast<std::streamsize>(len))) {
      throw EmbedError("truncated embedding file while reading id");
    }
    EmbeddingVector v(dim);
    for (int k = 0; k < dim; ++k) {
      const auto bits = static_cast<uint32_t>(GetLe(in, 4, "value of " + id));
      float f;
      std::memcpy(&f, &bits, sizeof(f));
      v[k] = f;
    }
    store.Add(std::move(id), std::move(v));
  }
  return store;
}

EmbeddingStore LoadText(std::istream& in) {
  EmbeddingStore store;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw EmbedError("line " + std::to_string(line_no) +
                       ": expected '<id>\\t<values>'");
    }
    std::string id = line.substr(0, tab);
    std::vector<double> values;
    const char* p = line.data() + tab + 1;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || !std::isfinite(v)) {
        throw EmbedError("record '" + id + "': malformed value");
      }
      values.push_back(v);
      p = next;
    }
    EmbeddingVector vec =
        Eigen::Map<EmbeddingVector>(values.data(), values.size());
    store.Add(std::move(id), std::move(vec));
  }
  return store;
}

}  // namespace

EmbeddingVector ToyEmbed(std::string_view text, int dim, uint64_t seed) {
  if (dim < 8) throw EmbedError("toy embedder needs dim >= 8");
  const std::vector<uint32_t> cps = CodePoints(text);
  EmbeddingVector v = EmbeddingVector::Zero(dim);
  uint64_t seeded = kFnvOffset;
  seeded = FnvMix(seeded, static_cast<uint32_t>(seed));
  seeded = FnvMix(seeded, static_cast<uint32_t>(seed >> 32));
  for (size_t i = 0; i + 3 <= cps.size(); ++i) {
    uint64_t h = seeded;
    h = FnvMix(h, cps[i]);
    h = FnvMix(h, cps[i + 1]);
    h = FnvMix(h, cps[i + 2]);
    const auto bucket = static_cast<Eigen::Index>(h % static_cast<uint64_t>(dim));
    v[bucket] += ((h >> 40) & 1) ? 1.0 : -1.0;
  }
  const double norm = v.norm();
  if (norm == 0.0) {
    v[0] = 1.0;
    return v;
  }
  return v / norm;
}

double Cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.size() != v.size()) {
    throw EmbedError("cosine of vectors with dims " + std::to_string(u.size()) +
                     " and " + std::to_string(v.size()));
  }
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu < 1e-12 || nv < 1e-12) return 0.0;
  return u.dot(v) / (nu * nv);
}

std::string TimestampTag(std::string_view text,
                         const std::optional<PartialDate>& t_d) {
  std::string out(text);
  if (t_d) out += " (proposed on " + FormatDate(*t_d) + ")";
  return out;
}

void EmbeddingStore::Add(std::string id, EmbeddingVector vec) {
  if (by_id_.count(id)) throw EmbedError("duplicate embedding id '" + id + "'");
  if (vec.size() == 0) throw EmbedError("empty vector for id '" + id + "'");
  if (dim_ == 0) {
    dim_ = static_cast<int>(vec.size());
  } else if (vec.size() != dim_) {
    throw EmbedError("record '" + id + "' has dim " +
                     std::to_string(vec.size()) + ", expected " +
                     std::to_string(dim_));
  }
  if (!vec.allFinite()) throw EmbedError("non-finite value in '" + id + "'");
  by_id_.emplace(id, ids_.size());
  ids_.push_back(std::move(id));
  vectors_.push_back(std::move(vec));
}

const EmbeddingVector* EmbeddingStore::Find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &vectors_[it->second];
}

bool EmbeddingStore::operator==(const EmbeddingStore& other) const {
  if (dim_ != other.dim_ || ids_ != other.ids_) return false;
  for (size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i] != other.vectors_[i]) return false;
  }
  return true;
}

void SaveStoreText(const EmbeddingStore& store,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw EmbedError("cannot write " + path.string());
  char buf[64];
  for (size_t i = 0; i < store.size(); ++i) {
    out << store.id(i) << '\t';
    const EmbeddingVector& v = store.vector(i);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v[k]);
      if (k) out.put(' ');
      out.write(buf, end - buf);
    }
    out.put('\n');
  }
  if (!out) throw EmbedError("failed writing " + path.string());
}

void SaveStoreBinary(const EmbeddingStore& store,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw EmbedError("cannot write " + path.string());
  out.write(kMagic, 4);
  PutLe(out, static_cast<uint32_t>(store.dim()), 4);
  PutLe(out, store.size(), 8);
  for (size_t i = 0; i < store.size(); ++i) {
    PutLe(out, store.id(i).size(), 4);
    out.write(store.id(i).data(),
              static_cast<std::streamsize>(store.id(i).size()));
    const EmbeddingVector& v = store.vector(i);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      const auto f = static_cast<float>(v[k]);
      uint32_t bits;
      std::memcpy(&bits, &f, sizeof(bits));
      PutLe(out, bits, 4);
    }
  }
  if (!out) throw EmbedError("failed writing " + path.string());
}

EmbeddingStore LoadStore(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EmbedError("cannot read " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  if (in.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0) {
    return LoadBinary(in);
  }
  in.clear();
  in.seekg(0);
  return LoadText(in);
}

}  // namespace tempo
