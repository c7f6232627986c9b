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

#ifndef TEMPO_RECORDS_H_
#define TEMPO_RECORDS_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tempo/date.h"

namespace tempo {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario { kRel, kRec, kHyb };

std::string_view ScenarioName(Scenario s);
Scenario ParseScenario(std::string_view name);

// A document: content, clue times mentioned in it, and publication time.
struct Document {
  std::string id;
  std::string text;
  std::vector<PartialDate> t_c;
  std::optional<PartialDate> t_d;

  bool operator==(const Document&) const = default;
};

// A query: content, optional time constraint, and its gold document.
struct Query {
  std::string id;
  std::string text;
  std::optional<PartialDate> t_q;
  std::string gold;
  Scenario scenario = Scenario::kHyb;

  bool operator==(const Query&) const = default;
};

// {"id", "text", "t_c", "t_d"}; t_c is null, an ISO date string, or an array
// of them when a document carries several clue times.
std::string DocumentToJson(const Document& doc);
Document DocumentFromJson(std::string_view line);

// {"id", "text", "t_q", "gold", "scenario"}
std::string QueryToJson(const Query& query);
Query QueryFromJson(std::string_view line);

std::vector<Document> LoadDocuments(const std::filesystem::path& path);
std::vector<Query> LoadQueries(const std::filesystem::path& path);
void SaveDocuments(const std::vector<Document>& docs,
                   const std::filesystem::path& path);
void SaveQueries(const std::vector<Query>& queries,
                 const std::filesystem::path& path);

// Id lookup over a document list.
class DocumentTable {
 public:
  DocumentTable() = default;
  explicit DocumentTable(std::vector<Document> docs);

  const Document* Find(std::string_view id) const;
  const std::vector<Document>& docs() const { return docs_; }

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, size_t> by_id_;
};

// FNV-1a 64 of a byte string, as 16 lowercase hex digits.
std::string Checksum(std::string_view bytes);
std::string FileChecksum(const std::filesystem::path& path);

}  // namespace tempo

#endif  // TEMPO_RECORDS_H_
