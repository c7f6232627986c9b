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

#include "tempo/records.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tempo {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json DateOrNull(const std::optional<PartialDate>& d) {
  return d ? ordered_json(FormatDate(*d)) : ordered_json(nullptr);
}

std::optional<PartialDate> OptionalDate(const nlohmann::json& j,
                                        const char* key,
                                        const std::string& id) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string()) {
    throw FormatError("record '" + id + "': " + key + " must be a string");
  }
  try {
    return ParseDate(j[key].get<std::string>());
  } catch (const DateError& e) {
    throw FormatError("record '" + id + "': bad " + key + ": " + e.what());
  }
}

std::string RequiredString(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw FormatError(std::string("record missing string field '") + key +
                      "'");
  }
  return j[key].get<std::string>();
}

nlohmann::json ParseLine(std::string_view line) {
  try {
    auto j = nlohmann::json::parse(line);
    if (!j.is_object()) throw FormatError("record is not a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON record: ") + e.what());
  }
}

template <typename T, typename Parse>
std::vector<T> LoadLines(const std::filesystem::path& path, Parse parse) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::vector<T> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(parse(line));
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return out;
}

template <typename T, typename Dump>
void SaveLines(const std::vector<T>& items, const std::filesystem::path& path,
               Dump dump) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  for (const T& item : items) out << dump(item) << '\n';
  if (!out) throw FormatError("failed writing " + path.string());
}

}  // namespace

std::string_view ScenarioName(Scenario s) {
  switch (s) {
    case Scenario::kRel:
      return "rel";
    case Scenario::kRec:
      return "rec";
    case Scenario::kHyb:
      return "hyb";
  }
  return "hyb";
}

Scenario ParseScenario(std::string_view name) {
  if (name == "rel") return Scenario::kRel;
  if (name == "rec") return Scenario::kRec;
  if (name == "hyb") return Scenario::kHyb;
  throw FormatError("unknown scenario '" + std::string(name) + "'");
}

std::string DocumentToJson(const Document& doc) {
  ordered_json j;
  j["id"] = doc.id;
  j["text"] = doc.text;
  if (doc.t_c.empty()) {
    j["t_c"] = nullptr;
  } else if (doc.t_c.size() == 1) {
    j["t_c"] = FormatDate(doc.t_c.front());
  } else {
    ordered_json arr = ordered_json::array();
    for (const PartialDate& d : doc.t_c) arr.push_back(FormatDate(d));
    j["t_c"] = arr;
  }
  j["t_d"] = DateOrNull(doc.t_d);
  return j.dump();
}

Document DocumentFromJson(std::string_view line) {
  const nlohmann::json j = ParseLine(line);
  Document doc;
  doc.id = RequiredString(j, "id");
  doc.text = RequiredString(j, "text");
  if (j.contains("t_c") && !j["t_c"].is_null()) {
    const auto& tc = j["t_c"];
    try {
      if (tc.is_string()) {
        doc.t_c.push_back(ParseDate(tc.get<std::string>()));
      } else if (tc.is_array()) {
        for (const auto& e : tc) {
          if (!e.is_string()) throw FormatError("t_c entries must be strings");
          doc.t_c.push_back(ParseDate(e.get<std::string>()));
        }
      } else {
        throw FormatError("t_c must be null, a string or an array");
      }
    } catch (const DateError& e) {
      throw FormatError("record '" + doc.id + "': bad t_c: " + e.what());
    }
  }
  doc.t_d = OptionalDate(j, "t_d", doc.id);
  return doc;
}

std::string QueryToJson(const Query& query) {
  ordered_json j;
  j["id"] = query.id;
  j["text"] = query.text;
  j["t_q"] = DateOrNull(query.t_q);
  j["gold"] = query.gold;
  j["scenario"] = std::string(ScenarioName(query.scenario));
  return j.dump();
}

Query QueryFromJson(std::string_view line) {
  const nlohmann::json j = ParseLine(line);
  Query q;
  q.id = RequiredString(j, "id");
  q.text = RequiredString(j, "text");
  q.t_q = OptionalDate(j, "t_q", q.id);
  q.gold = RequiredString(j, "gold");
  q.scenario = ParseScenario(RequiredString(j, "scenario"));
  return q;
}

std::vector<Document> LoadDocuments(const std::filesystem::path& path) {
  return LoadLines<Document>(path, DocumentFromJson);
}

std::vector<Query> LoadQueries(const std::filesystem::path& path) {
  return LoadLines<Query>(path, QueryFromJson);
}

void SaveDocuments(const std::vector<Document>& docs,
                   const std::filesystem::path& path) {
  SaveLines(docs, path, DocumentToJson);
}

void SaveQueries(const std::vector<Query>& queries,
                 const std::filesystem::path& path) {
  SaveLines(queries, path, QueryToJson);
}

DocumentTable::DocumentTable(std::vector<Document> docs)
    : docs_(std::move(docs)) {
  for (size_t i = 0; i < docs_.size(); ++i) {
    if (!by_id_.emplace(docs_[i].id, i).second) {
      throw FormatError("duplicate document id '" + docs_[i].id + "'");
    }
  }
}

const Document* DocumentTable::Find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &docs_[it->second];
}

std::string Checksum(std::string_view bytes) {
  uint64_t h = 14695981039346656037ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string FileChecksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return Checksum(ss.str());
}

}  // namespace tempo
