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

#include "tempo/bench.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "tempo/encode.h"
#include "tempo/extract.h"
#include "tempo/random.h"

namespace tempo {

namespace {

using ordered_json = nlohmann::ordered_json;

// Name pools. No entry may contain a digit or be a bare month word, so that
// generated texts embed no dates besides the intended ones.
const std::vector<std::string> kOrgPrefixes = {
    "Northwind", "Bluehaven", "Silverline", "Redstone",  "Greenfield",
    "Ironbridge", "Clearwater", "Brightpath", "Stonegate", "Westbrook",
    "Eastvale",  "Highmoor",   "Oakridge",   "Pinecrest", "Riverton",
    "Starling",  "Thornbury",  "Ambercroft", "Coldharbor", "Fairhaven",
    "Goldleaf",  "Harrowgate", "Kingsley",   "Larkspur"};
const std::vector<std::string> kOrgSuffixes = {
    "Labs",        "Holdings",   "Institute",  "Foundation", "Systems",
    "Analytics",   "Logistics",  "Energy",     "Health",     "Robotics",
    "Media",       "Capital",    "Textiles",   "Aerospace",  "Foods",
    "Pharmaceuticals", "Shipping", "Academy",  "Observatory", "Museum"};
const std::vector<std::string> kRoles = {
    "chief executive",  "chief financial officer", "head of research",
    "board chair",      "chief engineer",          "general counsel",
    "director of operations", "chief scientist",   "head of design",
    "treasurer",        "managing director",       "chief curator"};
const std::vector<std::string> kFirstNames = {
    "Alice",  "Bruno",  "Chiara", "Dmitri", "Elena",  "Farid",  "Greta",
    "Hiro",   "Ingrid", "Jonas",  "Keiko",  "Luca",   "Mirela", "Nadia",
    "Oscar",  "Priya",  "Quentin", "Rosa",  "Samir",  "Tomas",  "Ulla",
    "Viktor", "Wanda",  "Xavier", "Yara",   "Zoltan"};
const std::vector<std::string> kLastNames = {
    "Moreno",  "Lindqvist", "Okafor",  "Tanaka",   "Schulz",  "Haddad",
    "Novak",   "Brennan",   "Castillo", "Dubois",  "Eriksen", "Farouk",
    "Gallo",   "Horvath",   "Ivanova", "Jansen",   "Kowalski", "Laurent",
    "Mendes",  "Nakamura",  "Oliveira", "Petrov",  "Quinn",   "Rahman"};

struct Metric {
  std::string name;
  std::string unit;  // appended after the value; may be empty
  int lo;
  int hi;
};
const std::vector<Metric> kMetrics = {
    {"population", "", 5000, 250000},
    {"rent", "dollars", 700, 3200},
    {"firms", "", 300, 18000},
    {"pupils", "", 800, 40000},
    {"library cards", "", 400, 60000},
    {"bus riders", "", 500, 90000},
    {"hospital beds", "", 40, 2400},
    {"home price", "dollars", 90000, 900000}};

const std::vector<std::string> kCities = {
    "Boston",     "Chicago",   "Denver",     "Seattle",    "Portland",
    "Phoenix",    "Atlanta",   "Miami",      "Dallas",     "Houston",
    "Austin",     "Nashville", "Memphis",    "Detroit",    "Cleveland",
    "Pittsburgh", "Baltimore", "Richmond",   "Charlotte",  "Raleigh",
    "Omaha",      "Tulsa",     "Wichita",    "Albuquerque", "Tucson",
    "Sacramento", "Fresno",    "Oakland",    "San Diego",  "Los Angeles",
    "Las Vegas",  "Reno",      "Boise",      "Spokane",    "Anchorage",
    "Honolulu",   "Minneapolis", "Milwaukee", "Madison",   "Des Moines",
    "Kansas City", "St. Louis", "Louisville", "Cincinnati", "Columbus",
    "Indianapolis", "Buffalo", "Rochester",  "Albany",     "Hartford",
    "Providence", "Burlington", "Savannah",  "Charleston", "Jacksonville",
    "Tampa",      "Orlando",   "New Orleans", "Little Rock", "Birmingham"};
const std::vector<std::string> kConditions = {
    "sunny", "cloudy", "showers", "rain",  "storms",  "snow",
    "fog",   "overcast", "clear", "drizzle", "haze", "windy"};

// Templates use {slot} placeholders.
const std::vector<std::string> kRelDocTemplates = {
    "In {year}, {person} served as {role} of {org}.",
    "{person} held the position of {role} at {org} during {year}.",
    "During {year}, the {role} of {org} was {person}.",
    "{org} named {person} as its {role}, a post held throughout {year}.",
    "Records from {year} list {person} as {role} at {org}.",
    "{person} was the {role} of {org} in {year}.",
    "The {role} post at {org} was filled by {person} in {year}.",
    "As of {year}, {person} worked at {org} in the role of {role}."};
const std::vector<std::string> kRelQueryTemplates = {
    "Who was the {role} of {org} in {year}?",
    "Which person served as {role} at {org} in {year}?",
    "In {year}, who held the {role} position at {org}?",
    "Name the {role} of {org} during {year}.",
    "Who held the role of {role} at {org} in the year {year}?",
    "Tell me who acted as {role} for {org} in {year}.",
    "{org} {role} in {year}: who was it?",
    "Who led {org} as {role} in {year}?"};

const std::vector<std::string> kRecDocTemplates = {
    "{town} {metric}: {value}.",
    "{town} {metric} is {value}.",
    "{town}: {metric} {value}.",
    "{metric} in {town} stands at {value}.",
    "{town} update. {metric}: {value}.",
    "Tally: {town} {metric} reached {value}.",
    "{town} {metric} now {value}.",
    "Report: {metric} of {town} is {value}."};
const std::vector<std::string> kRecQueryTemplates = {
    "Current {metric} of {town}?",
    "{town} {metric} right now?",
    "Latest {town} {metric}?",
    "What is the {metric} in {town} today?",
    "Newest {metric} figure for {town}?",
    "How many {metric} does {town} have now?",
    "{metric} for {town}, up to date?",
    "Tell me the {metric} of {town} today."};

const std::vector<std::string> kHybDocTemplates = {
    "{city} {tc}: {cond}, {hi}F/{lo}F. Issued {td}.",
    "{city}, {tc}. {cond}; high {hi}F. Issued {td}.",
    "{td} update: {city} {tc}, {cond}, {hi}F.",
    "{city} on {tc}: {cond}, low {lo}F ({td}).",
    "For {tc} in {city}: {cond}, {hi}F. Made {td}.",
    "{city} {tc} outlook ({td}): {cond}.",
    "{tc}, {city}: {cond}, {lo}F to {hi}F. Via {td}.",
    "Issued {td}. {city}, {tc}: {cond}."};
const std::vector<std::string> kHybQueryTemplates = {
    "{city} weather {date}?",
    "Weather in {city} on {date}?",
    "{city} forecast for {date}?",
    "How is {city} on {date}?",
    "{city} on {date}, what to expect?",
    "Conditions in {city}, {date}?",
    "Will {city} be nice on {date}?",
    "{city} skies on {date}?"};

std::string Fill(std::string tmpl,
                 const std::vector<std::pair<std::string, std::string>>& slots) {
  for (const auto& [key, value] : slots) {
    const std::string needle = "{" + key + "}";
    size_t pos = 0;
    while ((pos = tmpl.find(needle, pos)) != std::string::npos) {
      tmpl.replace(pos, needle.size(), value);
      pos += value.size();
    }
  }
  return tmpl;
}

const std::string& PickTemplate(Rng& rng, const std::vector<std::string>& pool,
                                int template_pool) {
  const size_t n = pool.size();
  const size_t i = rng.Below(n);
  return pool[(i + static_cast<size_t>(template_pool) * (n / 2)) % n];
}

// Full dates render in one of three surface forms.
std::string RenderDateAs(int form, const PartialDate& d) {
  if (!d.is_full()) return RenderLongDate(d);
  switch (form) {
    case 0:
      return FormatDate(d);
    case 1:
      return RenderLongDate(d);
    default:
      return std::string(MonthName(*d.month())) + " " +
             std::to_string(*d.day()) + ", " + std::to_string(d.year());
  }
}

// Thousands separators keep every digit run shorter than four characters.
std::string WithCommas(int64_t v) {
  std::string digits = std::to_string(v);
  std::string out;
  const int n = static_cast<int>(digits.size());
  for (int i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[static_cast<size_t>(i)]);
  }
  return out;
}

PartialDate AddDays(const PartialDate& d, int64_t days) {
  return PartialDate::FromDayNumber(DayNumber{ToDayNumber(d).value + days});
}

// Doc ids are a seeded permutation so that id order carries no signal.
std::vector<std::string> DocIds(size_t count, Rng& rng) {
  std::vector<size_t> numbers(count);
  for (size_t i = 0; i < count; ++i) numbers[i] = i + 1;
  rng.Shuffle(numbers);
  std::vector<std::string> ids;
  ids.reserve(count);
  char buf[32];
  for (size_t n : numbers) {
    std::snprintf(buf, sizeof(buf), "d%06zu", n);
    ids.emplace_back(buf);
  }
  return ids;
}

std::string QueryId(size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "q%05zu", i + 1);
  return buf;
}

// Hands out pre-shuffled document ids in order.
class IdSource {
 public:
  IdSource(size_t count, Rng& rng) : ids_(DocIds(count, rng)) {}
  std::string Next() { return ids_.at(next_++); }

 private:
  std::vector<std::string> ids_;
  size_t next_ = 0;
};

size_t PoolLimit(int entity_pool, size_t available) {
  return entity_pool > 0 ? std::min(available, static_cast<size_t>(entity_pool))
                         : available;
}

void RequirePool(size_t pool, int num_queries, const char* what) {
  if (pool < static_cast<size_t>(num_queries)) {
    throw ConfigError(std::string(what) + " pool of " + std::to_string(pool) +
                      " is too small for " + std::to_string(num_queries) +
                      " queries");
  }
}

}  // namespace

GenConfig GenConfig::Defaults(Scenario scenario) {
  GenConfig cfg;
  cfg.scenario = scenario;
  switch (scenario) {
    case Scenario::kRel:
      cfg.window_start = PartialDate::Year(1950);
      cfg.window_end = PartialDate::Year(2020);
      break;
    case Scenario::kRec:
      cfg.window_start = PartialDate::Full(2021, 1, 1);
      cfg.window_end = PartialDate::Full(2024, 12, 31);
      cfg.today = PartialDate::Full(2025, 1, 1);
      break;
    case Scenario::kHyb:
      cfg.window_start = PartialDate::Full(2024, 1, 1);
      cfg.window_end = PartialDate::Full(2024, 12, 31);
      break;
  }
  return cfg;
}

void GenConfig::Validate() const {
  if (num_queries < 1) throw ConfigError("num_queries must be >= 1");
  if (cdr < 1) throw ConfigError("cdr must be >= 1");
  if (cdr_min < 1 || cdr_max < cdr_min) {
    throw ConfigError("need 1 <= cdr_min <= cdr_max");
  }
  if (IntervalOf(window_end).last < IntervalOf(window_start).first) {
    throw ConfigError("date window is empty");
  }
  if (template_pool < 0 || template_pool > 1) {
    throw ConfigError("template_pool must be 0 or 1");
  }
  if (!(blank_t_d >= 0.0 && blank_t_d <= 1.0)) {
    throw ConfigError("blank_t_d must be in [0, 1]");
  }
  if (entity_pool < 0) throw ConfigError("entity_pool must be >= 0");
  if (scenario == Scenario::kRel) {
    if (cdr > 6) {
      throw ConfigError("rel draws confusers from +-1..3 years; cdr <= 6");
    }
    if (window_end.year() - window_start.year() < 6) {
      throw ConfigError("rel window must span at least 7 years");
    }
  }
  if (scenario == Scenario::kHyb) {
    if (!window_start.is_full() || !window_end.is_full()) {
      throw ConfigError("hyb window needs full dates");
    }
    if (ToDayNumber(window_end).value - ToDayNumber(window_start).value < 7) {
      throw ConfigError("hyb window must span at least 8 days");
    }
  }
  if (scenario == Scenario::kRec) {
    if (!today.is_full() || !window_start.is_full()) {
      throw ConfigError("rec needs full dates for today and window_start");
    }
  }
}

BenchDataset GenerateRel(const GenConfig& cfg) {
  cfg.Validate();
  if (cfg.scenario != Scenario::kRel) throw ConfigError("scenario must be rel");
  Rng rng(cfg.seed);

  std::vector<std::pair<size_t, size_t>> entities;  // (org, role)
  for (size_t o = 0; o < kOrgPrefixes.size() * kOrgSuffixes.size(); ++o) {
    for (size_t r = 0; r < kRoles.size(); ++r) entities.emplace_back(o, r);
  }
  rng.Shuffle(entities);
  entities.resize(PoolLimit(cfg.entity_pool, entities.size()));
  RequirePool(entities.size(), cfg.num_queries, "entity");

  BenchDataset data;
  data.config = cfg;
  const size_t n = static_cast<size_t>(cfg.num_queries);
  IdSource ids(n * static_cast<size_t>(1 + cfg.cdr), rng);
  const int y_lo = cfg.window_start.year() + 3;
  const int y_hi = cfg.window_end.year() - 3;

  for (size_t q = 0; q < n; ++q) {
    const auto [org_i, role_i] = entities[q];
    const std::string org = kOrgPrefixes[org_i / kOrgSuffixes.size()] + " " +
                            kOrgSuffixes[org_i % kOrgSuffixes.size()];
    const std::string& role = kRoles[role_i];
    const int year = static_cast<int>(rng.Between(y_lo, y_hi));

    std::vector<int> offsets = {-3, -2, -1, 1, 2, 3};
    rng.Shuffle(offsets);
    offsets.resize(static_cast<size_t>(cfg.cdr));

    // Distinct holders for each year on this entity's timeline.
    std::set<std::string> used;
    auto person = [&]() {
      std::string name;
      do {
        name = rng.Pick(kFirstNames) + " " + rng.Pick(kLastNames);
      } while (!used.insert(name).second);
      return name;
    };

    QueryGroup group;
    group.query_id = QueryId(q);
    auto make_doc = [&](int y) {
      Document d;
      d.id = ids.Next();
      d.text = Fill(PickTemplate(rng, kRelDocTemplates, cfg.template_pool),
                    {{"year", std::to_string(y)},
                     {"person", person()},
                     {"role", role},
                     {"org", org}});
      d.t_c = {PartialDate::Year(y)};
      data.documents.push_back(d);
      return d.id;
    };
    group.gold = make_doc(year);
    for (int off : offsets) group.distractors.push_back(make_doc(year + off));

    Query query;
    query.id = group.query_id;
    query.text = Fill(PickTemplate(rng, kRelQueryTemplates, cfg.template_pool),
                      {{"year", std::to_string(year)},
                       {"role", role},
                       {"org", org}});
    query.t_q = PartialDate::Year(year);
    query.gold = group.gold;
    query.scenario = Scenario::kRel;
    data.queries.push_back(query);
    data.groups.push_back(group);
  }
  return data;
}

BenchDataset GenerateRec(const GenConfig& cfg) {
  cfg.Validate();
  if (cfg.scenario != Scenario::kRec) throw ConfigError("scenario must be rec");
  Rng rng(cfg.seed);

  std::vector<std::pair<size_t, size_t>> entities;  // (town, metric)
  for (size_t t = 0; t < kCities.size(); ++t) {
    for (size_t m = 0; m < kMetrics.size(); ++m) entities.emplace_back(t, m);
  }
  rng.Shuffle(entities);
  entities.resize(PoolLimit(cfg.entity_pool, entities.size()));
  RequirePool(entities.size(), cfg.num_queries, "entity");

  const size_t n = static_cast<size_t>(cfg.num_queries);
  std::vector<int> versions(n);
  size_t total = 0;
  for (size_t q = 0; q < n; ++q) {
    versions[q] = 1 + static_cast<int>(rng.Between(cfg.cdr_min, cfg.cdr_max));
    total += static_cast<size_t>(versions[q]);
  }

  BenchDataset data;
  data.config = cfg;
  IdSource ids(total, rng);
  const int64_t earliest = ToDayNumber(cfg.window_start).value;

  for (size_t q = 0; q < n; ++q) {
    const auto [town_i, metric_i] = entities[q];
    const std::string& town = kCities[town_i];
    const Metric& metric = kMetrics[metric_i];

    // Daily snapshots: gold lags "today" by 0-3 days, each older version by
    // a further 1-5 days.
    std::vector<PartialDate> dates;
    PartialDate d = AddDays(cfg.today, -rng.Between(0, 3));
    dates.push_back(d);
    for (int v = 1; v < versions[q]; ++v) {
      d = AddDays(d, -rng.Between(1, 5));
      if (ToDayNumber(d).value < earliest) {
        throw ConfigError("rec window too short for version history");
      }
      dates.push_back(d);
    }
    std::reverse(dates.begin(), dates.end());  // oldest first

    QueryGroup group;
    group.query_id = QueryId(q);
    // Versions share one fact template; dates and values vary.
    const std::string& tmpl =
        PickTemplate(rng, kRecDocTemplates, cfg.template_pool);
    const int form = static_cast<int>(rng.Below(3));
    int64_t value = rng.Between(metric.lo, metric.hi);
    std::vector<std::string> group_ids;
    for (size_t v = 0; v < dates.size(); ++v) {
      const int64_t drift = std::max<int64_t>(1, value / 20);
      value = std::max<int64_t>(1, value + rng.Between(-drift, drift));
      std::string shown = WithCommas(value);
      if (!metric.unit.empty()) shown += " " + metric.unit;
      Document doc;
      doc.id = ids.Next();
      // Headline first, as bulletins lead with their subject.
      doc.text = Fill("{town} {metric}. " + tmpl,
                      {{"town", town},
                       {"metric", metric.name},
                       {"value", shown},
                       {"date", RenderDateAs(form, dates[v])}});
      doc.t_d = dates[v];
      group_ids.push_back(doc.id);
      data.documents.push_back(std::move(doc));
    }
    group.gold = group_ids.back();
    group.stale.assign(group_ids.begin(), group_ids.end() - 1);

    Query query;
    query.id = group.query_id;
    query.text = Fill(PickTemplate(rng, kRecQueryTemplates, cfg.template_pool),
                      {{"town", town}, {"metric", metric.name}});
    query.gold = group.gold;
    query.scenario = Scenario::kRec;
    data.queries.push_back(query);
    data.groups.push_back(group);
  }

  if (cfg.blank_t_d > 0.0) {
    for (Document& doc : data.documents) {
      if (rng.Unit() < cfg.blank_t_d) doc.t_d.reset();
    }
  }
  return data;
}

BenchDataset GenerateHyb(const GenConfig& cfg) {
  cfg.Validate();
  if (cfg.scenario != Scenario::kHyb) throw ConfigError("scenario must be hyb");
  Rng rng(cfg.seed);

  const std::vector<std::string> cities(
      kCities.begin(),
      kCities.begin() +
          static_cast<std::ptrdiff_t>(PoolLimit(cfg.entity_pool, kCities.size())));
  if (cities.size() < 2) throw ConfigError("hyb needs at least two cities");
  const int64_t first = ToDayNumber(cfg.window_start).value + 3;
  const int64_t last = ToDayNumber(cfg.window_end).value - 3;
  const int64_t days = last - first + 1;
  RequirePool(cities.size() * static_cast<size_t>(std::max<int64_t>(days, 0)),
              cfg.num_queries, "(city, date)");

  // Query keys first, so that no distractor can collide with any of them.
  const size_t n = static_cast<size_t>(cfg.num_queries);
  std::set<std::pair<size_t, int64_t>> keys;
  std::vector<std::pair<size_t, int64_t>> query_keys;
  while (query_keys.size() < n) {
    std::pair<size_t, int64_t> key{rng.Below(cities.size()),
                                   rng.Between(first, last)};
    if (keys.insert(key).second) query_keys.push_back(key);
  }

  BenchDataset data;
  data.config = cfg;
  IdSource ids(n * static_cast<size_t>(1 + cfg.cdr), rng);
  auto date_of = [](int64_t day) {
    return PartialDate::FromDayNumber(DayNumber{day});
  };

  for (size_t q = 0; q < n; ++q) {
    const auto [city_i, target] = query_keys[q];
    QueryGroup group;
    group.query_id = QueryId(q);
    // Target dates of the query and its forecasts share one surface form.
    const int form = static_cast<int>(rng.Below(3));

    auto forecast = [&](size_t city, int64_t valid, int64_t issued) {
      const int hi = static_cast<int>(rng.Between(20, 100));
      const int lo = hi - static_cast<int>(rng.Between(8, 20));
      Document doc;
      doc.id = ids.Next();
      doc.text =
          Fill(PickTemplate(rng, kHybDocTemplates, cfg.template_pool),
               {{"city", cities[city]},
                {"tc", RenderDateAs(form, date_of(valid))},
                {"td", RenderDateAs(form, date_of(issued))},
                {"cond", rng.Pick(kConditions)},
                {"hi", std::to_string(hi)},
                {"lo", std::to_string(lo)}});
      doc.t_c = {date_of(valid)};
      doc.t_d = date_of(issued);
      data.documents.push_back(doc);
      return doc.id;
    };

    const int64_t gold_issued = target - rng.Between(0, 2);
    group.gold = forecast(city_i, target, gold_issued);

    // Confuser kinds: 0 stale version, 1 near date, 2 other city. The first
    // slot is always stale.
    std::vector<int64_t> stale_lags = {1, 2, 3, 4, 5, 6, 7};
    rng.Shuffle(stale_lags);
    size_t stale_used = 0;
    for (int c = 0; c < cfg.cdr; ++c) {
      int kind = c == 0 ? 0 : static_cast<int>(rng.Below(3));
      if (kind == 0 && stale_used == stale_lags.size()) kind = 1;
      if (kind == 0) {
        group.stale.push_back(
            forecast(city_i, target, gold_issued - stale_lags[stale_used++]));
        continue;
      }
      size_t city = city_i;
      int64_t valid = target;
      for (int attempt = 0;; ++attempt) {
        if (kind == 1) {
          const int64_t off = rng.Between(1, 3);
          valid = target + (rng.Below(2) ? off : -off);
          city = city_i;
        } else {
          city = (city_i + 1 + rng.Below(cities.size() - 1)) % cities.size();
          valid = target;
        }
        if (!keys.count({city, valid})) break;
        if (attempt > 64) {
          throw ConfigError("cannot place a non-colliding distractor; "
                            "widen the window or city pool");
        }
      }
      group.distractors.push_back(
          forecast(city, valid, valid - rng.Between(0, 2)));
    }

    Query query;
    query.id = group.query_id;
    query.text = Fill(PickTemplate(rng, kHybQueryTemplates, cfg.template_pool),
                      {{"city", cities[city_i]},
                       {"date", RenderDateAs(form, date_of(target))}});
    query.t_q = date_of(target);
    query.gold = group.gold;
    query.scenario = Scenario::kHyb;
    data.queries.push_back(query);
    data.groups.push_back(group);
  }
  return data;
}

BenchDataset Generate(const GenConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::kRel:
      return GenerateRel(cfg);
    case Scenario::kRec:
      return GenerateRec(cfg);
    case Scenario::kHyb:
      return GenerateHyb(cfg);
  }
  throw ConfigError("unknown scenario");
}

std::string GenConfigToJson(const GenConfig& cfg) {
  ordered_json j;
  j["scenario"] = std::string(ScenarioName(cfg.scenario));
  j["num_queries"] = cfg.num_queries;
  j["cdr"] = cfg.cdr;
  j["cdr_min"] = cfg.cdr_min;
  j["cdr_max"] = cfg.cdr_max;
  j["seed"] = cfg.seed;
  j["window_start"] = FormatDate(cfg.window_start);
  j["window_end"] = FormatDate(cfg.window_end);
  j["today"] = FormatDate(cfg.today);
  j["entity_pool"] = cfg.entity_pool;
  j["template_pool"] = cfg.template_pool;
  j["blank_t_d"] = cfg.blank_t_d;
  return j.dump();
}

GenConfig GenConfigFromJson(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  GenConfig cfg = GenConfig::Defaults(ParseScenario(j.at("scenario").get<std::string>()));
  cfg.num_queries = j.value("num_queries", cfg.num_queries);
  cfg.cdr = j.value("cdr", cfg.cdr);
  cfg.cdr_min = j.value("cdr_min", cfg.cdr_min);
  cfg.cdr_max = j.value("cdr_max", cfg.cdr_max);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("window_start")) {
    cfg.window_start = ParseDate(j["window_start"].get<std::string>());
  }
  if (j.contains("window_end")) {
    cfg.window_end = ParseDate(j["window_end"].get<std::string>());
  }
  if (j.contains("today")) cfg.today = ParseDate(j["today"].get<std::string>());
  cfg.entity_pool = j.value("entity_pool", cfg.entity_pool);
  cfg.template_pool = j.value("template_pool", cfg.template_pool);
  cfg.blank_t_d = j.value("blank_t_d", cfg.blank_t_d);
  return cfg;
}

namespace {

std::string GroupToJson(const QueryGroup& g) {
  ordered_json j;
  j["query"] = g.query_id;
  j["gold"] = g.gold;
  j["stale"] = g.stale;
  j["distractors"] = g.distractors;
  return j.dump();
}

QueryGroup GroupFromJson(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  QueryGroup g;
  g.query_id = j.at("query").get<std::string>();
  g.gold = j.at("gold").get<std::string>();
  g.stale = j.at("stale").get<std::vector<std::string>>();
  g.distractors = j.at("distractors").get<std::vector<std::string>>();
  return g;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void WriteDataset(const BenchDataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  SaveDocuments(data.documents, dir / "docs.jsonl");
  SaveQueries(data.queries, dir / "queries.jsonl");
  {
    std::ofstream out(dir / "groups.jsonl", std::ios::binary | std::ios::trunc);
    for (const QueryGroup& g : data.groups) out << GroupToJson(g) << '\n';
    if (!out) throw FormatError("failed writing groups.jsonl");
  }
  ordered_json m;
  m["format_version"] = 1;
  m["config"] = ordered_json::parse(GenConfigToJson(data.config));
  m["counts"] = {{"queries", data.queries.size()},
                 {"documents", data.documents.size()}};
  m["evaluation"] = {
      {"reference_policy", DefaultPolicy(data.config).ToString()},
      {"timevar_unit", std::string(UnitName(DefaultTimeVarUnit(data.config.scenario)))},
      {"mfg_unit", std::string(UnitName(DefaultMfgUnit(data.config.scenario)))},
      {"missing_penalty_days", MissingPenaltyDays(data.config)}};
  m["sampling"] = {
      {"rel_offsets_years", "uniform without replacement from +-1, +-2, +-3"},
      {"rec_versions", "daily; gold 0-3 days before today, older 1-5 days apart"},
      {"hyb_confusers", "first stale, rest uniform over stale/near-date/other-city"}};
  m["checksums"] = {
      {"docs.jsonl", FileChecksum(dir / "docs.jsonl")},
      {"queries.jsonl", FileChecksum(dir / "queries.jsonl")},
      {"groups.jsonl", FileChecksum(dir / "groups.jsonl")}};
  std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  out << m.dump(2) << '\n';
  if (!out) throw FormatError("failed writing manifest.json");
}

BenchDataset ReadDataset(const std::filesystem::path& dir) {
  BenchDataset data;
  const auto manifest = nlohmann::json::parse(ReadFile(dir / "manifest.json"));
  data.config = GenConfigFromJson(manifest.at("config").dump());
  data.documents = LoadDocuments(dir / "docs.jsonl");
  data.queries = LoadQueries(dir / "queries.jsonl");
  if (std::filesystem::exists(dir / "groups.jsonl")) {
    std::ifstream in(dir / "groups.jsonl", std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) data.groups.push_back(GroupFromJson(line));
    }
  }
  return data;
}

RefTimePolicy DefaultPolicy(const GenConfig& cfg) {
  return cfg.scenario == Scenario::kRec ? RefTimePolicy::Fixed(cfg.today)
                                        : RefTimePolicy::QueryTime();
}

TimeUnit DefaultTimeVarUnit(Scenario s) {
  return s == Scenario::kRel ? TimeUnit::kYears : TimeUnit::kDays;
}

TimeUnit DefaultMfgUnit(Scenario) { return TimeUnit::kDays; }

int64_t MissingPenaltyDays(const GenConfig& cfg) {
  return IntervalOf(cfg.window_end).last.value -
         IntervalOf(cfg.window_start).first.value + 1;
}

std::vector<std::string> ValidateDatasetFiles(
    const std::filesystem::path& dir) {
  std::vector<std::string> errors;
  auto fail = [&](std::string msg) { errors.push_back(std::move(msg)); };

  const auto manifest = nlohmann::json::parse(ReadFile(dir / "manifest.json"));
  for (const char* name : {"docs.jsonl", "queries.jsonl", "groups.jsonl"}) {
    const std::string want =
        manifest.at("checksums").at(name).get<std::string>();
    if (FileChecksum(dir / name) != want) fail(std::string("checksum mismatch: ") + name);
  }
  const GenConfig cfg = GenConfigFromJson(manifest.at("config").dump());
  const std::vector<Document> docs = LoadDocuments(dir / "docs.jsonl");
  const std::vector<Query> queries = LoadQueries(dir / "queries.jsonl");
  std::map<std::string, const Document*> by_id;
  for (const Document& d : docs) {
    if (!by_id.emplace(d.id, &d).second) fail("duplicate doc id " + d.id);
    // Availability pattern per scenario.
    const bool has_tc = !d.t_c.empty();
    const bool has_td = d.t_d.has_value();
    switch (cfg.scenario) {
      case Scenario::kRel:
        if (!has_tc || has_td) fail("rel doc " + d.id + " must carry t_c only");
        break;
      case Scenario::kRec:
        if (has_tc) fail("rec doc " + d.id + " must not carry t_c");
        if (!has_td && cfg.blank_t_d == 0.0) fail("rec doc " + d.id + " lacks t_d");
        break;
      case Scenario::kHyb:
        if (!has_tc || !has_td) fail("hyb doc " + d.id + " must carry t_c and t_d");
        break;
    }
  }
  if (manifest.at("counts").at("documents").get<size_t>() != docs.size() ||
      manifest.at("counts").at("queries").get<size_t>() != queries.size()) {
    fail("manifest counts disagree with files");
  }

  std::map<std::string, QueryGroup> groups;
  {
    std::ifstream in(dir / "groups.jsonl", std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      QueryGroup g = GroupFromJson(line);
      groups[g.query_id] = g;
    }
  }

  for (const Query& q : queries) {
    if (q.scenario != cfg.scenario) fail("query " + q.id + " has wrong scenario");
    auto git = by_id.find(q.gold);
    if (git == by_id.end()) {
      fail("query " + q.id + " gold " + q.gold + " missing");
      continue;
    }
    const Document& gold = *git->second;
    auto grp = groups.find(q.id);
    if (grp == groups.end() || grp->second.gold != q.gold) {
      fail("query " + q.id + " has no matching group");
      continue;
    }
    const QueryGroup& g = grp->second;
    switch (cfg.scenario) {
      case Scenario::kRel: {
        if (!q.t_q) {
          fail("rel query " + q.id + " lacks t_q");
          break;
        }
        if (RelevanceGap(q.t_q, gold.t_c).value_or(GapDays{1}).value != 0) {
          fail("rel gold of " + q.id + " does not contain t_q");
        }
        for (const std::string& id : g.distractors) {
          const Document* d = by_id.count(id) ? by_id[id] : nullptr;
          if (!d || RelevanceGap(q.t_q, d->t_c).value_or(GapDays{0}).value == 0) {
            fail("rel confuser " + id + " of " + q.id + " matches t_q");
          }
        }
        break;
      }
      case Scenario::kRec: {
        if (q.t_q) fail("rec query " + q.id + " must not carry t_q");
        const size_t versions = 1 + g.stale.size();
        if (versions < static_cast<size_t>(1 + cfg.cdr_min) ||
            versions > static_cast<size_t>(1 + cfg.cdr_max)) {
          fail("rec query " + q.id + " has " + std::to_string(versions) +
               " versions");
        }
        if (!gold.t_d) break;  // blanked
        for (const std::string& id : g.stale) {
          const Document* d = by_id.count(id) ? by_id[id] : nullptr;
          if (!d) {
            fail("rec stale " + id + " missing");
          } else if (d->t_d && !(ToDayNumber(*d->t_d) < ToDayNumber(*gold.t_d))) {
            fail("rec gold of " + q.id + " is not the freshest version");
          }
        }
        break;
      }
      case Scenario::kHyb: {
        if (!q.t_q) {
          fail("hyb query " + q.id + " lacks t_q");
          break;
        }
        for (const std::string& id : g.stale) {
          const Document* d = by_id.count(id) ? by_id[id] : nullptr;
          if (!d || d->t_c != gold.t_c || !d->t_d || !gold.t_d ||
              !(ToDayNumber(*d->t_d) < ToDayNumber(*gold.t_d))) {
            fail("hyb stale " + id + " of " + q.id +
                 " is not an older same-target forecast");
          }
        }
        break;
      }
    }
  }

  // hyb: exactly one document per query key matches city and target date
  // with the maximal issue date. The city is read back from the text by
  // checking which gold city name the document mentions.
  if (cfg.scenario == Scenario::kHyb) {
    for (const Query& q : queries) {
      auto git = by_id.find(q.gold);
      if (git == by_id.end() || !q.t_q) continue;
      const Document& gold = *git->second;
      // Gold city: the group's docs share it with the gold; identify it as the
      // longest city name in the query text.
      std::string city;
      for (const std::string& c : kCities) {
        if (q.text.find(c) != std::string::npos && c.size() > city.size()) {
          city = c;
        }
      }
      if (city.empty()) {
        fail("hyb query " + q.id + " names no known city");
        continue;
      }
      if (gold.text.find(city) == std::string::npos) {
        fail("hyb gold of " + q.id + " is for another city");
      }
      size_t best = 0;
      for (const Document& d : docs) {
        if (d.t_c.size() != 1 || d.t_c.front() != *q.t_q) continue;
        std::string doc_city;
        for (const std::string& c : kCities) {
          if (d.text.find(c) != std::string::npos && c.size() > doc_city.size()) {
            doc_city = c;
          }
        }
        if (doc_city != city) continue;
        if (ToDayNumber(*d.t_d) > ToDayNumber(*gold.t_d)) {
          fail("hyb doc " + d.id + " is fresher than gold of " + q.id);
        } else if (ToDayNumber(*d.t_d) == ToDayNumber(*gold.t_d)) {
          ++best;
        }
      }
      if (best != 1) fail("hyb query " + q.id + " gold is not unique");
    }
  }
  return errors;
}

std::vector<PartialDate> EmbeddedDates(const Document& doc, Scenario scenario) {
  std::vector<PartialDate> out(doc.t_c.begin(), doc.t_c.end());
  // rec keeps t_d as metadata only.
  if (doc.t_d && scenario != Scenario::kRec) out.push_back(*doc.t_d);
  auto key = [](const PartialDate& d) {
    return std::make_pair(IntervalOf(d).first.value,
                          static_cast<int>(d.granularity()));
  };
  std::sort(out.begin(), out.end(),
            [&](const PartialDate& a, const PartialDate& b) {
              return key(a) < key(b);
            });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PartialDate> EmbeddedDates(const Query& query) {
  if (!query.t_q) return {};
  return {*query.t_q};
}

}  // namespace tempo
