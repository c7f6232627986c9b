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

#ifndef TEMPO_DATE_H_
#define TEMPO_DATE_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tempo {

// Raised for structurally or calendrically invalid dates. The message names
// the offending field ("year", "month" or "day").
class DateError : public std::invalid_argument {
 public:
  DateError(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Days since a fixed epoch in the proleptic Gregorian calendar; 0001-01-01 is
// day 1.
struct DayNumber {
  int64_t value = 0;
  auto operator<=>(const DayNumber&) const = default;
};

// Non-negative distance between two dates, in days.
struct GapDays {
  int64_t value = 0;
  auto operator<=>(const GapDays&) const = default;
};

enum class Granularity { kYear, kMonth, kDay };

// A civil date known to year, month or day precision. A partial date denotes
// the closed interval of days it covers.
class PartialDate {
 public:
  // Validates and throws DateError on failure.
  static PartialDate Year(int year);
  static PartialDate YearMonth(int year, int month);
  static PartialDate Full(int year, int month, int day);
  static PartialDate Make(int year, std::optional<int> month,
                          std::optional<int> day);
  static PartialDate FromDayNumber(DayNumber n);

  int year() const { return year_; }
  std::optional<int> month() const { return month_; }
  std::optional<int> day() const { return day_; }
  Granularity granularity() const;
  bool is_full() const { return day_.has_value(); }

  bool operator==(const PartialDate&) const = default;

 private:
  PartialDate(int y, std::optional<int> m, std::optional<int> d)
      : year_(y), month_(m), day_(d) {}

  int year_ = 1;
  std::optional<int> month_;
  std::optional<int> day_;
};

struct DayInterval {
  DayNumber first;
  DayNumber last;
};

bool IsLeapYear(int year);
int DaysInMonth(int year, int month);

// Requires a full date.
DayNumber ToDayNumber(const PartialDate& date);
DayInterval IntervalOf(const PartialDate& date);

// Smallest absolute day difference between any point of the two intervals;
// zero iff they overlap.
GapDays IntervalGap(const PartialDate& a, const PartialDate& b);

// ISO-8601 prefixes: "YYYY", "YYYY-MM", "YYYY-MM-DD".
PartialDate ParseDate(std::string_view text);
std::string FormatDate(const PartialDate& date);

}  // namespace tempo

#endif  // TEMPO_DATE_H_
