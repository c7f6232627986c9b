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

#include "tempo/date.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>

namespace tempo {

namespace {

namespace chr = std::chrono;

// sys_days counts from 1970-01-01; shift so that 0001-01-01 is day 1.
constexpr int64_t kEpochShift = 719163;

void CheckYear(int year) {
  if (year < 1 || year > 9999) {
    throw DateError("year", "year out of range [1, 9999]: " +
                                std::to_string(year));
  }
}

void CheckMonth(int month) {
  if (month < 1 || month > 12) {
    throw DateError("month", "month out of range [1, 12]: " +
                                 std::to_string(month));
  }
}

DayNumber FromCivil(int year, int month, int day) {
  const chr::year_month_day ymd{chr::year{year},
                                chr::month{static_cast<unsigned>(month)},
                                chr::day{static_cast<unsigned>(day)}};
  return DayNumber{chr::sys_days{ymd}.time_since_epoch().count() +
                   kEpochShift};
}

int ParseField(std::string_view text, std::string_view field,
               std::string_view whole) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end ||
      !std::all_of(text.begin(), text.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw DateError(std::string(field),
                    "malformed " + std::string(field) + " in date '" +
                        std::string(whole) + "'");
  }
  return value;
}

}  // namespace

bool IsLeapYear(int year) {
  return chr::year{year}.is_leap();
}

int DaysInMonth(int year, int month) {
  CheckMonth(month);
  const chr::year_month_day_last last{
      chr::year{year}, chr::month_day_last{chr::month{
                           static_cast<unsigned>(month)}}};
  return static_cast<int>(static_cast<unsigned>(last.day()));
}

PartialDate PartialDate::Year(int year) {
  CheckYear(year);
  return PartialDate(year, std::nullopt, std::nullopt);
}

PartialDate PartialDate::YearMonth(int year, int month) {
  CheckYear(year);
  CheckMonth(month);
  return PartialDate(year, month, std::nullopt);
}

PartialDate PartialDate::Full(int year, int month, int day) {
  CheckYear(year);
  CheckMonth(month);
  if (day < 1 || day > DaysInMonth(year, month)) {
    throw DateError("day", "day " + std::to_string(day) +
                               " invalid for " + std::to_string(year) + "-" +
                               std::to_string(month));
  }
  return PartialDate(year, month, day);
}

PartialDate PartialDate::Make(int year, std::optional<int> month,
                              std::optional<int> day) {
  if (day && !month) {
    throw DateError("month", "day given without month");
  }
  if (day) return Full(year, *month, *day);
  if (month) return YearMonth(year, *month);
  return Year(year);
}

PartialDate PartialDate::FromDayNumber(DayNumber n) {
  const chr::sys_days days{chr::days{n.value - kEpochShift}};
  const chr::year_month_day ymd{days};
  return Full(static_cast<int>(ymd.year()),
              static_cast<int>(static_cast<unsigned>(ymd.month())),
              static_cast<int>(static_cast<unsigned>(ymd.day())));
}

Granularity PartialDate::granularity() const {
  if (day_) return Granularity::kDay;
  if (month_) return Granularity::kMonth;
  return Granularity::kYear;
}

DayNumber ToDayNumber(const PartialDate& date) {
  if (!date.is_full()) {
    throw DateError(date.month() ? "day" : "month",
                    "day number requires a full date, got " +
                        FormatDate(date));
  }
  return FromCivil(date.year(), *date.month(), *date.day());
}

DayInterval IntervalOf(const PartialDate& date) {
  const int y = date.year();
  if (date.is_full()) {
    const DayNumber n = ToDayNumber(date);
    return {n, n};
  }
  if (date.month()) {
    const int m = *date.month();
    return {FromCivil(y, m, 1), FromCivil(y, m, DaysInMonth(y, m))};
  }
  return {FromCivil(y, 1, 1), FromCivil(y, 12, 31)};
}

GapDays IntervalGap(const PartialDate& a, const PartialDate& b) {
  const DayInterval ia = IntervalOf(a);
  const DayInterval ib = IntervalOf(b);
  if (ia.last < ib.first) return {ib.first.value - ia.last.value};
  if (ib.last < ia.first) return {ia.first.value - ib.last.value};
  return {0};
}

PartialDate ParseDate(std::string_view text) {
  if (text.size() != 4 && text.size() != 7 && text.size() != 10) {
    throw DateError("year", "expected YYYY, YYYY-MM or YYYY-MM-DD, got '" +
                                std::string(text) + "'");
  }
  const int year = ParseField(text.substr(0, 4), "year", text);
  std::optional<int> month;
  std::optional<int> day;
  if (text.size() >= 7) {
    if (text[4] != '-') throw DateError("month", "missing '-' after year");
    month = ParseField(text.substr(5, 2), "month", text);
  }
  if (text.size() == 10) {
    if (text[7] != '-') throw DateError("day", "missing '-' after month");
    day = ParseField(text.substr(8, 2), "day", text);
  }
  return PartialDate::Make(year, month, day);
}

std::string FormatDate(const PartialDate& date) {
  char buf[16];
  if (date.is_full()) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", date.year(),
                  *date.month(), *date.day());
  } else if (date.month()) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d", date.year(), *date.month());
  } else {
    std::snprintf(buf, sizeof(buf), "%04d", date.year());
  }
  return buf;
}

}  // namespace tempo
