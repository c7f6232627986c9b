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

#include "tempo/extract.h"

#include <array>
#include <cstdio>
#include <cstddef>

namespace tempo {

namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

enum class Kind { kNumber, kWord, kPunct };

struct Token {
  Kind kind;
  size_t begin;  // byte offsets into the source text
  size_t end;
  std::string lower;  // words only
  int value = 0;      // numbers only; saturates for long digit runs
  size_t digits = 0;
};

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    Token tok{Kind::kPunct, i, i + 1, {}, 0, 0};
    if (IsDigit(c)) {
      tok.kind = Kind::kNumber;
      size_t j = i;
      while (j < text.size() && IsDigit(text[j])) {
        if (tok.value < 100000) tok.value = tok.value * 10 + (text[j] - '0');
        ++j;
      }
      tok.end = j;
      tok.digits = j - i;
    } else if (IsAlpha(c)) {
      tok.kind = Kind::kWord;
      size_t j = i;
      while (j < text.size() && IsAlpha(text[j])) {
        const char ch = text[j];
        tok.lower.push_back(ch >= 'A' && ch <= 'Z' ? ch - 'A' + 'a' : ch);
        ++j;
      }
      tok.end = j;
    }
    i = tok.end;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

// 1..12 for month words, 0 otherwise.
int MonthOf(const Token& tok) {
  if (tok.kind != Kind::kWord) return 0;
  if (tok.lower == "sept") return 9;
  for (int m = 0; m < 12; ++m) {
    std::string full;
    for (char ch : kMonthNames[m]) {
      full.push_back(ch >= 'A' && ch <= 'Z' ? ch - 'A' + 'a' : ch);
    }
    if (tok.lower == full || tok.lower == full.substr(0, 3)) return m + 1;
  }
  return 0;
}

class Matcher {
 public:
  Matcher(std::string_view text, std::vector<Token> tokens)
      : text_(text), tokens_(std::move(tokens)) {}

  ExtractionResult Run() {
    ExtractionResult result;
    size_t i = 0;
    while (i < tokens_.size()) {
      size_t next = i;
      std::optional<PartialDate> date;
      if (MatchIso(i, &next, &date) || MatchDayMonthYear(i, &next, &date) ||
          MatchMonthDayYear(i, &next, &date) ||
          MatchMonthYear(i, &next, &date) || MatchInYear(i, &next, &date) ||
          MatchBareYear(i, &next, &date)) {
        if (date) result.dates.push_back(*date);
        i = next;
      } else {
        ++i;
      }
    }
    result.has_year = !result.dates.empty();
    return result;
  }

 private:
  const Token* At(size_t i) const {
    return i < tokens_.size() ? &tokens_[i] : nullptr;
  }
  bool IsPunct(size_t i, char c) const {
    const Token* t = At(i);
    return t && t->kind == Kind::kPunct && text_[t->begin] == c;
  }
  bool Adjacent(size_t i) const {
    return i > 0 && i < tokens_.size() &&
           tokens_[i - 1].end == tokens_[i].begin;
  }
  bool IsNumber(size_t i, size_t min_digits, size_t max_digits) const {
    const Token* t = At(i);
    return t && t->kind == Kind::kNumber && t->digits >= min_digits &&
           t->digits <= max_digits;
  }

  // Skips "." after an abbreviated month name.
  size_t SkipDot(size_t i) const {
    return IsPunct(i, '.') && Adjacent(i) ? i + 1 : i;
  }
  size_t SkipComma(size_t i) const { return IsPunct(i, ',') ? i + 1 : i; }
  size_t SkipOrdinal(size_t i) const {
    const Token* t = At(i);
    if (t && t->kind == Kind::kWord && Adjacent(i) &&
        (t->lower == "st" || t->lower == "nd" || t->lower == "rd" ||
         t->lower == "th")) {
      return i + 1;
    }
    return i;
  }

  static std::optional<PartialDate> TryMake(int y, std::optional<int> m,
                                            std::optional<int> d) {
    try {
      return PartialDate::Make(y, m, d);
    } catch (const DateError&) {
      return std::nullopt;
    }
  }

  // YYYY-MM-DD with no interior whitespace.
  bool MatchIso(size_t i, size_t* next, std::optional<PartialDate>* out) {
    if (!IsNumber(i, 4, 4) || !IsPunct(i + 1, '-') || !Adjacent(i + 1) ||
        !IsNumber(i + 2, 2, 2) || !Adjacent(i + 2) || !IsPunct(i + 3, '-') ||
        !Adjacent(i + 3) || !IsNumber(i + 4, 2, 2) || !Adjacent(i + 4)) {
      return false;
    }
    if (IsPunct(i + 5, '-') && Adjacent(i + 5) && IsNumber(i + 6, 1, 99) &&
        Adjacent(i + 6)) {
      return false;
    }
    *out = TryMake(tokens_[i].value, tokens_[i + 2].value,
                   tokens_[i + 4].value);
    *next = i + 5;
    return true;
  }

  // DD[th] [of] Month[.][,] YYYY
  bool MatchDayMonthYear(size_t i, size_t* next,
                         std::optional<PartialDate>* out) {
    if (!IsNumber(i, 1, 2) || DigitBefore(i)) return false;
    size_t j = SkipOrdinal(i + 1);
    if (const Token* t = At(j); t && t->kind == Kind::kWord &&
                                t->lower == "of") {
      ++j;
    }
    const Token* month_tok = At(j);
    if (!month_tok || MonthOf(*month_tok) == 0) return false;
    j = SkipComma(SkipDot(j + 1));
    if (!IsNumber(j, 4, 4) || DigitAfter(j)) return false;
    *out = TryMake(tokens_[j].value, MonthOf(*month_tok), tokens_[i].value);
    *next = j + 1;
    return true;
  }

  // Month[.] DD[th][,] YYYY
  bool MatchMonthDayYear(size_t i, size_t* next,
                         std::optional<PartialDate>* out) {
    const Token* month_tok = At(i);
    if (!month_tok || MonthOf(*month_tok) == 0) return false;
    size_t j = SkipDot(i + 1);
    if (!IsNumber(j, 1, 2)) return false;
    const int day = tokens_[j].value;
    j = SkipComma(SkipOrdinal(j + 1));
    if (!IsNumber(j, 4, 4) || DigitAfter(j)) return false;
    *out = TryMake(tokens_[j].value, MonthOf(*month_tok), day);
    *next = j + 1;
    return true;
  }

  // Month[.][,] YYYY
  bool MatchMonthYear(size_t i, size_t* next,
                      std::optional<PartialDate>* out) {
    const Token* month_tok = At(i);
    if (!month_tok || MonthOf(*month_tok) == 0) return false;
    const size_t j = SkipComma(SkipDot(i + 1));
    if (!IsNumber(j, 4, 4) || DigitAfter(j)) return false;
    *out = TryMake(tokens_[j].value, MonthOf(*month_tok), std::nullopt);
    *next = j + 1;
    return true;
  }

  bool MatchInYear(size_t i, size_t* next, std::optional<PartialDate>* out) {
    const Token* t = At(i);
    if (!t || t->kind != Kind::kWord || t->lower != "in") return false;
    if (!IsNumber(i + 1, 4, 4) || DigitBefore(i + 1) || DigitAfter(i + 1)) {
      return false;
    }
    if (tokens_[i + 1].value < 1000) return false;
    *out = TryMake(tokens_[i + 1].value, std::nullopt, std::nullopt);
    *next = i + 2;
    return true;
  }

  bool MatchBareYear(size_t i, size_t* next,
                     std::optional<PartialDate>* out) {
    if (!IsNumber(i, 4, 4) || DigitBefore(i) || DigitAfter(i)) return false;
    const int year = tokens_[i].value;
    if (year < 1000 || year > 2999) return false;
    *out = TryMake(year, std::nullopt, std::nullopt);
    *next = i + 1;
    return true;
  }

  // True when the number at i continues a numeric expression to its left,
  // e.g. "3.2019", "1,2000" or "12:2019".
  bool DigitBefore(size_t i) const {
    const size_t b = tokens_[i].begin;
    if (b >= 2 && IsSeparator(text_[b - 1]) && IsDigit(text_[b - 2])) {
      return true;
    }
    return false;
  }
  bool DigitAfter(size_t i) const {
    const size_t e = tokens_[i].end;
    return e + 1 < text_.size() && IsSeparator(text_[e]) &&
           IsDigit(text_[e + 1]);
  }
  static bool IsSeparator(char c) { return c == '.' || c == ',' || c == ':'; }

  std::string_view text_;
  std::vector<Token> tokens_;
};

}  // namespace

ExtractionResult ExtractDates(std::string_view text) {
  return Matcher(text, Tokenize(text)).Run();
}

std::optional<PartialDate> PrimaryDate(const ExtractionResult& result) {
  if (!result.has_year || result.dates.empty()) return std::nullopt;
  return result.dates.front();
}

std::string_view MonthName(int month) {
  if (month < 1 || month > 12) {
    throw DateError("month", "month out of range: " + std::to_string(month));
  }
  return kMonthNames[month - 1];
}

std::string RenderLongDate(const PartialDate& date) {
  std::string out;
  if (date.day()) out += std::to_string(*date.day()) + " ";
  if (date.month()) {
    out += MonthName(*date.month());
    out += " ";
  }
  char year[8];
  std::snprintf(year, sizeof(year), "%04d", date.year());
  return out + year;
}

}  // namespace tempo
