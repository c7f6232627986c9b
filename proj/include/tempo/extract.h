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

#ifndef TEMPO_EXTRACT_H_
#define TEMPO_EXTRACT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/date.h"

namespace tempo {

// Dates found in a text, in document order. has_year mirrors !dates.empty().
struct ExtractionResult {
  std::vector<PartialDate> dates;
  bool has_year = false;
};

// Grammar-based temporal expression extraction. Recognized forms:
//   "12 March 2019", "12th of March 2019", "March 12, 2019", "March 2019",
//   "2019-03-12", "in 2019", and bare four-digit years in [1000, 2999] that
//   are not part of a larger number.
// Month names are English, case-insensitive, full or three-letter (plus
// "Sept"). A match whose components are out of range is dropped whole.
// Never throws; arbitrary bytes are tolerated.
ExtractionResult ExtractDates(std::string_view text);

// First date in document order, if any.
std::optional<PartialDate> PrimaryDate(const ExtractionResult& result);

// "March", "April", ...; month in [1, 12].
std::string_view MonthName(int month);

// "12 March 2019", "March 2019" or "2019" depending on granularity.
std::string RenderLongDate(const PartialDate& date);

}  // namespace tempo

#endif  // TEMPO_EXTRACT_H_
