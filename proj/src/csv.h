// Copyright 2026 The wordorder Authors.
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

#ifndef WORDORDER_SRC_CSV_H_
#define WORDORDER_SRC_CSV_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wordorder::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the row starts
  std::vector<std::string> fields;
};

// RFC 4180: comma separated, fields optionally double-quoted, "" escapes a
// quote, quoted fields may span lines. Blank lines are skipped.
std::vector<Row> Parse(std::string_view text);

// Quotes the field when it contains a comma, quote, CR or LF, or has
// surrounding spaces.
std::string Escape(std::string_view field);

std::string JoinRow(const std::vector<std::string>& fields);

// Tab-separated rows, no quoting. A trailing CR on each line is dropped.
std::vector<Row> ParseTsv(std::string_view text);

}  // namespace wordorder::csv

#endif  // WORDORDER_SRC_CSV_H_
