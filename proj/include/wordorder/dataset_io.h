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

#ifndef WORDORDER_DATASET_IO_H_
#define WORDORDER_DATASET_IO_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordorder/record.h"

namespace wordorder {

enum class DatasetFormat {
  kJsonl,     // canonical: one {id, task, components, gold[, tags, provenance]} per line
  kGlueTsv,   // GLUE-style TSV with header; headerless CoLA files are detected
  kDropJson,  // DROP passages with nested qa_pairs (read only)
  kSwagCsv,   // sent1, sent2, ending0..N, label
};

const char* DatasetFormatName(DatasetFormat format);
DatasetFormat ParseDatasetFormat(std::string_view name);

// Parses file contents. A leading byte-order mark is ignored. Rows without an
// id column get "row-<index>" (0-based data row). Throws ParseError with the
// offending line, or kSchemaError when required columns are missing.
std::vector<Record> ParseDataset(std::string_view content, DatasetFormat format);

std::vector<Record> ReadDataset(const std::filesystem::path& path,
                                DatasetFormat format);

// Serializes records; drop_json is not writable. `task` picks the header for
// an empty record list (defaults: pair for TSV, multiple choice for CSV).
std::string SerializeDataset(std::span<const Record> records, DatasetFormat format,
                             std::optional<Task> task = std::nullopt);

void WriteDataset(std::span<const Record> records,
                  const std::filesystem::path& path, DatasetFormat format,
                  std::optional<Task> task = std::nullopt);

struct DatasetStats {
  std::size_t original_count = 0;
  std::size_t used_count = 0;
  // Lower median word count per component over the retained records.
  std::map<std::string, std::size_t> median_words;
};

struct FilterResult {
  std::vector<Record> records;
  DatasetStats stats;
};

// Keeps records whose named components (or every ending, for "endings") all
// have at least `min_words` words after final-punctuation detachment.
FilterResult FilterMinWords(std::span<const Record> records, int min_words,
                            std::span<const std::string> components);

// Lower median: element (size - 1) / 2 of the sorted values; 0 when empty.
std::size_t LowerMedian(std::vector<std::size_t> values);

std::string ReadFileToString(const std::filesystem::path& path);
void WriteStringToFile(const std::filesystem::path& path, std::string_view content);

}  // namespace wordorder

#endif  // WORDORDER_DATASET_IO_H_
