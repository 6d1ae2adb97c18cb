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

#include "wordorder/dataset_io.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "csv.h"
#include "wordorder/error.h"
#include "wordorder/ngram_permuter.h"
#include "wordorder/unicode_text.h"

namespace wordorder {

using nlohmann::ordered_json;

namespace {

constexpr std::string_view kTagPrefix = "tag:";

std::string RowId(std::size_t index) { return "row-" + std::to_string(index); }

// Column lookup over a header row.
class Header {
 public:
  explicit Header(const std::vector<std::string>& names) : names_(names) {}

  std::optional<std::size_t> Find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return i;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> FindAny(std::initializer_list<std::string_view> names) const {
    for (std::string_view name : names) {
      if (auto i = Find(name)) return i;
    }
    return std::nullopt;
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

const std::string& FieldAt(const csv::Row& row, std::size_t column) {
  if (column >= row.fields.size()) {
    throw ParseError(row.line, "expected at least " + std::to_string(column + 1) +
                                   " fields, found " + std::to_string(row.fields.size()));
  }
  return row.fields[column];
}

// Tag columns: "tag:<key>" written by this library, plus the HANS columns.
std::vector<std::pair<std::size_t, std::string>> TagColumns(const Header& header) {
  std::vector<std::pair<std::size_t, std::string>> tags;
  for (std::size_t i = 0; i < header.names().size(); ++i) {
    const std::string& name = header.names()[i];
    if (name.rfind(kTagPrefix, 0) == 0) {
      tags.emplace_back(i, name.substr(kTagPrefix.size()));
    } else if (name == "heuristic" || name == "subcase" || name == "template") {
      tags.emplace_back(i, name);
    }
  }
  return tags;
}

bool LooksLikeColaRow(const std::vector<std::string>& fields) {
  return fields.size() == 4 && (fields[1] == "0" || fields[1] == "1");
}

std::vector<Record> ParseGlueTsv(std::string_view content) {
  const std::vector<csv::Row> rows = csv::ParseTsv(content);
  std::vector<Record> records;
  if (rows.empty()) return records;

  const Header header(rows[0].fields);
  const auto first = header.FindAny({"sentence1", "premise", "question1", "sentence"});
  if (!first && LooksLikeColaRow(rows[0].fields)) {
    // Headerless CoLA layout: source, label, original judgement, sentence.
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Record r;
      r.id = RowId(i);
      r.task = Task::kSingleSentence;
      r.components.push_back({"part1", FieldAt(rows[i], 3)});
      r.gold = Label::Class(FieldAt(rows[i], 1));
      records.push_back(std::move(r));
    }
    return records;
  }
  if (!first) {
    throw Error(ErrorCode::kSchemaError,
                "TSV header has no sentence1/premise/question1/sentence column");
  }
  std::optional<std::size_t> second;
  if (header.names()[*first] == "sentence1") second = header.Find("sentence2");
  if (header.names()[*first] == "premise") second = header.Find("hypothesis");
  if (header.names()[*first] == "question1") second = header.Find("question2");
  const auto label = header.FindAny({"gold_label", "label"});
  if (!label) throw Error(ErrorCode::kSchemaError, "TSV header has no label column");
  const auto id = header.FindAny({"id", "pairID", "index", "idx"});
  const auto tags = TagColumns(header);

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const csv::Row& row = rows[i];
    Record r;
    r.id = id ? FieldAt(row, *id) : RowId(i - 1);
    r.task = second ? Task::kPairClassification : Task::kSingleSentence;
    r.components.push_back({"part1", FieldAt(row, *first)});
    if (second) r.components.push_back({"part2", FieldAt(row, *second)});
    r.gold = Label::Class(FieldAt(row, *label));
    for (const auto& [column, key] : tags) r.tags[key] = FieldAt(row, column);
    records.push_back(std::move(r));
  }
  return records;
}

int ParseChoice(const csv::Row& row, const std::string& text) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw ParseError(row.line, "label '" + text + "' is not an integer");
}

std::vector<Record> ParseSwagCsv(std::string_view content) {
  const std::vector<csv::Row> rows = csv::Parse(content);
  std::vector<Record> records;
  if (rows.empty()) return records;
  const Header header(rows[0].fields);
  const auto sent1 = header.Find("sent1");
  const auto sent2 = header.Find("sent2");
  const auto label = header.Find("label");
  if (!sent1 || !sent2 || !label) {
    throw Error(ErrorCode::kSchemaError, "SWAG header needs sent1, sent2 and label");
  }
  std::vector<std::size_t> endings;
  while (auto column = header.Find("ending" + std::to_string(endings.size()))) {
    endings.push_back(*column);
  }
  if (endings.empty()) throw Error(ErrorCode::kSchemaError, "SWAG header has no ending0");
  std::optional<std::size_t> id = header.Find("id");
  if (!id && !header.names().empty() && header.names()[0].empty()) id = 0;
  const auto tags = TagColumns(header);

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const csv::Row& row = rows[i];
    Record r;
    r.id = id ? FieldAt(row, *id) : RowId(i - 1);
    r.task = Task::kMultipleChoice;
    r.components.push_back({"context", FieldAt(row, *sent1)});
    r.components.push_back({"sent2_prefix", FieldAt(row, *sent2)});
    for (std::size_t e = 0; e < endings.size(); ++e) {
      r.components.push_back({EndingName(e), FieldAt(row, endings[e])});
    }
    const int choice = ParseChoice(row, FieldAt(row, *label));
    if (choice < 0 || static_cast<std::size_t>(choice) >= endings.size()) {
      throw ParseError(row.line, "label " + std::to_string(choice) + " out of range");
    }
    r.gold = Label::Choice(choice);
    for (const auto& [column, key] : tags) r.tags[key] = FieldAt(row, column);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<Record> ParseJsonl(std::string_view content) {
  std::vector<Record> records;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    const std::string_view text = content.substr(start, end - start);
    ++line;
    start = end + 1;
    if (TrimWhitespace(text).empty()) continue;
    try {
      records.push_back(RecordFromJson(ordered_json::parse(text)));
    } catch (const ordered_json::exception& e) {
      throw ParseError(line, e.what());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
  }
  return records;
}

std::string AnswerString(const ordered_json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number()) return value.dump();
  return {};
}

std::vector<std::string> DropAnswerSpans(const ordered_json& answer) {
  const std::string number = answer.contains("number") ? AnswerString(answer["number"]) : "";
  if (!number.empty()) return {number};
  if (answer.contains("spans") && answer["spans"].is_array() && !answer["spans"].empty()) {
    return answer["spans"].get<std::vector<std::string>>();
  }
  if (answer.contains("date") && answer["date"].is_object()) {
    std::string date;
    for (const char* part : {"day", "month", "year"}) {
      if (!answer["date"].contains(part)) continue;
      const std::string value = AnswerString(answer["date"][part]);
      if (value.empty()) continue;
      if (!date.empty()) date.push_back(' ');
      date += value;
    }
    if (!date.empty()) return {date};
  }
  return {};
}

std::vector<Record> ParseDropJson(std::string_view content) {
  ordered_json root;
  try {
    root = ordered_json::parse(content);
  } catch (const ordered_json::exception& e) {
    throw ParseError(0, e.what());
  }
  if (!root.is_object()) throw Error(ErrorCode::kSchemaError, "DROP root must be an object");
  std::vector<Record> records;
  try {
    for (const auto& [passage_id, entry] : root.items()) {
      if (!entry.contains("passage") || !entry.contains("qa_pairs")) {
        throw Error(ErrorCode::kSchemaError,
                    "passage '" + passage_id + "' lacks passage or qa_pairs");
      }
      const std::string passage = entry["passage"].get<std::string>();
      for (const ordered_json& qa : entry["qa_pairs"]) {
        Record r;
        r.id = qa.contains("query_id") ? qa["query_id"].get<std::string>()
                                       : RowId(records.size());
        r.task = Task::kExtractiveQa;
        r.components.push_back({"passage", passage});
        r.components.push_back({"question", qa.at("question").get<std::string>()});
        std::vector<std::string> spans =
            qa.contains("answer") ? DropAnswerSpans(qa["answer"]) : std::vector<std::string>{};
        if (spans.empty()) {
          throw Error(ErrorCode::kSchemaError, "query '" + r.id + "' has an empty answer");
        }
        r.gold = Label::Spans(std::move(spans));
        records.push_back(std::move(r));
      }
    }
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kSchemaError, e.what());
  }
  return records;
}

std::set<std::string> TagKeys(std::span<const Record> records) {
  std::set<std::string> keys;
  for (const Record& r : records) {
    for (const auto& [key, value] : r.tags) keys.insert(key);
  }
  return keys;
}

Task CommonTask(std::span<const Record> records, std::optional<Task> fallback,
                Task default_task) {
  const Task task = records.empty() ? fallback.value_or(default_task) : records[0].task;
  for (const Record& r : records) {
    if (r.task != task) {
      throw Error(ErrorCode::kSchemaError, "records mix tasks " +
                                               std::string(TaskName(task)) + " and " +
                                               TaskName(r.task));
    }
  }
  return task;
}

void CheckTsvField(const Record& r, const std::string& text) {
  if (text.find_first_of("\t\r\n") != std::string::npos) {
    throw Error(ErrorCode::kSchemaError,
                "record '" + r.id + "' contains a tab or newline; TSV cannot hold it");
  }
}

std::string SerializeGlueTsv(std::span<const Record> records, std::optional<Task> hint) {
  const Task task = CommonTask(records, hint, Task::kPairClassification);
  if (task != Task::kPairClassification && task != Task::kSingleSentence) {
    throw Error(ErrorCode::kSchemaError,
                std::string("glue_tsv cannot hold ") + TaskName(task) + " records");
  }
  const bool pair = task == Task::kPairClassification;
  const std::set<std::string> tag_keys = TagKeys(records);
  std::vector<std::string> header = {"id"};
  if (pair) {
    header.insert(header.end(), {"sentence1", "sentence2"});
  } else {
    header.push_back("sentence");
  }
  header.push_back("label");
  for (const std::string& key : tag_keys) header.push_back(std::string(kTagPrefix) + key);

  std::string out;
  auto append_row = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out.push_back('\t');
      out += fields[i];
    }
    out.push_back('\n');
  };
  append_row(header);
  for (const Record& r : records) {
    if (r.gold.kind() != Label::Kind::kClass) {
      throw Error(ErrorCode::kSchemaError, "record '" + r.id + "' has a non-class label");
    }
    std::vector<std::string> fields = {r.id};
    fields.push_back(r.Get("part1"));
    if (pair) fields.push_back(r.Get("part2"));
    fields.push_back(r.gold.class_name());
    for (const std::string& key : tag_keys) {
      auto it = r.tags.find(key);
      fields.push_back(it == r.tags.end() ? "" : it->second);
    }
    for (const std::string& f : fields) CheckTsvField(r, f);
    append_row(fields);
  }
  return out;
}

std::string SerializeSwagCsv(std::span<const Record> records, std::optional<Task> hint) {
  const Task task = CommonTask(records, hint, Task::kMultipleChoice);
  if (task != Task::kMultipleChoice) {
    throw Error(ErrorCode::kSchemaError,
                std::string("swag_csv cannot hold ") + TaskName(task) + " records");
  }
  const std::size_t endings = records.empty() ? 4 : CountEndings(records[0]);
  const std::set<std::string> tag_keys = TagKeys(records);
  std::vector<std::string> header = {"id", "sent1", "sent2"};
  for (std::size_t e = 0; e < endings; ++e) header.push_back("ending" + std::to_string(e));
  header.push_back("label");
  for (const std::string& key : tag_keys) header.push_back(std::string(kTagPrefix) + key);

  std::string out = csv::JoinRow(header) + "\n";
  for (const Record& r : records) {
    if (CountEndings(r) != endings) {
      throw Error(ErrorCode::kSchemaError, "record '" + r.id + "' has a different ending count");
    }
    if (r.gold.kind() != Label::Kind::kChoiceIndex) {
      throw Error(ErrorCode::kSchemaError, "record '" + r.id + "' has a non-choice label");
    }
    std::vector<std::string> fields = {r.id, r.Get("context"), r.Get("sent2_prefix")};
    for (std::size_t e = 0; e < endings; ++e) fields.push_back(r.Get(EndingName(e)));
    fields.push_back(std::to_string(r.gold.choice()));
    for (const std::string& key : tag_keys) {
      auto it = r.tags.find(key);
      fields.push_back(it == r.tags.end() ? "" : it->second);
    }
    out += csv::JoinRow(fields);
    out.push_back('\n');
  }
  return out;
}

}  // namespace

const char* DatasetFormatName(DatasetFormat format) {
  switch (format) {
    case DatasetFormat::kJsonl: return "jsonl";
    case DatasetFormat::kGlueTsv: return "glue_tsv";
    case DatasetFormat::kDropJson: return "drop_json";
    case DatasetFormat::kSwagCsv: return "swag_csv";
  }
  return "unknown";
}

DatasetFormat ParseDatasetFormat(std::string_view name) {
  for (DatasetFormat f : {DatasetFormat::kJsonl, DatasetFormat::kGlueTsv,
                          DatasetFormat::kDropJson, DatasetFormat::kSwagCsv}) {
    if (name == DatasetFormatName(f)) return f;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown format '" + std::string(name) + "'");
}

std::vector<Record> ParseDataset(std::string_view content, DatasetFormat format) {
  content = StripBom(content);
  switch (format) {
    case DatasetFormat::kJsonl: return ParseJsonl(content);
    case DatasetFormat::kGlueTsv: return ParseGlueTsv(content);
    case DatasetFormat::kDropJson: return ParseDropJson(content);
    case DatasetFormat::kSwagCsv: return ParseSwagCsv(content);
  }
  return {};
}

std::vector<Record> ReadDataset(const std::filesystem::path& path, DatasetFormat format) {
  return ParseDataset(ReadFileToString(path), format);
}

std::string SerializeDataset(std::span<const Record> records, DatasetFormat format,
                             std::optional<Task> task) {
  switch (format) {
    case DatasetFormat::kJsonl: {
      std::string out;
      for (const Record& r : records) {
        out += RecordToJson(r).dump();
        out.push_back('\n');
      }
      return out;
    }
    case DatasetFormat::kGlueTsv: return SerializeGlueTsv(records, task);
    case DatasetFormat::kSwagCsv: return SerializeSwagCsv(records, task);
    case DatasetFormat::kDropJson:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "drop_json is a read-only format");
}

void WriteDataset(std::span<const Record> records, const std::filesystem::path& path,
                  DatasetFormat format, std::optional<Task> task) {
  WriteStringToFile(path, SerializeDataset(records, format, task));
}

std::size_t LowerMedian(std::vector<std::size_t> values) {
  if (values.empty()) return 0;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

FilterResult FilterMinWords(std::span<const Record> records, int min_words,
                            std::span<const std::string> components) {
  if (min_words < 1) throw Error(ErrorCode::kInvalidArgument, "min_words must be >= 1");
  if (!records.empty()) {
    for (const std::string& name : components) CheckComponentName(records[0].task, name);
  }
  FilterResult result;
  result.stats.original_count = records.size();
  std::map<std::string, std::vector<std::size_t>> word_counts;
  for (const Record& r : records) {
    bool keep = true;
    for (const std::string& name : components) {
      for (const std::string& expanded : ExpandComponent(r, name)) {
        if (CountWords(r.Get(expanded)) < static_cast<std::size_t>(min_words)) keep = false;
      }
    }
    if (!keep) continue;
    for (const Component& c : r.components) word_counts[c.name].push_back(CountWords(c.text));
    result.records.push_back(r);
  }
  result.stats.used_count = result.records.size();
  for (auto& [name, counts] : word_counts) {
    result.stats.median_words[name] = LowerMedian(std::move(counts));
  }
  return result;
}

std::string ReadFileToString(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteStringToFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write to '" + path.string() + "' failed");
}

}  // namespace wordorder
