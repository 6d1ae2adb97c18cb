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

#ifndef WORDORDER_RECORD_H_
#define WORDORDER_RECORD_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wordorder/ngram_permuter.h"

namespace wordorder {

enum class Task {
  kPairClassification,
  kSingleSentence,
  kMultipleChoice,
  kExtractiveQa,
};

const char* TaskName(Task task);
Task ParseTask(std::string_view name);

// A gold or predicted label: a class name, an answer-choice index, or a bag
// of answer spans.
struct Label {
  enum class Kind { kClass, kChoiceIndex, kAnswerSpans };

  std::variant<std::string, int, std::vector<std::string>> value;

  static Label Class(std::string name) { return Label{std::move(name)}; }
  static Label Choice(int index) { return Label{index}; }
  static Label Spans(std::vector<std::string> spans) {
    return Label{std::move(spans)};
  }

  Kind kind() const { return static_cast<Kind>(value.index()); }
  const std::string& class_name() const { return std::get<std::string>(value); }
  int choice() const { return std::get<int>(value); }
  const std::vector<std::string>& spans() const {
    return std::get<std::vector<std::string>>(value);
  }

  // Class name, decimal choice index, or spans joined by " | ".
  std::string ToString() const;

  bool operator==(const Label&) const = default;
};

struct Component {
  std::string name;
  std::string text;

  bool operator==(const Component&) const = default;
};

// Where an augmented or perturbed record came from.
struct Provenance {
  std::string source_id;
  std::optional<std::string> perturbed_component;
  std::optional<int> n;
  PermutationMode mode = PermutationMode::kDiffers;

  bool operator==(const Provenance&) const = default;
};

struct Record {
  std::string id;
  Task task = Task::kPairClassification;
  std::vector<Component> components;
  Label gold;
  // Free-form string annotations, e.g. {"heuristic": "lexical_overlap"}.
  std::map<std::string, std::string> tags;
  std::optional<Provenance> provenance;

  const std::string* Find(std::string_view name) const;
  std::string* Find(std::string_view name);
  const std::string& Get(std::string_view name) const;

  bool operator==(const Record&) const = default;
};

// Component names for one record of `task`. Multiple-choice records have
// context, sent2_prefix and ending_0..ending_{k-1}.
std::vector<std::string> SchemaComponents(Task task, std::size_t num_endings = 4);

// Name of the i-th ending component.
std::string EndingName(std::size_t index);

// Number of ending_* components of a record.
std::size_t CountEndings(const Record& record);

// "endings" stands for every ending_* component of a multiple-choice record.
inline constexpr std::string_view kEndingsGroup = "endings";

// Resolves a target name against a record: "endings" expands to the
// ending components, any other name must be in the task schema. Throws
// kUnknownComponent otherwise.
std::vector<std::string> ExpandComponent(const Record& record,
                                         std::string_view name);

// Throws kUnknownComponent when `name` is not valid for `task`.
void CheckComponentName(Task task, std::string_view name);

nlohmann::ordered_json RecordToJson(const Record& record);
Record RecordFromJson(const nlohmann::ordered_json& json);

nlohmann::ordered_json LabelToJson(const Label& label);
Label LabelFromJson(const nlohmann::ordered_json& json);

}  // namespace wordorder

#endif  // WORDORDER_RECORD_H_
