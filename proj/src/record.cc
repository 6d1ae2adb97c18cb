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

#include "wordorder/record.h"

#include <algorithm>

#include "wordorder/error.h"

namespace wordorder {

using nlohmann::ordered_json;

const char* TaskName(Task task) {
  switch (task) {
    case Task::kPairClassification: return "pair_classification";
    case Task::kSingleSentence: return "single_sentence";
    case Task::kMultipleChoice: return "multiple_choice";
    case Task::kExtractiveQa: return "extractive_qa";
  }
  return "unknown";
}

Task ParseTask(std::string_view name) {
  for (Task task : {Task::kPairClassification, Task::kSingleSentence,
                    Task::kMultipleChoice, Task::kExtractiveQa}) {
    if (name == TaskName(task)) return task;
  }
  if (name == "pair") return Task::kPairClassification;
  if (name == "single") return Task::kSingleSentence;
  throw Error(ErrorCode::kSchemaError, "unknown task '" + std::string(name) + "'");
}

std::string Label::ToString() const {
  switch (kind()) {
    case Kind::kClass: return class_name();
    case Kind::kChoiceIndex: return std::to_string(choice());
    case Kind::kAnswerSpans: {
      std::string out;
      for (const std::string& span : spans()) {
        if (!out.empty()) out += " | ";
        out += span;
      }
      return out;
    }
  }
  return {};
}

const std::string* Record::Find(std::string_view name) const {
  for (const Component& c : components) {
    if (c.name == name) return &c.text;
  }
  return nullptr;
}

std::string* Record::Find(std::string_view name) {
  for (Component& c : components) {
    if (c.name == name) return &c.text;
  }
  return nullptr;
}

const std::string& Record::Get(std::string_view name) const {
  const std::string* text = Find(name);
  if (text == nullptr) {
    throw Error(ErrorCode::kUnknownComponent,
                "record '" + id + "' has no component '" + std::string(name) + "'");
  }
  return *text;
}

std::string EndingName(std::size_t index) {
  return "ending_" + std::to_string(index);
}

std::vector<std::string> SchemaComponents(Task task, std::size_t num_endings) {
  switch (task) {
    case Task::kPairClassification: return {"part1", "part2"};
    case Task::kSingleSentence: return {"part1"};
    case Task::kExtractiveQa: return {"passage", "question"};
    case Task::kMultipleChoice: {
      std::vector<std::string> names = {"context", "sent2_prefix"};
      for (std::size_t i = 0; i < num_endings; ++i) names.push_back(EndingName(i));
      return names;
    }
  }
  return {};
}

std::size_t CountEndings(const Record& record) {
  return static_cast<std::size_t>(
      std::count_if(record.components.begin(), record.components.end(),
                    [](const Component& c) { return c.name.rfind("ending_", 0) == 0; }));
}

namespace {

bool IsEndingName(std::string_view name) {
  if (name.rfind("ending_", 0) != 0 || name.size() == 7) return false;
  return std::all_of(name.begin() + 7, name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

void CheckGold(const Record& record) {
  const Label::Kind kind = record.gold.kind();
  switch (record.task) {
    case Task::kPairClassification:
    case Task::kSingleSentence:
      if (kind == Label::Kind::kClass) return;
      break;
    case Task::kMultipleChoice:
      if (kind != Label::Kind::kChoiceIndex) break;
      if (record.gold.choice() < 0 ||
          static_cast<std::size_t>(record.gold.choice()) >= CountEndings(record)) {
        throw Error(ErrorCode::kSchemaError, "record '" + record.id + "' choice " +
                                                 record.gold.ToString() + " out of range");
      }
      return;
    case Task::kExtractiveQa:
      if (kind != Label::Kind::kAnswerSpans) break;
      if (record.gold.spans().empty()) {
        throw Error(ErrorCode::kSchemaError, "record '" + record.id + "' has no answer spans");
      }
      return;
  }
  throw Error(ErrorCode::kSchemaError,
              "record '" + record.id + "' has a label of the wrong kind for " +
                  TaskName(record.task));
}

}  // namespace

void CheckComponentName(Task task, std::string_view name) {
  if (task == Task::kMultipleChoice &&
      (name == kEndingsGroup || IsEndingName(name))) {
    return;
  }
  for (const std::string& known : SchemaComponents(task, 0)) {
    if (known == name) return;
  }
  throw Error(ErrorCode::kUnknownComponent,
              "'" + std::string(name) + "' is not a component of " + TaskName(task));
}

std::vector<std::string> ExpandComponent(const Record& record,
                                         std::string_view name) {
  CheckComponentName(record.task, name);
  if (name == kEndingsGroup) {
    std::vector<std::string> names;
    for (const Component& c : record.components) {
      if (IsEndingName(c.name)) names.push_back(c.name);
    }
    return names;
  }
  if (record.Find(name) == nullptr) {
    throw Error(ErrorCode::kUnknownComponent,
                "record '" + record.id + "' has no component '" + std::string(name) + "'");
  }
  return {std::string(name)};
}

ordered_json LabelToJson(const Label& label) {
  ordered_json out;
  switch (label.kind()) {
    case Label::Kind::kClass:
      out["kind"] = "class";
      out["value"] = label.class_name();
      break;
    case Label::Kind::kChoiceIndex:
      out["kind"] = "choice_index";
      out["value"] = label.choice();
      break;
    case Label::Kind::kAnswerSpans:
      out["kind"] = "answer_spans";
      out["value"] = label.spans();
      break;
  }
  return out;
}

Label LabelFromJson(const ordered_json& json) {
  if (json.is_string()) return Label::Class(json.get<std::string>());
  if (json.is_number_integer()) return Label::Choice(json.get<int>());
  if (json.is_array()) return Label::Spans(json.get<std::vector<std::string>>());
  if (!json.is_object() || !json.contains("kind") || !json.contains("value")) {
    throw Error(ErrorCode::kSchemaError, "label must be a value or {kind, value}");
  }
  const std::string kind = json.at("kind").get<std::string>();
  const ordered_json& value = json.at("value");
  if (kind == "class" && value.is_string()) return Label::Class(value.get<std::string>());
  if (kind == "choice_index" && value.is_number_integer()) {
    return Label::Choice(value.get<int>());
  }
  if (kind == "answer_spans" && value.is_array()) {
    return Label::Spans(value.get<std::vector<std::string>>());
  }
  throw Error(ErrorCode::kSchemaError, "bad label of kind '" + kind + "'");
}

ordered_json RecordToJson(const Record& record) {
  ordered_json out;
  out["id"] = record.id;
  out["task"] = TaskName(record.task);
  ordered_json components = ordered_json::object();
  for (const Component& c : record.components) components[c.name] = c.text;
  out["components"] = std::move(components);
  out["gold"] = LabelToJson(record.gold);
  if (!record.tags.empty()) {
    ordered_json tags = ordered_json::object();
    for (const auto& [key, value] : record.tags) tags[key] = value;
    out["tags"] = std::move(tags);
  }
  if (record.provenance) {
    const Provenance& p = *record.provenance;
    ordered_json prov;
    prov["source_id"] = p.source_id;
    if (p.perturbed_component) prov["perturbed_component"] = *p.perturbed_component;
    if (p.n) prov["n"] = *p.n;
    prov["mode"] = PermutationModeName(p.mode);
    out["provenance"] = std::move(prov);
  }
  return out;
}

Record RecordFromJson(const ordered_json& json) {
  if (!json.is_object()) throw Error(ErrorCode::kSchemaError, "record must be an object");
  for (const char* key : {"id", "task", "components", "gold"}) {
    if (!json.contains(key)) {
      throw Error(ErrorCode::kSchemaError, std::string("record missing '") + key + "'");
    }
  }
  Record record;
  record.id = json.at("id").get<std::string>();
  record.task = ParseTask(json.at("task").get<std::string>());
  for (const auto& [name, text] : json.at("components").items()) {
    CheckComponentName(record.task, name);
    record.components.push_back({name, text.get<std::string>()});
  }
  record.gold = LabelFromJson(json.at("gold"));
  CheckGold(record);
  if (json.contains("tags")) {
    for (const auto& [key, value] : json.at("tags").items()) {
      record.tags[key] = value.get<std::string>();
    }
  }
  if (json.contains("provenance")) {
    const ordered_json& prov = json.at("provenance");
    Provenance p;
    p.source_id = prov.at("source_id").get<std::string>();
    if (prov.contains("perturbed_component")) {
      p.perturbed_component = prov.at("perturbed_component").get<std::string>();
    }
    if (prov.contains("n")) p.n = prov.at("n").get<int>();
    if (prov.contains("mode")) p.mode = ParsePermutationMode(prov.at("mode").get<std::string>());
    record.provenance = std::move(p);
  }
  return record;
}

}  // namespace wordorder
