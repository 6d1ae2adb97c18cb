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

#include "wordorder/eval_harness.h"

#include <algorithm>
#include <unordered_map>

#include "wordorder/error.h"
#include "wordorder/fi_augmenter.h"
#include "wordorder/seed.h"
#include "wordorder/unicode_text.h"

namespace wordorder {

using nlohmann::ordered_json;

namespace {

constexpr std::string_view kGramSuffix = "gram";

// Maps each eval id to its prediction, enforcing one prediction per id.
std::vector<const Prediction*> AlignPredictions(std::span<const Record> eval_set,
                                                std::span<const Prediction> predictions) {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < eval_set.size(); ++i) index.emplace(eval_set[i].id, i);
  std::vector<const Prediction*> aligned(eval_set.size(), nullptr);
  for (const Prediction& p : predictions) {
    auto it = index.find(p.id);
    if (it == index.end()) {
      throw Error(ErrorCode::kSchemaError, "prediction for unknown id '" + p.id + "'");
    }
    if (aligned[it->second] != nullptr) {
      throw Error(ErrorCode::kDuplicatePrediction, "id '" + p.id + "' predicted twice");
    }
    aligned[it->second] = &p;
  }
  for (std::size_t i = 0; i < eval_set.size(); ++i) {
    if (aligned[i] == nullptr) {
      throw Error(ErrorCode::kMissingPrediction, "no prediction for id '" + eval_set[i].id + "'");
    }
  }
  return aligned;
}

bool IsInvalid(const Label& label, const std::set<std::string>& invalid_labels) {
  return label.kind() != Label::Kind::kAnswerSpans && invalid_labels.count(label.ToString()) > 0;
}

bool SameLabel(const Label& a, const Label& b) {
  if (a.kind() == Label::Kind::kAnswerSpans || b.kind() == Label::Kind::kAnswerSpans) {
    return a == b;
  }
  return a.ToString() == b.ToString();
}

MetricRow MakeRow(const ScoreContext& context, std::string metric, std::size_t hits,
                  std::size_t count) {
  MetricRow row;
  row.dataset = context.dataset;
  row.variant = context.variant.name;
  row.component = context.variant.component.value_or("");
  row.n = context.variant.n.value_or(0);
  row.metric = std::move(metric);
  row.value = 100.0 * static_cast<double>(hits) / static_cast<double>(count);
  row.count = count;
  return row;
}

bool IsAsciiPunct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}

std::vector<std::string> NormalizedBag(const std::vector<std::string>& spans) {
  std::vector<std::string> bag;
  bag.reserve(spans.size());
  for (const std::string& s : spans) bag.push_back(NormalizeAnswer(s));
  std::sort(bag.begin(), bag.end());
  return bag;
}

// 0 = entailment, 1 = non-entailment, nullopt = neither.
std::optional<int> CollapseNli(std::string_view label) {
  if (label == "entailment") return 0;
  if (label == "non-entailment" || label == "not_entailment" || label == "non_entailment" ||
      label == "neutral" || label == "contradiction") {
    return 1;
  }
  return std::nullopt;
}

}  // namespace

EvalVariant EvalVariant::Permuted(std::string component, int n) {
  EvalVariant v;
  v.name = component + "-" + std::to_string(n) + std::string(kGramSuffix);
  v.component = std::move(component);
  v.n = n;
  return v;
}

EvalVariant EvalVariant::Parse(std::string_view name) {
  if (name == "dev") return Dev();
  const auto dash = name.rfind('-');
  if (dash != std::string_view::npos && dash > 0 && name.size() == dash + 2 + kGramSuffix.size() &&
      name.substr(dash + 2) == kGramSuffix && name[dash + 1] >= '1' && name[dash + 1] <= '9') {
    return Permuted(std::string(name.substr(0, dash)), name[dash + 1] - '0');
  }
  throw Error(ErrorCode::kInvalidArgument,
              "variant '" + std::string(name) + "' is neither dev nor <component>-<n>gram");
}

std::vector<EvalSet> BuildEvalSets(std::span<const Record> records,
                                   std::span<const std::string> components,
                                   std::span<const int> n_set, std::uint64_t master_seed) {
  std::vector<int> ns(n_set.begin(), n_set.end());
  std::sort(ns.rbegin(), ns.rend());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (int n : ns) {
    if (n < 1 || n > 3) throw Error(ErrorCode::kInvalidArgument, "n must be 1, 2 or 3");
  }
  if (!records.empty()) {
    for (const std::string& c : components) CheckComponentName(records[0].task, c);
  }

  std::vector<EvalSet> sets;
  EvalSet dev;
  dev.records.assign(records.begin(), records.end());
  sets.push_back(std::move(dev));
  for (const std::string& component : components) {
    for (int n : ns) {
      EvalSet set;
      set.variant = EvalVariant::Permuted(component, n);
      const std::string n_text = std::to_string(n);
      for (const Record& r : records) {
        if (!IsTargetPermutable(r, component, n, PermutationMode::kDiffers)) {
          ++set.dropped;
          continue;
        }
        Record permuted =
            PerturbRecord(r, component, n, PermutationMode::kDiffers,
                          DeriveSeed(master_seed, {r.id, "eval", component, n_text}));
        permuted.provenance = Provenance{r.id, component, n, PermutationMode::kDiffers};
        set.records.push_back(std::move(permuted));
      }
      sets.push_back(std::move(set));
    }
  }
  return sets;
}

std::vector<Prediction> ParsePredictions(std::string_view text) {
  text = StripBom(text);
  std::vector<Prediction> out;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view content = text.substr(start, end - start);
    ++line;
    start = end + 1;
    if (TrimWhitespace(content).empty()) continue;
    try {
      const ordered_json json = ordered_json::parse(content);
      Prediction p;
      p.id = json.at("id").get<std::string>();
      p.predicted = LabelFromJson(json.at("predicted"));
      if (json.contains("confidence") && !json["confidence"].is_null()) {
        const double c = json["confidence"].get<double>();
        if (!(c >= 0.0 && c <= 1.0)) throw ParseError(line, "confidence outside [0, 1]");
        p.confidence = c;
      }
      out.push_back(std::move(p));
    } catch (const ordered_json::exception& e) {
      throw ParseError(line, e.what());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
  }
  return out;
}

std::string SerializePredictions(std::span<const Prediction> predictions) {
  std::string out;
  for (const Prediction& p : predictions) {
    ordered_json json;
    json["id"] = p.id;
    switch (p.predicted.kind()) {
      case Label::Kind::kClass: json["predicted"] = p.predicted.class_name(); break;
      case Label::Kind::kChoiceIndex: json["predicted"] = p.predicted.choice(); break;
      case Label::Kind::kAnswerSpans: json["predicted"] = p.predicted.spans(); break;
    }
    if (p.confidence) json["confidence"] = *p.confidence;
    out += json.dump();
    out.push_back('\n');
  }
  return out;
}

MetricsReport Score(std::span<const Record> eval_set, std::span<const Prediction> predictions,
                    const std::set<std::string>& invalid_labels, const ScoreContext& context) {
  if (eval_set.empty()) throw Error(ErrorCode::kEmptyReport, "evaluation set is empty");
  const std::vector<const Prediction*> aligned = AlignPredictions(eval_set, predictions);
  std::size_t correct = 0;
  std::size_t invalid = 0;
  for (std::size_t i = 0; i < eval_set.size(); ++i) {
    const Label& predicted = aligned[i]->predicted;
    if (SameLabel(predicted, eval_set[i].gold)) ++correct;
    if (IsInvalid(predicted, invalid_labels)) ++invalid;
  }
  MetricsReport report;
  report.rows.push_back(MakeRow(context, "accuracy", correct, eval_set.size()));
  report.rows.push_back(MakeRow(context, "pct_invalid", invalid, eval_set.size()));
  return report;
}

std::string NormalizeAnswer(std::string_view answer) {
  std::string lowered = ToLower(answer);
  std::string no_punct;
  no_punct.reserve(lowered.size());
  for (char c : lowered) {
    if (!IsAsciiPunct(c)) no_punct.push_back(c);
  }
  std::string out;
  for (const std::string& word : SplitOnWhitespace(no_punct)) {
    if (word == "a" || word == "an" || word == "the") continue;
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

MetricsReport ScoreDropEm(std::span<const Record> eval_set,
                          std::span<const Prediction> predictions,
                          const std::set<std::string>& invalid_labels,
                          const ScoreContext& context) {
  if (eval_set.empty()) throw Error(ErrorCode::kEmptyReport, "evaluation set is empty");
  const std::vector<const Prediction*> aligned = AlignPredictions(eval_set, predictions);
  std::size_t hits = 0;
  std::size_t invalid = 0;
  for (std::size_t i = 0; i < eval_set.size(); ++i) {
    const Record& r = eval_set[i];
    if (r.gold.kind() != Label::Kind::kAnswerSpans) {
      throw Error(ErrorCode::kSchemaError, "record '" + r.id + "' has no answer spans");
    }
    const Label& predicted = aligned[i]->predicted;
    if (IsInvalid(predicted, invalid_labels)) {
      ++invalid;
      continue;
    }
    std::vector<std::string> spans;
    switch (predicted.kind()) {
      case Label::Kind::kAnswerSpans: spans = predicted.spans(); break;
      default: spans = {predicted.ToString()}; break;
    }
    if (NormalizedBag(spans) == NormalizedBag(r.gold.spans())) ++hits;
  }
  MetricsReport report;
  report.rows.push_back(MakeRow(context, "exact_match", hits, eval_set.size()));
  report.rows.push_back(MakeRow(context, "pct_invalid", invalid, eval_set.size()));
  return report;
}

const char* HeuristicName(Heuristic heuristic) {
  switch (heuristic) {
    case Heuristic::kLexicalOverlap: return "lexical_overlap";
    case Heuristic::kSubsequence: return "subsequence";
    case Heuristic::kConstituent: return "constituent";
  }
  return "unknown";
}

Heuristic ParseHeuristic(std::string_view name) {
  for (Heuristic h : kHeuristics) {
    if (name == HeuristicName(h)) return h;
  }
  throw Error(ErrorCode::kUnknownHeuristic, "unknown heuristic '" + std::string(name) + "'");
}

HansTable ScoreHans(std::span<const Record> records, std::span<const Prediction> predictions) {
  const std::vector<const Prediction*> aligned = AlignPredictions(records, predictions);
  std::array<std::array<std::size_t, 2>, 3> correct{};
  HansTable table;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Record& r = records[i];
    auto tag = r.tags.find("heuristic");
    if (tag == r.tags.end()) {
      throw Error(ErrorCode::kUnknownHeuristic, "record '" + r.id + "' has no heuristic tag");
    }
    const auto h = static_cast<std::size_t>(ParseHeuristic(tag->second));
    const std::optional<int> gold =
        r.gold.kind() == Label::Kind::kClass ? CollapseNli(r.gold.class_name()) : std::nullopt;
    if (!gold) {
      throw Error(ErrorCode::kSchemaError,
                  "record '" + r.id + "' gold '" + r.gold.ToString() + "' is not an NLI label");
    }
    const std::optional<int> predicted = CollapseNli(aligned[i]->predicted.ToString());
    const auto g = static_cast<std::size_t>(*gold);
    ++table.count[h][g];
    if (predicted == gold) ++correct[h][g];
  }
  for (std::size_t h = 0; h < 3; ++h) {
    for (std::size_t g = 0; g < 2; ++g) {
      table.accuracy[h][g] = table.count[h][g] == 0
                                 ? 0.0
                                 : 100.0 * static_cast<double>(correct[h][g]) /
                                       static_cast<double>(table.count[h][g]);
    }
  }
  return table;
}

MetricsReport HansTable::ToReport(std::string_view dataset) const {
  static const char* kGold[] = {"entailment", "non-entailment"};
  MetricsReport report;
  for (Heuristic heuristic : kHeuristics) {
    const auto h = static_cast<std::size_t>(heuristic);
    for (std::size_t g = 0; g < 2; ++g) {
      if (count[h][g] == 0) continue;
      MetricRow row;
      row.dataset = std::string(dataset);
      row.variant = std::string(HeuristicName(heuristic)) + ":" + kGold[g];
      row.metric = "accuracy";
      row.value = accuracy[h][g];
      row.count = count[h][g];
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string RenderHansTable(std::span<const std::pair<std::string, HansTable>> models) {
  std::string out =
      "| | | Lexical Overlap | Subsequence | Constituent |\n"
      "|---|---|---:|---:|---:|\n";
  static const char* kRows[] = {"Entailment", "Non-Entailment"};
  for (const auto& [model, table] : models) {
    for (std::size_t g = 0; g < 2; ++g) {
      out += "| " + (g == 0 ? model : std::string()) + " | " + kRows[g] + " |";
      for (std::size_t h = 0; h < 3; ++h) {
        out += " " + (table.count[h][g] == 0 ? std::string("-")
                                             : FormatFixed(table.accuracy[h][g], 2)) + " |";
      }
      out.push_back('\n');
    }
  }
  return out;
}

}  // namespace wordorder
