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

#ifndef WORDORDER_EVAL_HARNESS_H_
#define WORDORDER_EVAL_HARNESS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wordorder/record.h"
#include "wordorder/report.h"

namespace wordorder {

// "dev" for the unperturbed set, "<component>-<n>gram" otherwise.
struct EvalVariant {
  std::string name = "dev";
  std::optional<std::string> component;
  std::optional<int> n;

  static EvalVariant Dev() { return {}; }
  static EvalVariant Permuted(std::string component, int n);
  // Inverse of the naming rule; throws kInvalidArgument on other names.
  static EvalVariant Parse(std::string_view name);

  bool operator==(const EvalVariant&) const = default;
};

struct EvalSet {
  EvalVariant variant;
  std::vector<Record> records;
  // Records left out of this variant because the component had no valid
  // permutation at this n.
  std::size_t dropped = 0;
};

// The dev variant followed by one variant per (component, n), n descending.
// Permuted variants keep ids and gold labels; only the named component
// changes (mode differs).
std::vector<EvalSet> BuildEvalSets(std::span<const Record> records,
                                   std::span<const std::string> components,
                                   std::span<const int> n_set, std::uint64_t master_seed);

struct Prediction {
  std::string id;
  Label predicted;
  std::optional<double> confidence;

  bool operator==(const Prediction&) const = default;
};

// One JSON object per line: {"id": ..., "predicted": <string | int | [strings]>,
// "confidence": <number, optional>}.
std::vector<Prediction> ParsePredictions(std::string_view text);
std::string SerializePredictions(std::span<const Prediction> predictions);

struct ScoreContext {
  std::string dataset;
  EvalVariant variant;
};

// accuracy and pct_invalid rows. Throws kMissingPrediction /
// kDuplicatePrediction naming the id, kSchemaError for predictions whose id is
// not in the set, kEmptyReport for an empty set.
MetricsReport Score(std::span<const Record> eval_set, std::span<const Prediction> predictions,
                    const std::set<std::string>& invalid_labels, const ScoreContext& context);

// Lowercase, drop ASCII punctuation, drop the articles a/an/the, collapse
// whitespace.
std::string NormalizeAnswer(std::string_view answer);

// exact_match and pct_invalid rows. A prediction in invalid_labels scores 0.
MetricsReport ScoreDropEm(std::span<const Record> eval_set,
                          std::span<const Prediction> predictions,
                          const std::set<std::string>& invalid_labels,
                          const ScoreContext& context);

enum class Heuristic { kLexicalOverlap = 0, kSubsequence = 1, kConstituent = 2 };

inline constexpr std::array<Heuristic, 3> kHeuristics = {
    Heuristic::kLexicalOverlap, Heuristic::kSubsequence, Heuristic::kConstituent};

const char* HeuristicName(Heuristic heuristic);
// Throws kUnknownHeuristic.
Heuristic ParseHeuristic(std::string_view name);

// Accuracy per (heuristic, gold label); index 0 is entailment, 1 is
// non-entailment. Cells with no records hold count 0 and accuracy 0.
struct HansTable {
  std::array<std::array<double, 2>, 3> accuracy{};
  std::array<std::array<std::size_t, 2>, 3> count{};

  MetricsReport ToReport(std::string_view dataset) const;
};

// Records carry tags["heuristic"]; gold and predicted labels collapse
// neutral/contradiction to non-entailment. Any other prediction (e.g. an
// invalid label) is wrong for both gold labels.
HansTable ScoreHans(std::span<const Record> records, std::span<const Prediction> predictions);

// Markdown: model x {Entailment, Non-Entailment} rows, one column per
// heuristic.
std::string RenderHansTable(std::span<const std::pair<std::string, HansTable>> models);

}  // namespace wordorder

#endif  // WORDORDER_EVAL_HARNESS_H_
