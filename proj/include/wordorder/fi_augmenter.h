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

#ifndef WORDORDER_FI_AUGMENTER_H_
#define WORDORDER_FI_AUGMENTER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wordorder/ngram_permuter.h"
#include "wordorder/record.h"

namespace wordorder {

// Non-negative rational number, e.g. "1", "0.9", "3/2".
struct Ratio {
  std::int64_t num = 1;
  std::int64_t den = 1;

  static Ratio Parse(std::string_view text);
  double ToDouble() const { return static_cast<double>(num) / static_cast<double>(den); }
  // floor(value * count)
  std::size_t FloorTimes(std::size_t count) const;
  // value * count rounded half up
  std::size_t RoundTimes(std::size_t count) const;
  std::string ToString() const;
};

enum class InvalidLabelMode {
  kSingle,        // one "invalid" class
  kPerComponent,  // "invalid_<component>", one per target component
};

const char* InvalidLabelModeName(InvalidLabelMode mode);
InvalidLabelMode ParseInvalidLabelMode(std::string_view name);

inline constexpr std::string_view kInvalidLabel = "invalid";
inline constexpr std::string_view kInvalidChoiceText = "is invalid.";

struct AugmentConfig {
  Ratio ratio{1, 1};
  std::vector<int> n_set = {1, 2, 3};
  InvalidLabelMode invalid_label_mode = InvalidLabelMode::kSingle;
  // Empty means DefaultTargetComponents(task).
  std::vector<std::string> target_components;
  int min_words = 3;
  Ratio split_fraction{9, 10};
  std::uint64_t master_seed = 0;
  PermutationMode mode = PermutationMode::kDiffers;
  // Split the valid records first and let each invalid twin follow its
  // source. The default splits the augmented set as a whole.
  bool split_before_augment = false;
};

struct AugmentManifest {
  AugmentConfig config;
  std::vector<std::string> target_components;
  std::vector<std::string> label_space;
  std::size_t valid_count = 0;
  std::size_t invalid_count = 0;
  std::size_t train_count = 0;
  std::size_t dev_count = 0;
  // Sources drawn more than once because there were fewer permutable
  // records than invalid slots.
  std::size_t reused_sources = 0;
  std::map<std::pair<int, std::string>, std::size_t> counts;  // (n, component)
  std::vector<std::pair<std::string, std::string>> skipped;   // (source id, reason)
  struct Reassignment {
    std::string source_id;
    int from_n;
    int to_n;
  };
  std::vector<Reassignment> reassigned;

  std::size_t CountForN(int n) const;
  nlohmann::ordered_json ToJson() const;
};

struct AugmentResult {
  std::vector<Record> train;
  std::vector<Record> dev;
  AugmentManifest manifest;
};

// pair: part1, part2; single: part1; multiple choice: context, endings;
// extractive QA: passage, question.
std::vector<std::string> DefaultTargetComponents(Task task);

// Label name an invalid record gets for a perturbed component.
std::string InvalidLabelFor(InvalidLabelMode mode, std::string_view component);

// Distinct class labels in a canonical order: known NLI and acceptability
// label sets keep their conventional order, anything else sorts.
std::vector<std::string> CollectClassLabels(std::span<const Record> records);

// original_labels followed by the invalid label(s). Extractive QA supports only
// per-component labels (the invalid-type module); multiple choice has no
// class labels and throws kUnsupportedTask.
std::vector<std::string> MakeLabelSpace(Task task,
                                        std::span<const std::string> original_labels,
                                        InvalidLabelMode mode,
                                        std::span<const std::string> target_components);

// True if every component `target` names in `record` admits an n-gram
// permutation under `mode`.
bool IsTargetPermutable(const Record& record, std::string_view target, int n,
                        PermutationMode mode);

// Permutes the components `target` names, one derived seed per component.
// Other components are left untouched.
Record PerturbRecord(const Record& record, std::string_view target, int n,
                     PermutationMode mode, std::uint64_t seed);

// Builds the invalid-augmented training data and its train/dev split.
AugmentResult Augment(std::span<const Record> records, const AugmentConfig& config);

}  // namespace wordorder

#endif  // WORDORDER_FI_AUGMENTER_H_
