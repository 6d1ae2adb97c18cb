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

#ifndef WORDORDER_TOY_TRAINING_H_
#define WORDORDER_TOY_TRAINING_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordorder/eval_harness.h"
#include "wordorder/record.h"
#include "wordorder/toy_model.h"

namespace wordorder::toy {

// Everything needed to run a trained model on new records.
struct ToyModel {
  ModelConfig config;
  Vocab vocab;
  std::vector<std::string> labels;
  ModelParams params;
};

struct TrainReport {
  std::vector<double> epoch_loss;      // mean training loss per epoch
  std::vector<double> dev_accuracy;    // percent, per epoch
  std::size_t stopped_epoch = 0;       // 1-based epoch training ended after
  std::size_t best_epoch = 0;          // 1-based epoch of the kept parameters
  std::string best_checkpoint;         // "epoch-<best_epoch>"

  bool operator==(const TrainReport&) const = default;
};

// Original class labels in conventional order, then labels starting with
// "invalid" sorted.
std::vector<std::string> LabelSpaceFor(std::span<const Record> records);

struct TrainOptions {
  // Label space; LabelSpaceFor(train) when empty.
  std::vector<std::string> labels;
  // Word-vector text file ("token v1 v2 ..." per line) used to initialize
  // embedding rows for known tokens. Rows must have embed_dim values.
  std::optional<std::filesystem::path> word_vectors;
};

// Adam on mean cross-entropy with a deterministic per-epoch batch order.
// Stops once dev accuracy has not improved for `patience` epochs and returns
// the best-dev parameters. `config.vocab_size` and `config.n_classes` are
// filled in from the data. Throws kDivergence on a non-finite loss.
ToyModel Train(ModelConfig config, std::span<const Record> train, std::span<const Record> dev,
               TrainReport* report, const TrainOptions& options = {});

// Percent of records whose argmax label equals the gold class.
double Accuracy(const ToyModel& model, std::span<const Record> records);

// Argmax over classes, lowest index on ties; confidence is the softmax mass
// of the chosen class. Throws kVocabMismatch when the vocab and parameters
// disagree.
std::vector<Prediction> Predict(const ToyModel& model, std::span<const Record> records);

// Index of the largest value, lowest index on ties.
std::size_t ArgMax(std::span<const double> values);

struct GradCheckConfig {
  std::uint64_t seed = 0;
  std::size_t vocab_size = 20;
  std::size_t embed_dim = 8;
  std::size_t max_len = 6;
  std::size_t n_classes = 3;
  std::size_t batch_size = 4;
  double step = 1e-5;
  // Scale applied to every weight at init; small values put the model near
  // a uniform softmax.
  double init_scale = 1.0;
  // Labels set to the model's own argmax instead of random classes.
  bool labels_from_argmax = false;
  // Test hook: modifies the analytic gradient before comparison.
  std::function<void(ModelParams&)> corrupt_gradient;
};

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_tensor;
  std::size_t worst_index = 0;
  double loss = 0.0;
  double max_abs_gradient = 0.0;
};

// Compares the analytic gradient of every parameter with central finite
// differences. Relative error is |a - f| / max(|a| + |f|, 1e-6).
GradCheckResult GradCheck(const GradCheckConfig& config);

inline constexpr std::uint8_t kCheckpointVersion = 1;

// Layout: "WOTM", version byte, u32 little-endian header length, JSON header
// (config, vocab, labels, tensor shapes), then each tensor as little-endian
// IEEE-754 doubles in header order.
std::string SerializeCheckpoint(const ToyModel& model);
ToyModel ParseCheckpoint(std::string_view bytes);
void SaveCheckpoint(const ToyModel& model, const std::filesystem::path& path);
ToyModel LoadCheckpoint(const std::filesystem::path& path);

}  // namespace wordorder::toy

#endif  // WORDORDER_TOY_TRAINING_H_
