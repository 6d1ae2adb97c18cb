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

#ifndef WORDORDER_TOY_MODEL_H_
#define WORDORDER_TOY_MODEL_H_

// A small order-aware classifier: word plus position embeddings, one learned
// attention query pooling the sequence, and a linear head over K+1 classes.
//
//   h_i    = word_emb[id_i] + pos_emb[i]
//   a      = softmax_i(query . h_i / sqrt(embed_dim))   (padding masked)
//   pooled = sum_i a_i h_i
//   logits = pooled W + b
//
// Word order reaches the model only through pos_emb.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wordorder/record.h"

namespace wordorder::toy {

inline constexpr int kPadId = 0;
inline constexpr int kUnknownId = 1;
inline constexpr int kSeparatorId = 2;

class Vocab {
 public:
  Vocab();

  // Tokens of all components of `records`, most frequent first, ties broken
  // lexicographically.
  static Vocab Build(std::span<const Record> records);
  static Vocab FromTokens(std::vector<std::string> tokens);

  int Id(std::string_view token) const;
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

// Whitespace tokens of a component, with detached final punctuation as its
// own token.
std::vector<std::string> ModelTokens(std::string_view text);

// Component ids joined by the separator id (a single-component record ends
// with one). Over-long input loses tail tokens of the last component first.
std::vector<int> Encode(const Record& record, const Vocab& vocab, std::size_t max_len);

struct ModelConfig {
  std::size_t vocab_size = 0;
  std::size_t embed_dim = 64;
  std::size_t max_len = 64;
  std::size_t n_classes = 2;
  std::uint64_t seed = 0;
  double learning_rate = 1e-3;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 20;
  std::size_t patience = 3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct ModelParams {
  std::size_t vocab_size = 0;
  std::size_t embed_dim = 0;
  std::size_t max_len = 0;
  std::size_t n_classes = 0;

  std::vector<double> word_emb;  // vocab_size x embed_dim
  std::vector<double> pos_emb;   // max_len x embed_dim
  std::vector<double> query;     // embed_dim
  std::vector<double> out_w;     // embed_dim x n_classes
  std::vector<double> out_b;     // n_classes

  // Zero-filled tensors of the configured shapes.
  static ModelParams Zeros(const ModelConfig& config);
  // Embeddings and query uniform in +-0.1, output weights in +-0.01, zero
  // bias; drawn from the config seed.
  static ModelParams Init(const ModelConfig& config);

  std::array<std::span<double>, 5> Tensors();
  std::array<std::span<const double>, 5> Tensors() const;
  static const std::array<const char*, 5>& TensorNames();

  void SetZero();
  bool AllFinite() const;

  bool operator==(const ModelParams&) const = default;
};

using Sequence = std::vector<int>;

// Row-major batch x n_classes. Throws kShapeError on ids outside the vocab
// or sequences longer than max_len.
std::vector<double> Forward(const ModelParams& params, std::span<const Sequence> batch);

// Attention weights of one sequence; padding positions get 0.
std::vector<double> AttentionWeights(const ModelParams& params, const Sequence& sequence);

// Mean cross-entropy over the batch. When `grad` is non-null its tensors
// receive the gradient of that mean (overwritten, not accumulated).
double Loss(const ModelParams& params, std::span<const Sequence> batch,
            std::span<const int> labels, ModelParams* grad);

}  // namespace wordorder::toy

#endif  // WORDORDER_TOY_MODEL_H_
