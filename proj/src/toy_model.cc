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

#include "wordorder/toy_model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "wordorder/error.h"
#include "wordorder/ngram_permuter.h"
#include "wordorder/seed.h"
#include "wordorder/unicode_text.h"

namespace wordorder::toy {
namespace {

// Non-padding positions, ordered by token id and then position. Summing in
// this order makes the result independent of where equal-valued terms sit in
// the sequence when pos_emb is zero.
std::vector<std::size_t> PoolingOrder(const Sequence& sequence) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (sequence[i] != kPadId) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sequence[a] != sequence[b] ? sequence[a] < sequence[b] : a < b;
  });
  return order;
}

struct SequenceState {
  std::vector<std::size_t> positions;  // pooling order
  std::vector<double> hidden;          // positions.size() x embed_dim
  std::vector<double> attention;       // positions.size()
  std::vector<double> pooled;          // embed_dim
  std::vector<double> logits;          // n_classes
};

void CheckShapes(const ModelParams& params, const Sequence& sequence) {
  if (sequence.size() > params.max_len) {
    throw Error(ErrorCode::kShapeError, "sequence of length " + std::to_string(sequence.size()) +
                                            " exceeds max_len " + std::to_string(params.max_len));
  }
  for (int id : sequence) {
    if (id < 0 || static_cast<std::size_t>(id) >= params.vocab_size) {
      throw Error(ErrorCode::kShapeError, "token id " + std::to_string(id) +
                                              " outside vocab of " +
                                              std::to_string(params.vocab_size));
    }
  }
}

SequenceState RunSequence(const ModelParams& params, const Sequence& sequence) {
  CheckShapes(params, sequence);
  const std::size_t dim = params.embed_dim;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(dim));
  SequenceState s;
  s.positions = PoolingOrder(sequence);
  const std::size_t count = s.positions.size();
  s.hidden.resize(count * dim);
  s.attention.resize(count);
  s.pooled.assign(dim, 0.0);
  s.logits.assign(params.out_b.begin(), params.out_b.end());

  if (count > 0) {
    std::vector<double> scores(count);
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t pos = s.positions[k];
      const double* word = &params.word_emb[static_cast<std::size_t>(sequence[pos]) * dim];
      const double* where = &params.pos_emb[pos * dim];
      double* h = &s.hidden[k * dim];
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        h[d] = word[d] + where[d];
        dot += params.query[d] * h[d];
      }
      scores[k] = dot * inv_sqrt_d;
    }
    const double top = *std::max_element(scores.begin(), scores.end());
    double total = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      s.attention[k] = std::exp(scores[k] - top);
      total += s.attention[k];
    }
    for (std::size_t k = 0; k < count; ++k) {
      s.attention[k] /= total;
      const double* h = &s.hidden[k * dim];
      for (std::size_t d = 0; d < dim; ++d) s.pooled[d] += s.attention[k] * h[d];
    }
  }
  for (std::size_t d = 0; d < dim; ++d) {
    const double* w = &params.out_w[d * params.n_classes];
    for (std::size_t c = 0; c < params.n_classes; ++c) s.logits[c] += s.pooled[d] * w[c];
  }
  return s;
}

}  // namespace

Vocab::Vocab() {
  for (const char* special : {"<pad>", "<unk>", "<sep>"}) {
    ids_.emplace(special, static_cast<int>(tokens_.size()));
    tokens_.emplace_back(special);
  }
}

Vocab Vocab::Build(std::span<const Record> records) {
  std::map<std::string, std::size_t> counts;
  for (const Record& r : records) {
    for (const Component& c : r.components) {
      for (std::string& token : ModelTokens(c.text)) ++counts[std::move(token)];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> sorted(counts.begin(), counts.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens;
  tokens.reserve(sorted.size());
  for (auto& [token, count] : sorted) tokens.push_back(std::move(token));
  return FromTokens(std::move(tokens));
}

Vocab Vocab::FromTokens(std::vector<std::string> tokens) {
  Vocab vocab;
  for (std::string& token : tokens) {
    if (vocab.ids_.count(token)) continue;
    vocab.ids_.emplace(token, static_cast<int>(vocab.tokens_.size()));
    vocab.tokens_.push_back(std::move(token));
  }
  return vocab;
}

int Vocab::Id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnknownId : it->second;
}

std::vector<std::string> ModelTokens(std::string_view text) {
  if (TrimWhitespace(text).empty()) return {};
  TokenSequence seq = Tokenize(text);
  if (seq.trailing_punct) seq.tokens.push_back(*seq.trailing_punct);
  return std::move(seq.tokens);
}

std::vector<int> Encode(const Record& record, const Vocab& vocab, std::size_t max_len) {
  std::vector<std::vector<int>> parts;
  for (const Component& c : record.components) {
    std::vector<int> ids;
    for (const std::string& token : ModelTokens(c.text)) ids.push_back(vocab.Id(token));
    parts.push_back(std::move(ids));
  }
  const std::size_t separators = parts.size() <= 1 ? 1 : parts.size() - 1;
  std::size_t budget = max_len > separators ? max_len - separators : 0;
  std::size_t used = 0;
  for (const auto& p : parts) used += p.size();
  for (std::size_t i = parts.size(); i-- > 0 && used > budget;) {
    const std::size_t cut = std::min(parts[i].size(), used - budget);
    parts[i].resize(parts[i].size() - cut);
    used -= cut;
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.push_back(kSeparatorId);
    out.insert(out.end(), parts[i].begin(), parts[i].end());
  }
  if (parts.size() <= 1) out.push_back(kSeparatorId);
  if (out.size() > max_len) out.resize(max_len);
  return out;
}

ModelParams ModelParams::Zeros(const ModelConfig& config) {
  ModelParams p;
  p.vocab_size = config.vocab_size;
  p.embed_dim = config.embed_dim;
  p.max_len = config.max_len;
  p.n_classes = config.n_classes;
  p.word_emb.assign(config.vocab_size * config.embed_dim, 0.0);
  p.pos_emb.assign(config.max_len * config.embed_dim, 0.0);
  p.query.assign(config.embed_dim, 0.0);
  p.out_w.assign(config.embed_dim * config.n_classes, 0.0);
  p.out_b.assign(config.n_classes, 0.0);
  return p;
}

ModelParams ModelParams::Init(const ModelConfig& config) {
  if (config.n_classes < 2) throw Error(ErrorCode::kShapeError, "n_classes must be >= 2");
  if (config.embed_dim == 0 || config.max_len == 0 || config.vocab_size == 0) {
    throw Error(ErrorCode::kShapeError, "model dimensions must be positive");
  }
  ModelParams p = Zeros(config);
  Rng rng(DeriveSeed(config.seed, {"toy-init"}));
  auto fill = [&rng](std::vector<double>& values, double scale) {
    for (double& v : values) v = scale * (2.0 * UniformUnit(rng) - 1.0);
  };
  fill(p.word_emb, 0.1);
  fill(p.pos_emb, 0.1);
  fill(p.query, 0.1);
  fill(p.out_w, 0.01);
  return p;
}

std::array<std::span<double>, 5> ModelParams::Tensors() {
  return {word_emb, pos_emb, query, out_w, out_b};
}

std::array<std::span<const double>, 5> ModelParams::Tensors() const {
  return {word_emb, pos_emb, query, out_w, out_b};
}

const std::array<const char*, 5>& ModelParams::TensorNames() {
  static const std::array<const char*, 5> kNames = {"word_emb", "pos_emb", "query", "out_w",
                                                    "out_b"};
  return kNames;
}

void ModelParams::SetZero() {
  for (std::span<double> t : Tensors()) std::fill(t.begin(), t.end(), 0.0);
}

bool ModelParams::AllFinite() const {
  for (std::span<const double> t : Tensors()) {
    for (double v : t) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

std::vector<double> Forward(const ModelParams& params, std::span<const Sequence> batch) {
  std::vector<double> logits;
  logits.reserve(batch.size() * params.n_classes);
  for (const Sequence& sequence : batch) {
    const SequenceState s = RunSequence(params, sequence);
    logits.insert(logits.end(), s.logits.begin(), s.logits.end());
  }
  return logits;
}

std::vector<double> AttentionWeights(const ModelParams& params, const Sequence& sequence) {
  const SequenceState s = RunSequence(params, sequence);
  std::vector<double> weights(sequence.size(), 0.0);
  for (std::size_t k = 0; k < s.positions.size(); ++k) weights[s.positions[k]] = s.attention[k];
  return weights;
}

double Loss(const ModelParams& params, std::span<const Sequence> batch,
            std::span<const int> labels, ModelParams* grad) {
  if (batch.size() != labels.size() || batch.empty()) {
    throw Error(ErrorCode::kShapeError, "batch and labels must be non-empty and equal in size");
  }
  const std::size_t dim = params.embed_dim;
  const std::size_t classes = params.n_classes;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(dim));
  const double scale = 1.0 / static_cast<double>(batch.size());
  if (grad != nullptr) {
    if (grad->word_emb.size() != params.word_emb.size() ||
        grad->pos_emb.size() != params.pos_emb.size() ||
        grad->out_w.size() != params.out_w.size()) {
      *grad = params;
    }
    grad->SetZero();
  }

  double total = 0.0;
  std::vector<double> dlogits(classes);
  std::vector<double> dpooled(dim);
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const int label = labels[b];
    if (label < 0 || static_cast<std::size_t>(label) >= classes) {
      throw Error(ErrorCode::kShapeError, "label " + std::to_string(label) + " out of range");
    }
    const SequenceState s = RunSequence(params, batch[b]);
    const double top = *std::max_element(s.logits.begin(), s.logits.end());
    double norm = 0.0;
    for (double z : s.logits) norm += std::exp(z - top);
    const double log_norm = top + std::log(norm);
    total += log_norm - s.logits[static_cast<std::size_t>(label)];
    if (grad == nullptr) continue;

    for (std::size_t c = 0; c < classes; ++c) {
      const double prob = std::exp(s.logits[c] - log_norm);
      dlogits[c] = (prob - (static_cast<std::size_t>(label) == c ? 1.0 : 0.0)) * scale;
      grad->out_b[c] += dlogits[c];
    }
    for (std::size_t d = 0; d < dim; ++d) {
      const double* w = &params.out_w[d * classes];
      double* dw = &grad->out_w[d * classes];
      double acc = 0.0;
      for (std::size_t c = 0; c < classes; ++c) {
        dw[c] += s.pooled[d] * dlogits[c];
        acc += w[c] * dlogits[c];
      }
      dpooled[d] = acc;
    }
    const std::size_t count = s.positions.size();
    std::vector<double> dscore(count);
    double weighted = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      const double* h = &s.hidden[k * dim];
      double da = 0.0;
      for (std::size_t d = 0; d < dim; ++d) da += dpooled[d] * h[d];
      dscore[k] = da;
      weighted += s.attention[k] * da;
    }
    for (std::size_t k = 0; k < count; ++k) {
      const double ds = s.attention[k] * (dscore[k] - weighted) * inv_sqrt_d;
      const std::size_t pos = s.positions[k];
      const double* h = &s.hidden[k * dim];
      double* dword = &grad->word_emb[static_cast<std::size_t>(batch[b][pos]) * dim];
      double* dwhere = &grad->pos_emb[pos * dim];
      for (std::size_t d = 0; d < dim; ++d) {
        const double dh = s.attention[k] * dpooled[d] + ds * params.query[d];
        dword[d] += dh;
        dwhere[d] += dh;
        grad->query[d] += ds * h[d];
      }
    }
  }
  return total * scale;
}

}  // namespace wordorder::toy
