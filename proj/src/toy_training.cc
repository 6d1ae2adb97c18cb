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

#include "wordorder/toy_training.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "wordorder/dataset_io.h"
#include "wordorder/error.h"
#include "wordorder/fi_augmenter.h"
#include "wordorder/seed.h"
#include "wordorder/unicode_text.h"

namespace wordorder::toy {

using nlohmann::ordered_json;

namespace {

constexpr std::string_view kMagic = "WOTM";

struct Encoded {
  std::vector<Sequence> sequences;
  std::vector<int> labels;
};

Encoded EncodeAll(std::span<const Record> records, const Vocab& vocab,
                  const std::vector<std::string>& labels, std::size_t max_len) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], static_cast<int>(i));
  Encoded out;
  for (const Record& r : records) {
    if (r.gold.kind() != Label::Kind::kClass) {
      throw Error(ErrorCode::kUnsupportedTask, "the toy model handles class labels only");
    }
    auto it = index.find(r.gold.class_name());
    if (it == index.end()) {
      throw Error(ErrorCode::kSchemaError,
                  "label '" + r.gold.class_name() + "' of record '" + r.id +
                      "' not in label space");
    }
    out.sequences.push_back(Encode(r, vocab, max_len));
    out.labels.push_back(it->second);
  }
  return out;
}

class Adam {
 public:
  Adam(const ModelConfig& config, const ModelParams& shape)
      : config_(config), first_(shape), second_(shape) {
    first_.SetZero();
    second_.SetZero();
  }

  void Step(ModelParams& params, ModelParams& grad) {
    ++steps_;
    const double correction1 = 1.0 - std::pow(config_.beta1, static_cast<double>(steps_));
    const double correction2 = 1.0 - std::pow(config_.beta2, static_cast<double>(steps_));
    auto values = params.Tensors();
    auto grads = grad.Tensors();
    auto m = first_.Tensors();
    auto v = second_.Tensors();
    for (std::size_t t = 0; t < values.size(); ++t) {
      for (std::size_t i = 0; i < values[t].size(); ++i) {
        const double g = grads[t][i];
        m[t][i] = config_.beta1 * m[t][i] + (1.0 - config_.beta1) * g;
        v[t][i] = config_.beta2 * v[t][i] + (1.0 - config_.beta2) * g * g;
        const double m_hat = m[t][i] / correction1;
        const double v_hat = v[t][i] / correction2;
        values[t][i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
      }
    }
  }

 private:
  ModelConfig config_;
  ModelParams first_;
  ModelParams second_;
  std::size_t steps_ = 0;
};

void LoadWordVectors(const std::filesystem::path& path, const Vocab& vocab,
                     ModelParams& params) {
  const std::string content = ReadFileToString(path);
  std::size_t start = 0;
  std::size_t line = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    const std::vector<std::string> fields =
        SplitOnWhitespace(std::string_view(content).substr(start, end - start));
    start = end + 1;
    ++line;
    if (fields.size() < 2) continue;
    const int id = vocab.Id(fields[0]);
    if (id == kUnknownId && fields[0] != "<unk>") continue;
    if (fields.size() - 1 != params.embed_dim) {
      throw ParseError(line, "vector has " + std::to_string(fields.size() - 1) +
                                 " values, expected " + std::to_string(params.embed_dim));
    }
    for (std::size_t d = 0; d < params.embed_dim; ++d) {
      try {
        params.word_emb[static_cast<std::size_t>(id) * params.embed_dim + d] =
            std::stod(fields[d + 1]);
      } catch (const std::exception&) {
        throw ParseError(line, "bad number '" + fields[d + 1] + "'");
      }
    }
  }
}

void PutU32(std::string& out, std::uint32_t value) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

std::uint32_t GetU32(std::string_view bytes, std::size_t offset) {
  std::uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    value |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  }
  return value;
}

ordered_json ConfigToJson(const ModelConfig& c) {
  return {{"vocab_size", c.vocab_size}, {"embed_dim", c.embed_dim},
          {"max_len", c.max_len},       {"n_classes", c.n_classes},
          {"seed", c.seed},             {"learning_rate", c.learning_rate},
          {"batch_size", c.batch_size}, {"max_epochs", c.max_epochs},
          {"patience", c.patience},     {"beta1", c.beta1},
          {"beta2", c.beta2},           {"epsilon", c.epsilon}};
}

ModelConfig ConfigFromJson(const ordered_json& j) {
  ModelConfig c;
  c.vocab_size = j.at("vocab_size").get<std::size_t>();
  c.embed_dim = j.at("embed_dim").get<std::size_t>();
  c.max_len = j.at("max_len").get<std::size_t>();
  c.n_classes = j.at("n_classes").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.max_epochs = j.at("max_epochs").get<std::size_t>();
  c.patience = j.at("patience").get<std::size_t>();
  c.beta1 = j.at("beta1").get<double>();
  c.beta2 = j.at("beta2").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  return c;
}

}  // namespace

std::vector<std::string> LabelSpaceFor(std::span<const Record> records) {
  std::vector<Record> originals;
  std::set<std::string> invalid;
  for (const Record& r : records) {
    if (r.gold.kind() != Label::Kind::kClass) continue;
    if (r.gold.class_name().rfind(kInvalidLabel, 0) == 0) {
      invalid.insert(r.gold.class_name());
    } else {
      originals.push_back(r);
    }
  }
  std::vector<std::string> labels = CollectClassLabels(originals);
  labels.insert(labels.end(), invalid.begin(), invalid.end());
  return labels;
}

std::size_t ArgMax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

ToyModel Train(ModelConfig config, std::span<const Record> train, std::span<const Record> dev,
               TrainReport* report, const TrainOptions& options) {
  if (train.empty() || dev.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "training needs non-empty train and dev sets");
  }
  if (config.batch_size == 0 || config.max_epochs == 0) {
    throw Error(ErrorCode::kInvalidArgument, "batch size and max epochs must be positive");
  }
  for (std::span<const Record> part : {train, dev}) {
    for (const Record& r : part) {
      if (r.gold.kind() != Label::Kind::kClass) {
        throw Error(ErrorCode::kUnsupportedTask, "the toy model handles class labels only");
      }
    }
  }
  ToyModel model;
  model.labels = options.labels.empty() ? LabelSpaceFor(train) : options.labels;
  model.vocab = Vocab::Build(train);
  config.vocab_size = model.vocab.size();
  config.n_classes = model.labels.size();
  model.config = config;
  model.params = ModelParams::Init(config);
  if (options.word_vectors) LoadWordVectors(*options.word_vectors, model.vocab, model.params);

  const Encoded train_data = EncodeAll(train, model.vocab, model.labels, config.max_len);
  const Encoded dev_data = EncodeAll(dev, model.vocab, model.labels, config.max_len);

  TrainReport local;
  TrainReport& out = report != nullptr ? *report : local;
  out = TrainReport{};
  Adam adam(config, model.params);
  ModelParams grad = model.params;
  ModelParams best = model.params;
  double best_accuracy = -1.0;
  std::size_t stale = 0;

  std::vector<std::size_t> order(train_data.sequences.size());
  std::vector<Sequence> batch;
  std::vector<int> batch_labels;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(DeriveSeed(config.seed, {"epoch", std::to_string(epoch)}));
    Shuffle(std::span<std::size_t>(order), rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      batch_labels.clear();
      for (std::size_t j = start; j < end; ++j) {
        batch.push_back(train_data.sequences[order[j]]);
        batch_labels.push_back(train_data.labels[order[j]]);
      }
      const double loss = Loss(model.params, batch, batch_labels, &grad);
      if (!std::isfinite(loss) || !grad.AllFinite()) {
        throw Error(ErrorCode::kDivergence, "non-finite loss in epoch " + std::to_string(epoch));
      }
      loss_sum += loss * static_cast<double>(end - start);
      adam.Step(model.params, grad);
    }
    out.epoch_loss.push_back(loss_sum / static_cast<double>(order.size()));

    std::size_t correct = 0;
    const std::vector<double> logits = Forward(model.params, dev_data.sequences);
    for (std::size_t i = 0; i < dev_data.sequences.size(); ++i) {
      const std::span<const double> row(&logits[i * config.n_classes], config.n_classes);
      if (static_cast<int>(ArgMax(row)) == dev_data.labels[i]) ++correct;
    }
    const double accuracy =
        100.0 * static_cast<double>(correct) / static_cast<double>(dev_data.sequences.size());
    out.dev_accuracy.push_back(accuracy);
    out.stopped_epoch = epoch;
    if (accuracy > best_accuracy) {
      best_accuracy = accuracy;
      best = model.params;
      out.best_epoch = epoch;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  out.best_checkpoint = "epoch-" + std::to_string(out.best_epoch);
  model.params = std::move(best);
  return model;
}

std::vector<Prediction> Predict(const ToyModel& model, std::span<const Record> records) {
  if (model.vocab.size() != model.params.vocab_size ||
      model.labels.size() != model.params.n_classes) {
    throw Error(ErrorCode::kVocabMismatch,
                "checkpoint vocab/labels (" + std::to_string(model.vocab.size()) + "/" +
                    std::to_string(model.labels.size()) + ") do not match parameters (" +
                    std::to_string(model.params.vocab_size) + "/" +
                    std::to_string(model.params.n_classes) + ")");
  }
  std::vector<Prediction> out;
  out.reserve(records.size());
  for (const Record& r : records) {
    const std::vector<Sequence> one = {Encode(r, model.vocab, model.params.max_len)};
    const std::vector<double> logits = Forward(model.params, one);
    const std::size_t best = ArgMax(logits);
    double norm = 0.0;
    for (double z : logits) norm += std::exp(z - logits[best]);
    out.push_back({r.id, Label::Class(model.labels[best]), std::clamp(1.0 / norm, 0.0, 1.0)});
  }
  return out;
}

double Accuracy(const ToyModel& model, std::span<const Record> records) {
  if (records.empty()) return 0.0;
  const std::vector<Prediction> predictions = Predict(model, records);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (predictions[i].predicted == records[i].gold) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(records.size());
}

GradCheckResult GradCheck(const GradCheckConfig& config) {
  ModelConfig mc;
  mc.vocab_size = config.vocab_size;
  mc.embed_dim = config.embed_dim;
  mc.max_len = config.max_len;
  mc.n_classes = config.n_classes;
  mc.seed = config.seed;
  ModelParams params = ModelParams::Init(mc);
  for (std::span<double> t : params.Tensors()) {
    for (double& v : t) v *= config.init_scale;
  }

  Rng rng(DeriveSeed(config.seed, {"grad-check-data"}));
  std::vector<Sequence> batch;
  for (std::size_t b = 0; b < config.batch_size; ++b) {
    const std::size_t length = 1 + UniformBelow(rng, config.max_len);
    Sequence s(config.max_len, kPadId);
    for (std::size_t i = 0; i < length; ++i) {
      s[i] = 1 + static_cast<int>(UniformBelow(rng, config.vocab_size - 1));
    }
    batch.push_back(std::move(s));
  }
  std::vector<int> labels;
  if (config.labels_from_argmax) {
    const std::vector<double> logits = Forward(params, batch);
    for (std::size_t b = 0; b < batch.size(); ++b) {
      labels.push_back(static_cast<int>(
          ArgMax(std::span<const double>(&logits[b * config.n_classes], config.n_classes))));
    }
  } else {
    for (std::size_t b = 0; b < batch.size(); ++b) {
      labels.push_back(static_cast<int>(UniformBelow(rng, config.n_classes)));
    }
  }

  GradCheckResult result;
  ModelParams grad = params;
  result.loss = Loss(params, batch, labels, &grad);
  if (config.corrupt_gradient) config.corrupt_gradient(grad);

  auto values = params.Tensors();
  auto grads = grad.Tensors();
  for (std::size_t t = 0; t < values.size(); ++t) {
    for (std::size_t i = 0; i < values[t].size(); ++i) {
      const double saved = values[t][i];
      values[t][i] = saved + config.step;
      const double up = Loss(params, batch, labels, nullptr);
      values[t][i] = saved - config.step;
      const double down = Loss(params, batch, labels, nullptr);
      values[t][i] = saved;
      const double numeric = (up - down) / (2.0 * config.step);
      const double analytic = grads[t][i];
      const double error =
          std::fabs(analytic - numeric) / std::max(std::fabs(analytic) + std::fabs(numeric), 1e-6);
      result.max_abs_gradient = std::max(result.max_abs_gradient, std::fabs(analytic));
      if (error > result.max_relative_error) {
        result.max_relative_error = error;
        result.worst_tensor = ModelParams::TensorNames()[t];
        result.worst_index = i;
      }
    }
  }
  return result;
}

std::string SerializeCheckpoint(const ToyModel& model) {
  ordered_json header;
  header["config"] = ConfigToJson(model.config);
  header["vocab"] = model.vocab.tokens();
  header["labels"] = model.labels;
  const ModelParams& p = model.params;
  header["tensors"] = ordered_json::array({
      {{"name", "word_emb"}, {"shape", {p.vocab_size, p.embed_dim}}},
      {{"name", "pos_emb"}, {"shape", {p.max_len, p.embed_dim}}},
      {{"name", "query"}, {"shape", {p.embed_dim}}},
      {{"name", "out_w"}, {"shape", {p.embed_dim, p.n_classes}}},
      {{"name", "out_b"}, {"shape", {p.n_classes}}},
  });
  const std::string header_text = header.dump();
  std::string out(kMagic);
  out.push_back(static_cast<char>(kCheckpointVersion));
  PutU32(out, static_cast<std::uint32_t>(header_text.size()));
  out += header_text;
  for (std::span<const double> tensor : p.Tensors()) {
    for (double v : tensor) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
    }
  }
  return out;
}

ToyModel ParseCheckpoint(std::string_view bytes) {
  if (bytes.size() < kMagic.size() + 5 || bytes.substr(0, kMagic.size()) != kMagic) {
    throw Error(ErrorCode::kSchemaError, "not a toy model checkpoint");
  }
  const auto version = static_cast<std::uint8_t>(bytes[kMagic.size()]);
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::kSchemaError,
                "unsupported checkpoint version " + std::to_string(version));
  }
  const std::size_t header_length = GetU32(bytes, kMagic.size() + 1);
  std::size_t offset = kMagic.size() + 5;
  if (bytes.size() < offset + header_length) {
    throw Error(ErrorCode::kSchemaError, "truncated checkpoint header");
  }
  ToyModel model;
  try {
    const ordered_json header = ordered_json::parse(bytes.substr(offset, header_length));
    model.config = ConfigFromJson(header.at("config"));
    model.vocab = Vocab::FromTokens(header.at("vocab").get<std::vector<std::string>>());
    model.labels = header.at("labels").get<std::vector<std::string>>();
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::kSchemaError, std::string("bad checkpoint header: ") + e.what());
  }
  offset += header_length;
  model.params = ModelParams::Zeros(model.config);
  for (std::span<double> tensor : model.params.Tensors()) {
    if (bytes.size() < offset + 8 * tensor.size()) {
      throw Error(ErrorCode::kSchemaError, "truncated checkpoint tensors");
    }
    for (double& v : tensor) {
      std::uint64_t bits = 0;
      for (int i = 0; i < 8; ++i) {
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset++])) << (8 * i);
      }
      v = std::bit_cast<double>(bits);
    }
  }
  if (offset != bytes.size()) throw Error(ErrorCode::kSchemaError, "trailing checkpoint bytes");
  return model;
}

void SaveCheckpoint(const ToyModel& model, const std::filesystem::path& path) {
  WriteStringToFile(path, SerializeCheckpoint(model));
}

ToyModel LoadCheckpoint(const std::filesystem::path& path) {
  return ParseCheckpoint(ReadFileToString(path));
}

}  // namespace wordorder::toy
