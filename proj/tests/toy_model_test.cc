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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "wordorder/error.h"
#include "wordorder/seed.h"
#include "wordorder/toy_training.h"

namespace wordorder::toy {
namespace {

using Strings = std::vector<std::string>;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

Record Pair(const std::string& a, const std::string& b) {
  Record r;
  r.id = "p";
  r.task = Task::kPairClassification;
  r.components = {{"part1", a}, {"part2", b}};
  r.gold = Label::Class("entailment");
  return r;
}

Record Single(const std::string& a) {
  Record r;
  r.id = "s";
  r.task = Task::kSingleSentence;
  r.components = {{"part1", a}};
  r.gold = Label::Class("acceptable");
  return r;
}

ModelConfig SmallConfig(std::size_t vocab, std::size_t classes) {
  ModelConfig c;
  c.vocab_size = vocab;
  c.embed_dim = 16;
  c.max_len = 16;
  c.n_classes = classes;
  c.seed = 3;
  return c;
}

std::vector<Sequence> RandomBatch(Rng& rng, std::size_t rows, std::size_t len,
                                  std::size_t vocab) {
  std::vector<Sequence> batch;
  for (std::size_t b = 0; b < rows; ++b) {
    const std::size_t used = 1 + UniformBelow(rng, len);
    Sequence s(len, kPadId);
    for (std::size_t i = 0; i < used; ++i) {
      s[i] = 1 + static_cast<int>(UniformBelow(rng, vocab - 1));
    }
    batch.push_back(s);
  }
  return batch;
}

TEST(VocabTest, SpecialsThenFrequency) {
  const std::vector<Record> records = {Single("b a b c ."), Single("c b")};
  const Vocab vocab = Vocab::Build(records);
  EXPECT_EQ(vocab.tokens(), (Strings{"<pad>", "<unk>", "<sep>", "b", "c", ".", "a"}));
  EXPECT_EQ(vocab.Id("b"), 3);
  EXPECT_EQ(vocab.Id("zzz"), kUnknownId);
}

TEST(ModelTokensTest, PunctuationIsAToken) {
  EXPECT_EQ(ModelTokens("hello world!"), (Strings{"hello", "world", "!"}));
  EXPECT_TRUE(ModelTokens("  ").empty());
}

TEST(EncodeTest, PairUsesSeparator) {
  const Vocab vocab = Vocab::FromTokens({"a", "b", "c"});
  EXPECT_EQ(Encode(Pair("a b", "c"), vocab, 64), (Sequence{3, 4, kSeparatorId, 5}));
}

TEST(EncodeTest, SingleEndsWithSeparator) {
  const Vocab vocab = Vocab::FromTokens({"a", "b"});
  EXPECT_EQ(Encode(Single("a b"), vocab, 64), (Sequence{3, 4, kSeparatorId}));
}

TEST(EncodeTest, UnknownWord) {
  const Vocab vocab = Vocab::FromTokens({"a"});
  EXPECT_EQ(Encode(Single("a zebra"), vocab, 64), (Sequence{3, kUnknownId, kSeparatorId}));
}

TEST(EncodeTest, TruncatesSecondComponentFirst) {
  const Vocab vocab = Vocab::FromTokens({"a", "b", "c", "d"});
  EXPECT_EQ(Encode(Pair("a b c", "d d d"), vocab, 5), (Sequence{3, 4, 5, kSeparatorId, 6}));
  EXPECT_EQ(Encode(Pair("a b c", "d d d"), vocab, 3), (Sequence{3, 4, kSeparatorId}));
}

TEST(EncodeTest, EmptyAfterTruncation) {
  const Vocab vocab = Vocab::FromTokens({"a"});
  EXPECT_EQ(Encode(Single("a a a"), vocab, 1), (Sequence{kSeparatorId}));
}

TEST(ForwardTest, LogitShape) {
  Rng rng(1);
  const ModelParams params = ModelParams::Init(SmallConfig(30, 4));
  const auto batch = RandomBatch(rng, 8, 16, 30);
  const std::vector<double> logits = Forward(params, batch);
  EXPECT_EQ(logits.size(), 8u * 4u);
  for (double z : logits) EXPECT_TRUE(std::isfinite(z));
}

TEST(ForwardTest, SeparatorOnlyRow) {
  const ModelParams params = ModelParams::Init(SmallConfig(10, 3));
  const Sequence row = {kSeparatorId, kPadId, kPadId, kPadId};
  const std::vector<double> weights = AttentionWeights(params, row);
  EXPECT_EQ(weights, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
  for (double z : Forward(params, std::vector<Sequence>{row})) EXPECT_TRUE(std::isfinite(z));
  const Sequence all_pad(4, kPadId);
  for (double z : Forward(params, std::vector<Sequence>{all_pad})) EXPECT_TRUE(std::isfinite(z));
}

TEST(ForwardTest, PositionFreeModelIgnoresOrder) {
  Rng rng(2);
  ModelParams params = ModelParams::Init(SmallConfig(25, 3));
  std::fill(params.pos_emb.begin(), params.pos_emb.end(), 0.0);
  for (int trial = 0; trial < 200; ++trial) {
    Sequence s = RandomBatch(rng, 1, 16, 25)[0];
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != kPadId) live.push_back(i);
    }
    Sequence shuffled = s;
    std::vector<int> values;
    for (std::size_t i : live) values.push_back(s[i]);
    Shuffle(std::span<int>(values), rng);
    for (std::size_t k = 0; k < live.size(); ++k) shuffled[live[k]] = values[k];
    // Also move a token into a padded slot.
    if (live.size() < s.size()) std::swap(shuffled[live.back()], shuffled[s.size() - 1]);
    EXPECT_EQ(Forward(params, std::vector<Sequence>{s}),
              Forward(params, std::vector<Sequence>{shuffled}));
  }
}

TEST(ForwardTest, PositionEmbeddingsMakeOrderMatter) {
  const ModelParams params = ModelParams::Init(SmallConfig(25, 3));
  const Sequence a = {5, 6, 7, kSeparatorId};
  const Sequence b = {7, 6, 5, kSeparatorId};
  EXPECT_NE(Forward(params, std::vector<Sequence>{a}), Forward(params, std::vector<Sequence>{b}));
}

TEST(ForwardTest, AttentionSumsToOne) {
  Rng rng(3);
  const ModelParams params = ModelParams::Init(SmallConfig(25, 3));
  for (const Sequence& s : RandomBatch(rng, 100, 16, 25)) {
    const std::vector<double> w = AttentionWeights(params, s);
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == kPadId) {
        EXPECT_EQ(w[i], 0.0);
      } else {
        total += w[i];
      }
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ForwardTest, ShapeErrors) {
  const ModelParams params = ModelParams::Init(SmallConfig(10, 2));
  EXPECT_EQ(CodeOf([&] { Forward(params, std::vector<Sequence>{{11}}); }), ErrorCode::kShapeError);
  EXPECT_EQ(CodeOf([&] { Forward(params, std::vector<Sequence>{Sequence(17, 3)}); }),
            ErrorCode::kShapeError);
  EXPECT_EQ(CodeOf([] { ModelParams::Init(SmallConfig(10, 1)); }), ErrorCode::kShapeError);
}

TEST(LossTest, InitialLossNearUniform) {
  Rng rng(4);
  for (std::size_t classes : {2u, 3u, 4u, 6u}) {
    const ModelParams params = ModelParams::Init(SmallConfig(40, classes));
    const auto batch = RandomBatch(rng, 32, 16, 40);
    std::vector<int> labels;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      labels.push_back(static_cast<int>(UniformBelow(rng, classes)));
    }
    EXPECT_LE(Loss(params, batch, labels, nullptr), std::log(static_cast<double>(classes)) + 0.1);
  }
}

TEST(GradCheckTest, AnalyticMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GradCheckConfig config;
    config.seed = seed;
    const GradCheckResult result = GradCheck(config);
    EXPECT_LT(result.max_relative_error, 1e-4)
        << "seed " << seed << " worst " << result.worst_tensor << "[" << result.worst_index << "]";
  }
}

TEST(GradCheckTest, LargerWeightsStillMatch) {
  GradCheckConfig config;
  config.seed = 11;
  config.init_scale = 10.0;
  EXPECT_LT(GradCheck(config).max_relative_error, 1e-4);
}

TEST(GradCheckTest, NearZeroLogitsAtArgmaxLabels) {
  GradCheckConfig config;
  config.seed = 2;
  config.labels_from_argmax = true;
  config.init_scale = 1e-3;
  const GradCheckResult result = GradCheck(config);
  EXPECT_LT(result.max_abs_gradient, 1.0);
  EXPECT_LT(result.max_relative_error, 1e-4);
}

TEST(GradCheckTest, CorruptedGradientIsCaught) {
  GradCheckConfig config;
  config.seed = 1;
  config.corrupt_gradient = [](ModelParams& grad) { grad.query[0] += 0.05; };
  EXPECT_GT(GradCheck(config).max_relative_error, 1e-2);
  config.corrupt_gradient = [](ModelParams& grad) {
    for (double& g : grad.out_w) g *= 1.1;
  };
  EXPECT_GT(GradCheck(config).max_relative_error, 1e-2);
}

}  // namespace
}  // namespace wordorder::toy
