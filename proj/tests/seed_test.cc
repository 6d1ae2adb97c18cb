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

#include "wordorder/seed.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

namespace wordorder {
namespace {

TEST(RngTest, StandardSequence) {
  // The C++ standard fixes the 10000th output of a default-seeded mt19937_64.
  Rng rng;
  for (int i = 0; i < 9999; ++i) rng();
  EXPECT_EQ(rng(), 9981545732273789042ULL);
}

TEST(Mix64Test, MatchesSplitMix64) {
  // First output of SplitMix64 from state 0.
  EXPECT_EQ(Mix64(0), 0xe220a8397b1dcdafULL);
}

TEST(DeriveSeedTest, DeterministicAndSensitive) {
  EXPECT_EQ(DeriveSeed(1, {"a", "b"}), DeriveSeed(1, {"a", "b"}));
  EXPECT_NE(DeriveSeed(1, {"a", "b"}), DeriveSeed(2, {"a", "b"}));
  EXPECT_NE(DeriveSeed(1, {"a", "b"}), DeriveSeed(1, {"b", "a"}));
  // Part boundaries matter.
  EXPECT_NE(DeriveSeed(1, {"ab", "c"}), DeriveSeed(1, {"a", "bc"}));
  EXPECT_NE(DeriveSeed(1, {"a"}), DeriveSeed(1, {"a", ""}));
}

TEST(UniformBelowTest, RangeAndBalance) {
  Rng rng(42);
  std::array<int, 6> counts{};
  constexpr int kDraws = 60000;
  for (int i = 0; i < kDraws; ++i) {
    const auto v = UniformBelow(rng, 6);
    ASSERT_LT(v, 6u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, kDraws / 6, 500);
  EXPECT_EQ(UniformBelow(rng, 1), 0u);
}

TEST(UniformUnitTest, HalfOpenInterval) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = UniformUnit(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(ShuffleTest, PermutationAndDeterminism) {
  std::vector<int> a(50);
  std::iota(a.begin(), a.end(), 0);
  std::vector<int> b = a;
  Rng r1(9);
  Rng r2(9);
  Shuffle(std::span<int>(a), r1);
  Shuffle(std::span<int>(b), r2);
  EXPECT_EQ(a, b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(ShuffleTest, AllOrdersOfThreeReachable) {
  std::set<std::vector<int>> seen;
  Rng rng(5);
  for (int i = 0; i < 600; ++i) {
    std::vector<int> v = {0, 1, 2};
    Shuffle(std::span<int>(v), rng);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 6u);
}

}  // namespace
}  // namespace wordorder
