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

#ifndef WORDORDER_NGRAM_PERMUTER_H_
#define WORDORDER_NGRAM_PERMUTER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordorder {

// Whitespace tokens of a text plus the detached final punctuation.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::optional<std::string> trailing_punct;
  // True when the punctuation was its own whitespace-separated token
  // ("a b ."), false when it was cut off the last word ("a b.").
  bool punct_is_token = false;

  // Rebuilds the whitespace-normalized text.
  std::string Join() const;

  bool operator==(const TokenSequence&) const = default;
};

using Chunk = std::vector<std::string>;

struct Chunking {
  int n = 1;
  std::vector<Chunk> chunks;
};

enum class PermutationMode {
  kDiffers,      // output string must differ from the input
  kDerangement,  // additionally, no slot keeps its original chunk content
};

const char* PermutationModeName(PermutationMode mode);
PermutationMode ParsePermutationMode(std::string_view name);

struct PerturbationSpec {
  int n = 1;
  PermutationMode mode = PermutationMode::kDiffers;
  std::uint64_t seed = 0;
};

// Throws kEmptyInput when the text is empty or whitespace only. A final
// all-punctuation token is detached whole; otherwise the last code point of
// the last token is detached if it is punctuation. Nothing is detached when
// that would leave no tokens.
TokenSequence Tokenize(std::string_view text);

// Greedy left-to-right grouping; the leftover (< n tokens) forms a shorter
// final chunk. Throws kInvalidArgument for n < 1 or empty tokens.
Chunking Segment(std::span<const std::string> tokens, int n);

bool IsPermutable(std::span<const std::string> tokens, int n,
                  PermutationMode mode);

// True if placing chunks in `order` (output slot i receives chunk order[i])
// satisfies `mode` relative to the original chunk sequence.
bool SatisfiesMode(const Chunking& chunking, std::span<const std::size_t> order,
                   PermutationMode mode);

// Seeded chunk order satisfying spec.mode: up to kMaxRedraws Fisher-Yates
// draws, then a seeded pick among the enumerated valid orderings.
std::vector<std::size_t> DrawChunkOrder(const Chunking& chunking,
                                        PermutationMode mode,
                                        std::uint64_t seed);

// Permutes the n-gram chunks of `text` and re-appends the final punctuation.
// Throws kNotPermutable when IsPermutable fails and kResampleBudgetExceeded
// when the fallback enumeration is too large to run.
std::string Permute(std::string_view text, const PerturbationSpec& spec);

// Number of whitespace words after final-punctuation detachment; 0 for
// blank text.
std::size_t CountWords(std::string_view text);

inline constexpr int kMaxRedraws = 64;
inline constexpr std::size_t kMaxEnumeratedOrderings = 2'000'000;

}  // namespace wordorder

#endif  // WORDORDER_NGRAM_PERMUTER_H_
