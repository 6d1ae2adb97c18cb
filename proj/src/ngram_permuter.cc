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

#include "wordorder/ngram_permuter.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "wordorder/error.h"
#include "wordorder/seed.h"
#include "wordorder/unicode_text.h"

namespace wordorder {
namespace {

// Dense ids for chunk contents, ordered by content so that sorting ids gives
// the lexicographically first arrangement.
std::vector<int> ContentIds(const Chunking& chunking) {
  std::map<Chunk, int> ids;
  for (const Chunk& chunk : chunking.chunks) ids.emplace(chunk, 0);
  int next = 0;
  for (auto& [chunk, id] : ids) id = next++;
  std::vector<int> out;
  out.reserve(chunking.chunks.size());
  for (const Chunk& chunk : chunking.chunks) out.push_back(ids.at(chunk));
  return out;
}

bool Commute(const Chunk& a, const Chunk& b) {
  Chunk ab(a);
  ab.insert(ab.end(), b.begin(), b.end());
  Chunk ba(b);
  ba.insert(ba.end(), a.begin(), a.end());
  return ab == ba;
}

// Nonempty words commute iff they share a primitive root, and commuting is
// transitive on nonempty words, so checking neighbours is enough.
bool AnyOrderingChangesText(const Chunking& chunking) {
  for (std::size_t i = 0; i + 1 < chunking.chunks.size(); ++i) {
    if (!Commute(chunking.chunks[i], chunking.chunks[i + 1])) return true;
  }
  return false;
}

bool TokensDiffer(const Chunking& chunking,
                  std::span<const std::size_t> order) {
  std::size_t slot = 0;
  std::size_t offset = 0;
  for (std::size_t idx : order) {
    for (const std::string& token : chunking.chunks[idx]) {
      if (token != chunking.chunks[slot][offset]) return true;
      if (++offset == chunking.chunks[slot].size()) {
        ++slot;
        offset = 0;
      }
    }
  }
  return false;
}

// Multinomial coefficient of the content multiplicities, saturating at cap.
std::size_t DistinctArrangements(std::span<const int> ids, std::size_t cap) {
  std::map<int, std::size_t> counts;
  for (int id : ids) ++counts[id];
  // Build k!/prod(m_i!) incrementally as a product of binomials.
  double total = 1.0;
  std::size_t placed = 0;
  for (const auto& [id, m] : counts) {
    for (std::size_t j = 1; j <= m; ++j) {
      total = total * static_cast<double>(placed + j) / static_cast<double>(j);
    }
    placed += m;
    if (total > static_cast<double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(total + 0.5);
}

// Calls visit(order) for every distinct valid arrangement in lexicographic
// id order until it returns false. Equal-content chunks are taken in their
// original order. Returns false if the visit budget ran out.
template <typename Visit>
bool ForEachValidOrdering(const Chunking& chunking, PermutationMode mode,
                          Visit visit) {
  const std::vector<int> ids = ContentIds(chunking);
  const std::size_t kinds =
      ids.empty() ? 0 : static_cast<std::size_t>(*std::max_element(ids.begin(), ids.end())) + 1;
  std::vector<std::vector<std::size_t>> pools(kinds);
  for (std::size_t i = 0; i < ids.size(); ++i) pools[ids[i]].push_back(i);
  std::vector<int> arrangement(ids);
  std::sort(arrangement.begin(), arrangement.end());
  std::vector<std::size_t> order(ids.size());
  std::vector<std::size_t> taken(kinds);
  std::size_t visited = 0;
  do {
    if (++visited > kMaxEnumeratedOrderings) return false;
    if (arrangement == ids) continue;
    if (mode == PermutationMode::kDerangement) {
      bool moved = true;
      for (std::size_t slot = 0; slot < ids.size() && moved; ++slot) {
        moved = arrangement[slot] != ids[slot];
      }
      if (!moved) continue;
    }
    std::fill(taken.begin(), taken.end(), 0);
    for (std::size_t slot = 0; slot < arrangement.size(); ++slot) {
      const auto id = static_cast<std::size_t>(arrangement[slot]);
      order[slot] = pools[id][taken[id]++];
    }
    if (TokensDiffer(chunking, order) && !visit(std::span<const std::size_t>(order))) return true;
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return true;
}

}  // namespace

std::string TokenSequence::Join() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  if (trailing_punct) {
    if (punct_is_token) out.push_back(' ');
    out += *trailing_punct;
  }
  return out;
}

const char* PermutationModeName(PermutationMode mode) {
  return mode == PermutationMode::kDiffers ? "differs" : "derangement";
}

PermutationMode ParsePermutationMode(std::string_view name) {
  if (name == "differs") return PermutationMode::kDiffers;
  if (name == "derangement") return PermutationMode::kDerangement;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown permutation mode '" + std::string(name) + "'");
}

TokenSequence Tokenize(std::string_view text) {
  TokenSequence seq;
  seq.tokens = SplitOnWhitespace(text);
  if (seq.tokens.empty()) {
    throw Error(ErrorCode::kEmptyInput, "text is empty or whitespace only");
  }
  std::string& last = seq.tokens.back();
  if (IsAllPunctuation(last)) {
    if (seq.tokens.size() > 1) {
      seq.trailing_punct = std::move(last);
      seq.punct_is_token = true;
      seq.tokens.pop_back();
    }
    return seq;
  }
  const std::size_t cut = LastCodePointOffset(last);
  if (cut > 0 && IsPunctuation(FirstCodePoint(std::string_view(last).substr(cut)))) {
    seq.trailing_punct = last.substr(cut);
    last.resize(cut);
  }
  return seq;
}

Chunking Segment(std::span<const std::string> tokens, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (tokens.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot segment an empty token list");
  }
  Chunking chunking;
  chunking.n = n;
  const auto step = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < tokens.size(); i += step) {
    const std::size_t end = std::min(tokens.size(), i + step);
    chunking.chunks.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                 tokens.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return chunking;
}

bool SatisfiesMode(const Chunking& chunking, std::span<const std::size_t> order,
                   PermutationMode mode) {
  if (!TokensDiffer(chunking, order)) return false;
  if (mode == PermutationMode::kDerangement) {
    for (std::size_t slot = 0; slot < order.size(); ++slot) {
      if (chunking.chunks[order[slot]] == chunking.chunks[slot]) return false;
    }
  }
  return true;
}

bool IsPermutable(std::span<const std::string> tokens, int n,
                  PermutationMode mode) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (tokens.empty()) return false;
  const Chunking chunking = Segment(tokens, n);
  const std::size_t k = chunking.chunks.size();
  if (k < 2 || !AnyOrderingChangesText(chunking)) return false;
  if (mode == PermutationMode::kDiffers) return true;

  // A rearrangement of a multiset with no value kept in place exists iff no
  // value fills more than half of the slots.
  const std::vector<int> ids = ContentIds(chunking);
  std::map<int, std::size_t> counts;
  for (int id : ids) ++counts[id];
  for (const auto& [id, m] : counts) {
    if (2 * m > k) return false;
  }
  // Small cases are settled exactly, since the string must differ as well.
  constexpr std::size_t kExactCheckLimit = 50'000;
  if (DistinctArrangements(ids, kExactCheckLimit) <= kExactCheckLimit) {
    bool found = false;
    ForEachValidOrdering(chunking, mode, [&](std::span<const std::size_t>) {
      found = true;
      return false;
    });
    return found;
  }
  return true;
}

std::vector<std::size_t> DrawChunkOrder(const Chunking& chunking,
                                        PermutationMode mode,
                                        std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> order(chunking.chunks.size());
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Shuffle(std::span<std::size_t>(order), rng);
    if (SatisfiesMode(chunking, order, mode)) return order;
  }

  std::size_t valid = 0;
  const bool complete = ForEachValidOrdering(
      chunking, mode, [&](std::span<const std::size_t>) {
        ++valid;
        return true;
      });
  if (!complete) {
    throw Error(ErrorCode::kResampleBudgetExceeded,
                "no valid ordering after " + std::to_string(kMaxRedraws) +
                    " draws and too many orderings to enumerate");
  }
  if (valid == 0) {
    throw Error(ErrorCode::kNotPermutable, "no ordering satisfies the mode");
  }
  std::size_t pick = static_cast<std::size_t>(UniformBelow(rng, valid));
  ForEachValidOrdering(chunking, mode, [&](std::span<const std::size_t> o) {
    if (pick-- == 0) {
      order.assign(o.begin(), o.end());
      return false;
    }
    return true;
  });
  return order;
}

std::string Permute(std::string_view text, const PerturbationSpec& spec) {
  if (spec.n < 1 || spec.n > 3) {
    throw Error(ErrorCode::kInvalidArgument, "n must be 1, 2 or 3");
  }
  const TokenSequence seq = Tokenize(text);
  if (!IsPermutable(seq.tokens, spec.n, spec.mode)) {
    throw Error(ErrorCode::kNotPermutable,
                std::to_string(seq.tokens.size()) + " tokens admit no " +
                    PermutationModeName(spec.mode) + " " +
                    std::to_string(spec.n) + "-gram permutation");
  }
  const Chunking chunking = Segment(seq.tokens, spec.n);
  const std::vector<std::size_t> order =
      DrawChunkOrder(chunking, spec.mode, spec.seed);
  TokenSequence out;
  out.trailing_punct = seq.trailing_punct;
  out.punct_is_token = seq.punct_is_token;
  out.tokens.reserve(seq.tokens.size());
  for (std::size_t idx : order) {
    const Chunk& chunk = chunking.chunks[idx];
    out.tokens.insert(out.tokens.end(), chunk.begin(), chunk.end());
  }
  return out.Join();
}

std::size_t CountWords(std::string_view text) {
  if (TrimWhitespace(text).empty()) return 0;
  return Tokenize(text).tokens.size();
}

}  // namespace wordorder
