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

#ifndef WORDORDER_SEED_H_
#define WORDORDER_SEED_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>

namespace wordorder {

// MT19937-64. Its output sequence is fixed by the C++ standard, so it is
// reproducible across compilers and platforms. The standard distributions
// are not, which is why the helpers below do their own range reduction.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Deterministic seed for a named sub-stream: FNV-1a over the parts (each
// terminated by a 0x1f separator byte), folded with `master` through Mix64.
std::uint64_t DeriveSeed(std::uint64_t master,
                         std::initializer_list<std::string_view> parts);

// Unbiased integer in [0, bound). bound must be > 0.
std::uint64_t UniformBelow(Rng& rng, std::uint64_t bound);

// Double in [0, 1) built from the top 53 bits of one draw.
double UniformUnit(Rng& rng);

// Fisher-Yates, high index to low.
template <typename T>
void Shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(UniformBelow(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace wordorder

#endif  // WORDORDER_SEED_H_
