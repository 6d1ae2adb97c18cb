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

#ifndef WORDORDER_UNICODE_TEXT_H_
#define WORDORDER_UNICODE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wordorder {

// Splits UTF-8 text on runs of Unicode White_Space code points. Never returns
// empty pieces. Bytes that are not valid UTF-8 are kept inside tokens.
std::vector<std::string> SplitOnWhitespace(std::string_view text);

// True for general categories Po, Ps, Pe, Pi, Pf, ASCII .,!?;: and the Arabic
// question mark, semicolon and comma. Dashes (Pd) and connectors (Pc) are
// deliberately not included.
bool IsPunctuation(char32_t code_point);

// True if `text` is non-empty and made only of IsPunctuation code points.
bool IsAllPunctuation(std::string_view text);

// Byte offset where the final code point of `text` starts; text.size() when
// the text is empty.
std::size_t LastCodePointOffset(std::string_view text);

// Decodes the code point at the start of `text`; U+FFFD on malformed input.
char32_t FirstCodePoint(std::string_view text);

// Unicode simple lowercase mapping, code point by code point.
std::string ToLower(std::string_view text);

std::string_view TrimWhitespace(std::string_view text);

// Strips a leading UTF-8 byte-order mark.
std::string_view StripBom(std::string_view text);

}  // namespace wordorder

#endif  // WORDORDER_UNICODE_TEXT_H_
